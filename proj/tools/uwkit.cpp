// uwkit command-line front end.
//
//   uwkit enhance     --method clahe --in a.png --out b.png
//   uwkit restore     --method ulap --in a.png --out b.png [--dump-bl bl.txt] [--dump-tm dir]
//   uwkit restore     --method sir --in images/ --out restored/
//   uwkit simulate    --clear synthetic:7:600x400 --depth ramp-vertical --bl 0.1,0.5,0.6 --out case/
//   uwkit bl-accuracy --dataset dir --annotations gt.csv
//   uwkit benchmark   --dataset dir --out results/
//   uwkit report      --in results/report.csv --format json
//
// Exit status: 0 when every row succeeded, 1 when some rows failed, 2 on
// usage or fatal errors.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "uwkit/bench.hpp"
#include "uwkit/config.hpp"
#include "uwkit/format.hpp"
#include "uwkit/io.hpp"
#include "uwkit/restoration.hpp"
#include "uwkit/simulator.hpp"

namespace {

using namespace uwkit;

Rgb parse_rgb(const std::string& text) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    double d = 0.0;
    if (!parse_double(tok, d)) throw Error("not a number: " + tok);
    v.push_back(d);
  }
  if (v.size() != 3) throw Error("expected three comma-separated values, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

namespace fs = std::filesystem;

// --in may be one image or a directory of images; a directory (or an existing
// output directory) gets <stem>.png per input.
std::vector<std::pair<fs::path, fs::path>> io_pairs(const fs::path& in, const fs::path& out) {
  std::vector<std::pair<fs::path, fs::path>> pairs;
  if (fs::is_directory(in)) {
    fs::create_directories(out);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(in))
      if (e.is_regular_file() && is_image_file(e.path())) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no PNG/JPEG images in " + in.string());
    for (const auto& f : files) pairs.emplace_back(f, out / (f.stem().string() + ".png"));
  } else if (fs::is_directory(out)) {
    pairs.emplace_back(in, out / (in.stem().string() + ".png"));
  } else {
    pairs.emplace_back(in, out);
  }
  return pairs;
}

// Runs `fn` on each pair; a failing image is reported and skipped.
template <typename Fn>
int for_each_image(const std::vector<std::pair<fs::path, fs::path>>& pairs, Fn fn) {
  int failed = 0;
  for (const auto& [in, out] : pairs) {
    if (pairs.size() == 1) {
      fn(in, out);
      continue;
    }
    try {
      fn(in, out);
    } catch (const std::exception& e) {
      std::cerr << in.string() << ": " << e.what() << '\n';
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error("unknown report format: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underwater image enhancement, restoration and benchmarking"};
  app.require_subcommand(1);

  std::string config_path;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Key/value configuration file")->check(CLI::ExistingFile);
  app.add_option("--jobs", jobs, "Worker threads for dataset commands")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Reserved; all commands are deterministic");

  // enhance
  auto* enh = app.add_subcommand("enhance", "Run a model-free enhancer on one image");
  std::string enh_method, enh_in, enh_out;
  enh->add_option("--method", enh_method, "he, clahe, icm, ucm, rayleigh, rghs, fusion")->required();
  enh->add_option("--in", enh_in, "Image file or directory of images")->required()->check(CLI::ExistingPath);
  enh->add_option("--out", enh_out)->required();

  // restore
  auto* rst = app.add_subcommand("restore", "Run a restoration pipeline on one image");
  std::string rst_method, rst_in, rst_out, rst_dump_bl, rst_dump_tm, rst_bl, rst_tm, rst_depth;
  bool rst_no_refine = false;
  rst->add_option("--method", rst_method, "sir, rir, iuid, teoui, nom, rcp, ibla, ulap")->required();
  rst->add_option("--in", rst_in, "Image file or directory of images")->required()->check(CLI::ExistingPath);
  rst->add_option("--out", rst_out)->required();
  rst->add_option("--bl-method", rst_bl, "Override the background-light estimator");
  rst->add_option("--tm-method", rst_tm, "Override the transmission estimator");
  rst->add_option("--depth", rst_depth, "Known depth map (8-bit gray image, 1 = far)")->check(CLI::ExistingFile);
  rst->add_flag("--no-refine", rst_no_refine, "Skip guided-filter refinement");
  rst->add_option("--dump-bl", rst_dump_bl, "Write the estimated background light");
  rst->add_option("--dump-tm", rst_dump_tm, "Write tm_r/g/b.png into this directory");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate or reproduce a synthetic degradation case");
  std::string sim_clear, sim_depth = "ramp-vertical", sim_bl = "0.1,0.55,0.65", sim_out, sim_reproduce;
  sim->add_option("--clear", sim_clear, "Clear image path or synthetic:<seed>:<w>x<h>");
  sim->add_option("--depth", sim_depth, "ramp-vertical, ramp-horizontal, radial, constant:<v>")->capture_default_str();
  sim->add_option("--bl", sim_bl, "Background light r,g,b in [0,1]")->capture_default_str();
  sim->add_option("--out", sim_out, "Case directory");
  sim->add_option("--reproduce", sim_reproduce, "Rebuild a case directory and compare degraded.f32")
      ->check(CLI::ExistingDirectory);

  // bl-accuracy
  auto* bla = app.add_subcommand("bl-accuracy", "Score background-light estimators against annotations");
  std::string bla_dataset, bla_gt, bla_methods, bla_out;
  int tol_r = 30, tol_gb = 40;
  bool bla_swap = false;
  bla->add_option("--dataset", bla_dataset)->required()->check(CLI::ExistingDirectory);
  bla->add_option("--annotations", bla_gt, "CSV: filename,B_r,B_g,B_b")->required()->check(CLI::ExistingFile);
  bla->add_option("--methods", bla_methods, "Comma-separated estimator names (default: all)");
  bla->add_option("--tol-r", tol_r, "Red tolerance in 8-bit levels")->capture_default_str();
  bla->add_option("--tol-gb", tol_gb, "Green/blue tolerance in 8-bit levels")->capture_default_str();
  bla->add_flag("--swap-resize", bla_swap, "Resize to 400x600 instead of 600x400");
  bla->add_option("--out", bla_out, "Per-image CSV of estimates and deltas");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Run methods over a dataset and write a quality report");
  std::string bench_dataset, bench_out, bench_methods, bench_format = "csv";
  bool bench_swap = false, bench_native = false, bench_raw = false, bench_no_images = false;
  bench->add_option("--dataset", bench_dataset)->required()->check(CLI::ExistingDirectory);
  bench->add_option("--out", bench_out, "Output directory")->required();
  bench->add_option("--methods", bench_methods, "Comma-separated methods (default: all enhancers and restorers)");
  bench->add_flag("--raw", bench_raw, "Also score the unprocessed input as method 'raw'");
  bench->add_option("--format", bench_format, "csv or json")->capture_default_str();
  bench->add_flag("--swap-resize", bench_swap, "Resize to 400x600 instead of 600x400");
  bench->add_flag("--native-size", bench_native, "Do not resize inputs");
  bench->add_flag("--no-images", bench_no_images, "Do not write output images");

  // report
  auto* rep = app.add_subcommand("report", "Re-emit a CSV report, recomputing the summary");
  std::string rep_in, rep_out, rep_format = "csv";
  rep->add_option("--in", rep_in)->required()->check(CLI::ExistingFile);
  rep->add_option("--format", rep_format, "csv or json")->capture_default_str();
  rep->add_option("--out", rep_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    ToolkitConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (*enh) {
      const EnhanceMethod method = parse_enhance_method(enh_method);
      return for_each_image(io_pairs(enh_in, enh_out), [&](const fs::path& in, const fs::path& out) {
        save_image(enhance(load_image(in), method, cfg.enhance), out);
      });
    }

    if (*rst) {
      RestorationPipeline p = named_pipeline(rst_method);
      if (!rst_bl.empty()) p.bl_method = parse_bl_method(rst_bl);
      if (!rst_tm.empty()) p.tm_method = parse_tm_method(rst_tm);
      p.refine = cfg.refine && !rst_no_refine;
      p.refine_params = cfg.refine_params;
      p.t_floor = cfg.t_floor;
      const auto pairs = io_pairs(rst_in, rst_out);
      if (pairs.size() > 1 && (!rst_depth.empty() || !rst_dump_bl.empty() || !rst_dump_tm.empty()))
        throw Error("--depth, --dump-bl and --dump-tm need a single input image");
      return for_each_image(pairs, [&](const fs::path& in, const fs::path& out) {
        const ImageRGB img = load_image(in);
        RestoreOverrides ov;
        if (!rst_depth.empty()) {
          ImageGray d = load_gray(rst_depth);
          if (!img.same_shape(d)) throw Error("depth map size does not match the input image");
          ov.depth = DepthMap(std::move(d));
        }
        const RestoreResult res = restore(img, p, cfg.window, cfg.priors, ov);
        save_image(res.image, out);
        if (!rst_dump_bl.empty()) {
          std::ofstream dump(rst_dump_bl);
          if (!dump) throw Error("cannot write " + rst_dump_bl);
          dump << "method = " << to_string(res.bl.source) << '\n'
               << "bl = " << format_double(res.bl.color.r) << ", " << format_double(res.bl.color.g) << ", "
               << format_double(res.bl.color.b) << '\n'
               << "bl_8bit = " << int(to_byte(res.bl.color.r)) << ", " << int(to_byte(res.bl.color.g)) << ", "
               << int(to_byte(res.bl.color.b)) << '\n';
          if (res.bl.pixel) dump << "pixel = " << res.bl.pixel->x << ", " << res.bl.pixel->y << '\n';
        }
        if (!rst_dump_tm.empty()) {
          fs::create_directories(rst_dump_tm);
          const char* names[] = {"tm_r.png", "tm_g.png", "tm_b.png"};
          for (int c = 0; c < 3; ++c) save_gray(res.tm.channel(c), fs::path(rst_dump_tm) / names[c]);
        }
      });
    }

    if (*sim) {
      if (!sim_reproduce.empty()) {
        const SyntheticCase sc = reproduce_case(sim_reproduce);
        const ImageRGB stored =
            read_raw_f32(std::filesystem::path(sim_reproduce) / "degraded.f32", sc.clear.width(), sc.clear.height());
        std::size_t diff = 0;
        for (int c = 0; c < 3; ++c)
          for (std::size_t i = 0; i < stored.pixel_count(); ++i)
            diff += static_cast<float>(sc.degraded.channel(c)[i]) != static_cast<float>(stored.channel(c)[i]);
        std::cout << (diff == 0 ? "reproduced bitwise" : std::to_string(diff) + " samples differ") << '\n';
        return diff == 0 ? 0 : 1;
      }
      if (sim_clear.empty() || sim_out.empty()) throw Error("simulate needs --clear and --out (or --reproduce)");
      generate_case(sim_clear, DepthKind::parse(sim_depth), parse_rgb(sim_bl), cfg.priors, sim_out);
      return 0;
    }

    if (*bla) {
      const DatasetManifest m = ingest_dataset(bla_dataset, std::filesystem::path(bla_gt), bla_swap);
      std::vector<BlMethod> methods;
      if (bla_methods.empty())
        methods.assign(std::begin(kAllBlMethods), std::end(kAllBlMethods));
      else
        for (const auto& name : split_list(bla_methods)) methods.push_back(parse_bl_method(name));
      const auto results = evaluate_bl_accuracy(m, methods, cfg, BlTolerance{tol_r, tol_gb}, jobs);
      std::cout << "method,images,acc_r,acc_g,acc_b,joint\n";
      for (const auto& r : results)
        std::cout << r.method << ',' << r.images.size() << ',' << format_double(r.channel[0]) << ','
                  << format_double(r.channel[1]) << ',' << format_double(r.channel[2]) << ','
                  << format_double(r.joint) << '\n';
      if (!bla_out.empty()) {
        std::ofstream out(bla_out);
        if (!out) throw Error("cannot write " + bla_out);
        out << "method,image,est_r,est_g,est_b,gt_r,gt_g,gt_b,d_r,d_g,d_b,ok_r,ok_g,ok_b\n";
        for (const auto& r : results)
          for (const auto& s : r.images) {
            out << r.method << ',' << s.image;
            for (int v : s.estimate) out << ',' << v;
            for (int v : s.truth) out << ',' << v;
            for (int v : s.delta) out << ',' << v;
            for (bool v : s.correct) out << ',' << (v ? 1 : 0);
            out << '\n';
          }
      }
      return 0;
    }

    if (*bench) {
      DatasetManifest m = ingest_dataset(bench_dataset, std::nullopt, bench_swap);
      if (bench_native) m.resize_width = m.resize_height = 0;
      BenchOptions opts;
      opts.out_dir = bench_out;
      opts.jobs = jobs;
      opts.save_images = !bench_no_images;
      if (bench_raw) opts.methods.push_back("raw");
      if (bench_methods.empty()) {
        for (const auto& n : default_enhancer_names()) opts.methods.push_back(n);
        for (const auto& n : default_restorer_names()) opts.methods.push_back(n);
      } else {
        for (const auto& n : split_list(bench_methods)) opts.methods.push_back(n);
      }
      const ReportFormat fmt = parse_format(bench_format);
      const QualityReport report = run_benchmark(m, cfg, opts);
      emit_report(report, fmt, std::filesystem::path(bench_out) / (fmt == ReportFormat::Csv ? "report.csv" : "report.json"));
      for (const auto& r : report.rows)
        if (!r.ok()) std::cerr << r.image << ' ' << r.method << ": " << r.status << '\n';
      return report.all_ok() ? 0 : 1;
    }

    if (*rep) {
      const QualityReport report = read_report_csv(std::filesystem::path(rep_in));
      const ReportFormat fmt = parse_format(rep_format);
      if (rep_out.empty())
        emit_report(report, fmt, std::cout);
      else
        emit_report(report, fmt, std::filesystem::path(rep_out));
      return report.all_ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "uwkit: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
