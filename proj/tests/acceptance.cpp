// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: uwkit_acceptance <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "scenes.hpp"
#include "uwkit/bench.hpp"
#include "uwkit/enhancement.hpp"
#include "uwkit/io.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/metrics.hpp"
#include "uwkit/restoration.hpp"
#include "uwkit/simulator.hpp"

using namespace uwkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Windowed kernels and prior maps against brute-force loops.
Outcome kernel_oracles() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  int images = 0, comparisons = 0, mismatches = 0;
  for (; images < 120; ++images) {
    const int w = 1 + static_cast<int>(rng() % 32), h = 1 + static_cast<int>(rng() % 32);
    // Multiples of 1/256: every window sum is exact, so the running-sum box
    // filter and the naive mean agree bit for bit.
    ImageRGB img(w, h);
    for (int c = 0; c < 3; ++c)
      for (double& v : img.channel(c).pixels()) v = static_cast<double>(rng() % 257) / 256.0;
    const ImageGray g = img.channel(images % 3);
    const Rgb bl{0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0, 0.7, 0.85};
    for (int r = 1; r <= 3; ++r) {
      const WindowSpec win(r);
      const bool ok[] = {
          oracle::identical(window_min(g, win), oracle::win_min(g, r)),
          oracle::identical(window_max(g, win), oracle::win_max(g, r)),
          oracle::identical(window_median(g, win), oracle::win_median(g, r)),
          oracle::identical(box_filter(g, win), oracle::win_mean(g, r)),
          oracle::identical(dark_channel(img, win), oracle::dark(img, r, {0, 1, 2})),
          oracle::identical(underwater_dark_channel(img, win), oracle::dark(img, r, {1, 2})),
          oracle::identical(mip_map(img, win), oracle::mip(img, r)),
          oracle::identical(estimate_transmission(img, {bl, BlMethod::DcpTop01, std::nullopt}, TmMethod::DcpMedian,
                                                  win, {})
                                .channel(0),
                            oracle::dcp_median_tm(img, bl, r)),
      };
      for (bool b : ok) {
        ++comparisons;
        mismatches += b ? 0 : 1;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt("%d images up to 32x32, radii 1-3, %d comparisons, %d mismatches, %.2f s", images, comparisons,
              mismatches, secs)};
}

// 2. Guided filter identities.
Outcome guided_identities() {
  std::mt19937_64 rng(77);
  double self_err = 0.0, box_err = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const ImageGray p = oracle::random_gray(rng, 64, 64);
    const int r = 1 + trial % 8;
    self_err = std::max(self_err, oracle::max_abs_diff(guided_filter(p, p, r, 0.0), p));
    const ImageGray flat(64, 64, 0.37);
    const ImageGray twice = box_filter(box_filter(p, WindowSpec(r)), WindowSpec(r));
    box_err = std::max(box_err, oracle::max_abs_diff(guided_filter(p, flat, r, 1e-3), twice));
  }
  return {self_err <= 1e-6 && box_err <= 1e-6,
          fmt("self-guided eps=0 max err %.3g; constant guide vs double box max err %.3g (10 random 64x64)", self_err,
              box_err)};
}

// 3. Degrade then recover with the true background light and transmission.
Outcome round_trip() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, worst_psnr = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 50; ++k) {
    const ImageRGB clear = oracle::random_rgb(rng, 128, 128);
    const Rgb bl{u(rng), u(rng), u(rng)};
    TransmissionMaps tm;
    for (int c = 0; c < 3; ++c) tm.channel(c) = oracle::smooth_gray(rng, 128, 128, 0.15, 1.0);
    const ImageRGB degraded = degrade(clear, bl, tm);
    worst = std::max(worst, oracle::max_abs_diff(recover_radiance(degraded, bl, tm, 0.1), clear));
    worst_psnr = std::min(worst_psnr, psnr(recover_radiance(quantize8(degraded), bl, tm, 0.1), clear));
  }
  return {worst <= 1e-6 && worst_psnr >= 48.0,
          fmt("50 cases 128x128, t in [0.15,1]: max abs err %.3g; 8-bit degraded path min PSNR %.2f dB", worst,
              worst_psnr)};
}

// 4. The attenuation-prior pipeline on a scene simulated with its own model.
Outcome ulap_self_consistency() {
  const PriorConstants consts;
  RestorationPipeline p = named_pipeline("ulap");
  p.refine = false;
  double worst = 0.0, slowest = 0.0;
  // both orientations of the benchmark size
  for (const auto& [w, h] : {std::pair{600, 400}, std::pair{400, 600}}) {
    const auto sc = scenes::ulap_case(w, h, 4242, {0.07, 0.52, 0.68}, consts);
    RestoreOverrides ov;
    ov.depth = sc.depth;
    const auto t0 = Clock::now();
    const auto r = restore(sc.degraded, p, WindowSpec(7), consts, ov);
    slowest = std::max(slowest, seconds_since(t0));
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < sc.clear.pixel_count(); ++i)
        if (sc.tm.channel(c)[i] >= p.t_floor)
          worst = std::max(worst, std::fabs(r.image.channel(c)[i] - sc.clear.channel(c)[i]));
  }
  return {worst <= 0.02 && slowest < 5.0,
          fmt("600x400 and 400x600, exact depth injected: max per-pixel error %.4g where t >= %.2f; slowest restore "
              "%.3f s",
              worst, p.t_floor, slowest)};
}

// 5. CLAHE with one tile and no clipping against plain equalization.
Outcome clahe_is_he() {
  std::mt19937_64 rng(55);
  ClaheParams p;
  p.tiles_x = p.tiles_y = 1;
  p.clip = std::numeric_limits<double>::infinity();
  p.rgb_mode = true;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int w = 16 + static_cast<int>(rng() % 100), h = 16 + static_cast<int>(rng() % 100);
    const ImageRGB img = oracle::random_rgb(rng, w, h, k % 2 ? 255 : 0);
    worst = std::max(worst, oracle::max_abs_diff(clahe(img, p), he(img)));
  }
  return {worst <= 1.0 / 255.0 + 1e-12, fmt("20 random images: max difference %.3g levels", worst * 255.0)};
}

// 6. Metric anchors.
Outcome metric_anchors() {
  ImageRGB ramp(256, 256);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x) {
      const double v = ((x + y) % 256) / 255.0;
      ramp.set(x, y, Rgb{v, v, v});
    }
  const double h = entropy(ramp);

  std::mt19937_64 rng(66);
  const ImageGray g = oracle::random_gray(rng, 80, 60);
  const ImageRGB gray(g, g, g);
  const auto uc = uciqe(gray);
  const auto uq = uiqm(gray);
  const bool gray_ok = uc.sigma_c == 0.0 && uc.mu_s == 0.0 && uq.uicm == 0.0;

  double lin_err = 0.0;
  MetricWeights w;
  for (int k = 0; k < 5; ++k) {
    const ImageRGB img = oracle::random_rgb(rng, 64, 48);
    const double s = 0.5 + k;
    MetricWeights ws = w;
    for (double& v : ws.uciqe) v *= s;
    for (double& v : ws.uiqm) v *= s;
    lin_err = std::max(lin_err, std::fabs(uciqe(img, ws).score - s * uciqe(img, w).score));
    lin_err = std::max(lin_err, std::fabs(uiqm(img, ws).score - s * uiqm(img, w).score));
  }
  return {std::fabs(h - 8.0) <= 1e-9 && gray_ok && lin_err <= 1e-12,
          fmt("uniform entropy %.12f; gray sigma_c=%g mu_s=%g UICM=%g; linearity max err %.3g", h, uc.sigma_c, uc.mu_s,
              uq.uicm, lin_err)};
}

// 7. Accuracy protocol on planted deltas, through the dataset path.
Outcome bl_protocol(const fs::path& work) {
  const fs::path dir = work / "bl_protocol";
  fs::remove_all(dir);
  fs::create_directories(dir);
  struct Plant {
    std::array<int, 3> color, delta;
    std::array<bool, 3> expect;
  };
  const std::vector<Plant> plants = {
      {{120, 150, 180}, {30, 0, 0}, {true, true, true}},    {{120, 150, 180}, {31, 0, 0}, {false, true, true}},
      {{120, 150, 180}, {-30, 0, 0}, {true, true, true}},   {{120, 150, 180}, {-31, 0, 0}, {false, true, true}},
      {{120, 150, 180}, {0, 40, 0}, {true, true, true}},    {{120, 150, 180}, {0, 41, 0}, {true, false, true}},
      {{120, 150, 180}, {0, -40, -40}, {true, true, true}}, {{120, 150, 180}, {0, -41, 41}, {true, false, false}},
      {{60, 200, 90}, {0, 0, 40}, {true, true, true}},      {{60, 200, 90}, {0, 0, -41}, {true, true, false}},
      {{60, 200, 90}, {31, 41, 41}, {false, false, false}}, {{60, 200, 90}, {0, 0, 0}, {true, true, true}},
  };
  std::ofstream csv(dir / "gt.csv");
  csv << "filename,B_r,B_g,B_b\n";
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const auto& p = plants[i];
    const std::string name = fmt("plant%02zu.png", i);
    save_image(ImageRGB(24, 24, Rgb{p.color[0] / 255.0, p.color[1] / 255.0, p.color[2] / 255.0}), dir / name);
    // truth = estimate - delta
    csv << name << ',' << p.color[0] - p.delta[0] << ',' << p.color[1] - p.delta[1] << ',' << p.color[2] - p.delta[2]
        << '\n';
  }
  csv.close();
  DatasetManifest m = ingest_dataset(dir, dir / "gt.csv");
  m.resize_width = m.resize_height = 0;
  const auto res = evaluate_bl_accuracy(m, {BlMethod::DcpBrightest, BlMethod::Mip, BlMethod::Ulap}, ToolkitConfig{});
  int wrong = 0, checked = 0;
  for (const auto& r : res)
    for (std::size_t i = 0; i < plants.size(); ++i) {
      ++checked;
      if (r.images[i].correct != plants[i].expect || r.images[i].delta != plants[i].delta) ++wrong;
    }
  return {wrong == 0, fmt("%zu planted images x %zu methods: %d of %d classifications wrong", plants.size(), res.size(),
                          wrong, checked)};
}

// 8. On strongly red-attenuated scenes, the red-aware priors beat the dark
// channel at finding the background light.
Outcome bl_ordering(const fs::path& work, int jobs) {
  const fs::path dir = work / "bl_ordering";
  fs::remove_all(dir);
  fs::create_directories(dir);
  PriorConstants consts;
  consts.nrer = {0.05, 0.45, 0.55};
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* depths[] = {"ramp-vertical", "radial", "ramp-horizontal"};
  std::ofstream csv(dir / "gt.csv");
  for (int k = 0; k < 20; ++k) {
    const Rgb bl{0.03 + 0.12 * u(rng), 0.45 + 0.3 * u(rng), 0.55 + 0.35 * u(rng)};
    const std::string name = fmt("case%02d.png", k);
    const auto sc = make_case(fmt("synthetic:%d:300x200", 900 + k), DepthKind::parse(depths[k % 3]), bl, consts);
    save_image(sc.degraded, dir / name);
    csv << name << ',' << int(to_byte(bl.r)) << ',' << int(to_byte(bl.g)) << ',' << int(to_byte(bl.b)) << '\n';
  }
  csv.close();
  DatasetManifest m = ingest_dataset(dir, dir / "gt.csv");
  m.resize_width = m.resize_height = 0;
  ToolkitConfig cfg;
  cfg.priors = consts;
  const auto res = evaluate_bl_accuracy(
      m, {BlMethod::DcpBrightest, BlMethod::DcpTop01, BlMethod::Mip, BlMethod::Ulap}, cfg, {}, jobs);
  const double dcp = std::max(res[0].joint, res[1].joint), mip = res[2].joint, ulap = res[3].joint;
  return {mip > dcp && ulap > dcp,
          fmt("20 cases, nrer=(0.05,0.45,0.55): joint accuracy dcp-bright %.2f, dcp-top01 %.2f, mip %.2f (margin "
              "%+.2f), ulap %.2f (margin %+.2f)",
              res[0].joint, res[1].joint, mip, mip - dcp, ulap, ulap - dcp)};
}

// 9. Full benchmark twice: identical bytes, bounded time.
Outcome benchmark_determinism(const fs::path& work, int jobs) {
  const fs::path data = work / "bench_data";
  fs::remove_all(data);
  fs::create_directories(data);
  for (int k = 0; k < 10; ++k) {
    const auto sc = make_case(fmt("synthetic:%d:600x400", 500 + k), DepthKind::parse(k % 2 ? "radial" : "ramp-vertical"),
                              {0.1, 0.55 + 0.02 * k, 0.7}, PriorConstants{});
    save_image(sc.degraded, data / fmt("scene%02d.png", k));
  }
  const DatasetManifest m = ingest_dataset(data);
  BenchOptions o;
  o.methods = default_enhancer_names();
  for (const auto& r : default_restorer_names()) o.methods.push_back(r);
  o.jobs = jobs;
  std::string reports[2];
  double secs[2];
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    o.out_dir = work / fmt("bench_run%d", run);
    fs::remove_all(o.out_dir);
    const auto t0 = Clock::now();
    const QualityReport r = run_benchmark(m, ToolkitConfig{}, o);
    emit_report(r, ReportFormat::Csv, o.out_dir / "report.csv");
    emit_report(r, ReportFormat::Json, o.out_dir / "report.json");
    secs[run] = seconds_since(t0);
    ok = ok && r.all_ok() && r.rows.size() == 150;
    std::ifstream a(o.out_dir / "report.csv", std::ios::binary), b(o.out_dir / "report.json", std::ios::binary);
    std::ostringstream ss;
    ss << a.rdbuf() << b.rdbuf();
    reports[run] = ss.str();
  }
  const bool same = reports[0] == reports[1];
  return {ok && same && secs[0] < 180.0 && secs[1] < 180.0,
          fmt("10 images 600x400 x %zu methods, %d jobs: runs took %.1f s and %.1f s; reports %s; all rows ok: %s",
              o.methods.size(), jobs, secs[0], secs[1], same ? "byte-identical" : "DIFFER", ok ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "uwkit_acceptance";
  fs::create_directories(work);
  const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel-oracle equivalence", kernel_oracles},
      {"guided-filter identities", guided_identities},
      {"formation-model round trip", round_trip},
      {"attenuation-prior self-consistency", ulap_self_consistency},
      {"CLAHE degenerates to HE", clahe_is_he},
      {"metric anchors", metric_anchors},
      {"BL-accuracy protocol", [&] { return bl_protocol(work); }},
      {"BL ordering on red-attenuated scenes", [&] { return bl_ordering(work, jobs); }},
      {"benchmark determinism", [&] { return benchmark_determinism(work, jobs); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
