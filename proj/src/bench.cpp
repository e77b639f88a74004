#include "uwkit/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "uwkit/format.hpp"
#include "uwkit/io.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/metrics.hpp"
#include "uwkit/restoration.hpp"
#include "uwkit/stats.hpp"

namespace uwkit {

namespace {

// RFC 4180 style: fields with a comma, quote or newline are quoted.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Splits one CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw Error("unterminated quoted field");
  return fields;
}

bool parse_level(const std::string& s, int& out) { return parse_int(s, out) && out >= 0 && out <= 255; }

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

std::map<std::string, std::array<int, 3>> parse_annotations(std::istream& in, const std::string& source) {
  std::map<std::string, std::array<int, 3>> gt;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    std::array<int, 3> v{};
    const bool numeric = fields.size() == 4 && parse_level(std::string(trim(fields[1])), v[0]) &&
                         parse_level(std::string(trim(fields[2])), v[1]) &&
                         parse_level(std::string(trim(fields[3])), v[2]);
    if (!numeric) {
      // a header has no integer fields at all; 256 is a bad value, not a header
      int ignored = 0;
      const bool header = first && fields.size() == 4 && !parse_int(std::string(trim(fields[1])), ignored) &&
                          !parse_int(std::string(trim(fields[2])), ignored) &&
                          !parse_int(std::string(trim(fields[3])), ignored);
      if (header) {
        first = false;
        continue;
      }
      throw Error(source + ":" + std::to_string(lineno) +
                  ": malformed annotation row, expected filename,B_r,B_g,B_b with integers 0..255");
    }
    first = false;
    const std::string name(trim(fields[0]));
    if (name.empty()) throw Error(source + ":" + std::to_string(lineno) + ": empty filename");
    if (gt.contains(name)) throw Error(source + ":" + std::to_string(lineno) + ": duplicate filename " + name);
    gt[name] = v;
  }
  return gt;
}

DatasetManifest ingest_dataset(const std::filesystem::path& root,
                               const std::optional<std::filesystem::path>& annotations, bool swap_resize) {
  if (!std::filesystem::is_directory(root)) throw Error("dataset directory not found: " + root.string());
  DatasetManifest m;
  m.root = root;
  if (swap_resize) std::swap(m.resize_width, m.resize_height);
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_regular_file() && is_image_file(entry.path())) m.images.push_back(entry.path());
  std::sort(m.images.begin(), m.images.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  if (annotations) {
    std::ifstream in(*annotations);
    if (!in) throw Error("cannot open annotations: " + annotations->string());
    const auto gt = parse_annotations(in, annotations->string());
    for (const auto& path : m.images) {
      const auto it = gt.find(path.filename().string());
      if (it != gt.end()) m.gt_bl[it->first] = it->second;
    }
  }
  return m;
}

ImageRGB load_dataset_image(const DatasetManifest& manifest, const std::filesystem::path& path) {
  ImageRGB img = load_image(path);
  if (manifest.resize_width > 0 && manifest.resize_height > 0 &&
      (img.width() != manifest.resize_width || img.height() != manifest.resize_height))
    img = resize_bilinear(img, manifest.resize_width, manifest.resize_height);
  return img;
}

BlAccuracyResult score_bl_estimates(const std::string& method, const std::vector<BlEstimate>& estimates,
                                    BlTolerance tol) {
  if (estimates.empty()) throw Error("no annotated images to score");
  BlAccuracyResult res;
  res.method = method;
  std::array<int, 3> hits{};
  int joint = 0;
  for (const BlEstimate& e : estimates) {
    BlImageScore s;
    s.image = e.image;
    s.truth = e.truth;
    bool all = true;
    for (int c = 0; c < 3; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      s.estimate[ci] = to_byte(e.estimate[c]);
      s.delta[ci] = s.estimate[ci] - s.truth[ci];
      s.correct[ci] = std::abs(s.delta[ci]) <= (c == 0 ? tol.r : tol.gb);
      hits[ci] += s.correct[ci];
      all = all && s.correct[ci];
    }
    joint += all;
    res.images.push_back(s);
  }
  const double n = static_cast<double>(estimates.size());
  for (std::size_t c = 0; c < 3; ++c) res.channel[c] = hits[c] / n;
  res.joint = joint / n;
  return res;
}

std::vector<BlAccuracyResult> evaluate_bl_accuracy(const DatasetManifest& manifest,
                                                   const std::vector<BlMethod>& methods, const ToolkitConfig& cfg,
                                                   BlTolerance tol, int jobs) {
  std::vector<std::filesystem::path> annotated;
  for (const auto& p : manifest.images)
    if (manifest.gt_bl.contains(p.filename().string())) annotated.push_back(p);
  if (annotated.empty()) throw Error("bl-accuracy: no annotated images in the dataset");

  // estimates[method][image]
  std::vector<std::vector<BlEstimate>> estimates(methods.size(), std::vector<BlEstimate>(annotated.size()));
  parallel_for(annotated.size(), jobs, [&](std::size_t i) {
    const ImageRGB img = load_dataset_image(manifest, annotated[i]);
    const std::string name = annotated[i].filename().string();
    for (std::size_t m = 0; m < methods.size(); ++m)
      estimates[m][i] = {name, estimate_background_light(img, methods[m], cfg.window, cfg.priors).color,
                         manifest.gt_bl.at(name)};
  });

  std::vector<BlAccuracyResult> out;
  for (std::size_t m = 0; m < methods.size(); ++m)
    out.push_back(score_bl_estimates(std::string(to_string(methods[m])), estimates[m], tol));
  return out;
}

std::vector<std::string> default_enhancer_names() {
  std::vector<std::string> v;
  for (EnhanceMethod m : kAllEnhanceMethods) v.emplace_back(to_string(m));
  return v;
}

std::vector<std::string> default_restorer_names() { return pipeline_names(); }

BenchMethod make_bench_method(const std::string& name, const ToolkitConfig& cfg) {
  if (name == "raw") return {name, [](const ImageRGB& img) { return img; }};
  const auto& restorers = pipeline_names();
  if (std::find(restorers.begin(), restorers.end(), name) != restorers.end()) {
    RestorationPipeline p = named_pipeline(name);
    p.refine = cfg.refine;
    p.refine_params = cfg.refine_params;
    p.t_floor = cfg.t_floor;
    p.validate();
    return {name, [p, cfg](const ImageRGB& img) { return restore(img, p, cfg.window, cfg.priors).image; }};
  }
  const EnhanceMethod m = parse_enhance_method(name);
  return {name, [m, cfg](const ImageRGB& img) { return enhance(img, m, cfg.enhance); }};
}

bool QualityReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.ok(); });
}

ReportRow measure(const ImageRGB& img, const MetricWeights& weights) {
  ReportRow row;
  const UciqeResult uc = uciqe(img, weights);
  const UiqmResult um = uiqm(img, weights);
  row.values = {entropy(img), std::nullopt, std::nullopt, um.score, uc.score, uc.sigma_c, uc.con_l,
                uc.mu_s,      um.uicm,      um.uism,      um.uiconm};
  return row;
}

std::vector<SummaryRow> summarize(const std::vector<ReportRow>& rows, const std::vector<std::string>& method_order) {
  std::vector<SummaryRow> out;
  for (const std::string& method : method_order) {
    SummaryRow s;
    s.method = method;
    std::array<std::vector<double>, kMetricCount> cols;
    for (const ReportRow& r : rows) {
      if (r.method != method || !r.ok()) continue;
      ++s.count;
      for (std::size_t k = 0; k < kMetricCount; ++k)
        if (r.values[k]) cols[k].push_back(*r.values[k]);
    }
    for (std::size_t k = 0; k < kMetricCount; ++k)
      if (!cols[k].empty()) {
        s.mean[k] = mean(cols[k]);
        s.variance[k] = variance(cols[k]);
      }
    out.push_back(std::move(s));
  }
  return out;
}

std::string output_name(const std::filesystem::path& image, const std::string& method) {
  return image.stem().string() + "__" + method + ".png";
}

QualityReport run_benchmark(const DatasetManifest& manifest, const ToolkitConfig& cfg, const BenchOptions& opts) {
  if (manifest.images.empty()) throw Error("benchmark: dataset has no images");
  if (opts.methods.empty()) throw Error("benchmark: no methods selected");
  std::vector<BenchMethod> methods;
  for (const std::string& name : opts.methods) methods.push_back(make_bench_method(name, cfg));
  if (opts.save_images) std::filesystem::create_directories(opts.out_dir / "images");

  const std::size_t n_img = manifest.images.size();
  std::vector<std::vector<ReportRow>> per_image(n_img);
  parallel_for(n_img, opts.jobs, [&](std::size_t i) {
    const auto& path = manifest.images[i];
    std::vector<ReportRow>& rows = per_image[i];
    std::optional<ImageRGB> input;
    std::string load_error;
    try {
      input = load_dataset_image(manifest, path);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const BenchMethod& m : methods) {
      ReportRow row;
      try {
        if (!input) throw Error(load_error);
        // Score what is written to disk: the 8-bit output.
        const ImageRGB out = quantize8(clamp01(m.run(*input)));
        row = measure(out, cfg.metrics);
        if (opts.save_images) save_image(out, opts.out_dir / "images" / output_name(path, m.name));
      } catch (const std::exception& e) {
        row = ReportRow{};
        row.status = std::string("error: ") + e.what();
      }
      row.image = path.filename().string();
      row.method = m.name;
      rows.push_back(std::move(row));
    }
  });

  QualityReport report;
  for (auto& rows : per_image)
    for (auto& r : rows) report.rows.push_back(std::move(r));
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.image < b.image; });
  report.summary = summarize(report.rows, opts.methods);
  return report;
}

std::string avg_var_text(const std::optional<double>& mean, const std::optional<double>& variance) {
  if (!mean || !variance) return "";
  return format_double(*mean) + "(" + format_double(*variance) + ")";
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

nlohmann::ordered_json json_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

void emit_report(const QualityReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv) {
    for (std::size_t k = 0; k < std::size(kReportColumns); ++k) out << (k ? "," : "") << kReportColumns[k];
    out << '\n';
    for (const ReportRow& r : report.rows) {
      out << csv_field(r.image) << ',' << csv_field(r.method) << ',' << csv_field(r.status);
      for (const auto& v : r.values) out << ',' << cell(v);
      out << '\n';
    }
    for (const SummaryRow& s : report.summary) {
      out << "SUMMARY," << csv_field(s.method) << ",n=" << s.count;
      for (std::size_t k = 0; k < kMetricCount; ++k) out << ',' << avg_var_text(s.mean[k], s.variance[k]);
      out << '\n';
    }
    return;
  }

  nlohmann::ordered_json doc;
  doc["columns"] = nlohmann::ordered_json::array();
  for (const char* c : kReportColumns) doc["columns"].push_back(c);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::ordered_json j;
    j["image"] = r.image;
    j["method"] = r.method;
    j["status"] = r.status;
    for (std::size_t k = 0; k < kMetricCount; ++k) j[kReportColumns[k + 3]] = json_number(r.values[k]);
    doc["rows"].push_back(std::move(j));
  }
  doc["summary"] = nlohmann::ordered_json::array();
  for (const SummaryRow& s : report.summary) {
    nlohmann::ordered_json j;
    j["method"] = s.method;
    j["count"] = s.count;
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      if (!s.mean[k]) {
        j[kReportColumns[k + 3]] = nullptr;
        continue;
      }
      j[kReportColumns[k + 3]] = {{"mean", json_number(s.mean[k])},
                                  {"variance", json_number(s.variance[k])},
                                  {"text", avg_var_text(s.mean[k], s.variance[k])}};
    }
    doc["summary"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

void emit_report(const QualityReport& report, ReportFormat format, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report: " + path.string());
  emit_report(report, format, out);
  if (!out) throw Error("write failed: " + path.string());
}

QualityReport read_report_csv(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw Error(source + ": empty report");
  ++lineno;
  const auto header = split_csv(line);
  if (header.size() != std::size(kReportColumns) ||
      !std::equal(header.begin(), header.end(), std::begin(kReportColumns)))
    throw Error(source + ":1: unexpected report header");

  QualityReport report;
  std::vector<std::string> order;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != std::size(kReportColumns))
      throw Error(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(std::size(kReportColumns)) +
                  " fields");
    if (f[0] == "SUMMARY") continue;
    ReportRow r;
    r.image = f[0];
    r.method = f[1];
    r.status = f[2];
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      if (f[k + 3].empty()) continue;
      double v = 0.0;
      if (!parse_double(f[k + 3], v))
        throw Error(source + ":" + std::to_string(lineno) + ": bad number '" + f[k + 3] + "'");
      r.values[k] = v;
    }
    if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
    report.rows.push_back(std::move(r));
  }
  report.summary = summarize(report.rows, order);
  return report;
}

QualityReport read_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report: " + path.string());
  return read_report_csv(in, path.string());
}

}  // namespace uwkit
