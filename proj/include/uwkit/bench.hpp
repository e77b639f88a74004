#pragma once

// Dataset ingestion, background-light accuracy scoring, batch method
// comparison and report emission.

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uwkit/background_light.hpp"
#include "uwkit/config.hpp"
#include "uwkit/enhancement.hpp"

namespace uwkit {

struct DatasetManifest {
  std::filesystem::path root;
  std::vector<std::filesystem::path> images;  // sorted by file name
  std::map<std::string, std::array<int, 3>> gt_bl;  // file name -> (R,G,B) in 0..255
  int resize_width = 600;   // 0 keeps the native size
  int resize_height = 400;
};

/// Annotation CSV: filename,B_r,B_g,B_b with integer 0..255 values. A first
/// row with no integer in any value field is taken as a header.
std::map<std::string, std::array<int, 3>> parse_annotations(std::istream& in, const std::string& source);

/// Lists PNG/JPEG files directly under `root`. Annotation rows for missing
/// images are ignored; images without a row are simply not scored.
/// `swap_resize` selects 400 wide x 600 high.
DatasetManifest ingest_dataset(const std::filesystem::path& root,
                               const std::optional<std::filesystem::path>& annotations = std::nullopt,
                               bool swap_resize = false);

/// Loads an image and resizes it to the manifest target when it differs.
ImageRGB load_dataset_image(const DatasetManifest& manifest, const std::filesystem::path& path);

struct BlTolerance {
  int r = 30;
  int gb = 40;
};

struct BlImageScore {
  std::string image;
  std::array<int, 3> estimate{};  // round(255 * estimate)
  std::array<int, 3> truth{};
  std::array<int, 3> delta{};  // estimate - truth
  std::array<bool, 3> correct{};
};

struct BlAccuracyResult {
  std::string method;
  std::array<double, 3> channel{};  // fraction correct per channel
  double joint = 0.0;                // fraction correct on all three
  std::vector<BlImageScore> images;
};

struct BlEstimate {
  std::string image;
  Rgb estimate;  // in [0,1]
  std::array<int, 3> truth{};
};

/// |delta| <= tolerance counts as correct on that channel.
BlAccuracyResult score_bl_estimates(const std::string& method, const std::vector<BlEstimate>& estimates,
                                    BlTolerance tol = {});

/// Annotated images only; throws when there are none.
std::vector<BlAccuracyResult> evaluate_bl_accuracy(const DatasetManifest& manifest,
                                                   const std::vector<BlMethod>& methods, const ToolkitConfig& cfg,
                                                   BlTolerance tol = {}, int jobs = 1);

/// A named image-to-image method of the comparison.
struct BenchMethod {
  std::string name;
  std::function<ImageRGB(const ImageRGB&)> run;
};

/// "raw" (identity), the enhancers (he, clahe, ...) and the restoration
/// pipelines (sir, rir, ...), configured from `cfg`.
BenchMethod make_bench_method(const std::string& name, const ToolkitConfig& cfg);
std::vector<std::string> default_enhancer_names();
std::vector<std::string> default_restorer_names();

inline constexpr const char* kReportColumns[] = {"image", "method",  "status", "ENTROPY", "BRISQUE",
                                                  "NIQE",  "UIQM",    "UCIQE",  "sigma_c", "con_l",
                                                  "mu_s",  "UICM",    "UISM",   "UIConM"};
inline constexpr std::size_t kMetricCount = 11;  // ENTROPY .. UIConM

struct ReportRow {
  std::string image;
  std::string method;
  std::string status = "ok";  // "ok" or "error: <message>"
  // ENTROPY, BRISQUE, NIQE, UIQM, UCIQE, sigma_c, con_l, mu_s, UICM, UISM,
  // UIConM; BRISQUE and NIQE are not computed and stay empty.
  std::array<std::optional<double>, kMetricCount> values{};

  bool ok() const { return status == "ok"; }
};

struct SummaryRow {
  std::string method;
  int count = 0;  // successful rows
  std::array<std::optional<double>, kMetricCount> mean{};
  std::array<std::optional<double>, kMetricCount> variance{};  // population
};

struct QualityReport {
  std::vector<ReportRow> rows;  // ordered by image, then method order
  std::vector<SummaryRow> summary;  // one per method, method order

  bool all_ok() const;
};

/// Every metric column of one image.
ReportRow measure(const ImageRGB& img, const MetricWeights& weights);

/// Per-method mean and variance over successful rows.
std::vector<SummaryRow> summarize(const std::vector<ReportRow>& rows, const std::vector<std::string>& method_order);

struct BenchOptions {
  std::vector<std::string> methods;  // run in this order
  std::filesystem::path out_dir;     // images/<stem>__<method>.png
  int jobs = 1;
  bool save_images = true;
};

/// Images are processed by a pool of `jobs` workers; the report is assembled
/// afterwards in a fixed order, so results do not depend on scheduling.
QualityReport run_benchmark(const DatasetManifest& manifest, const ToolkitConfig& cfg, const BenchOptions& opts);

enum class ReportFormat { Csv, Json };

/// "Avg(Var)" text of a summary cell.
std::string avg_var_text(const std::optional<double>& mean, const std::optional<double>& variance);

void emit_report(const QualityReport& report, ReportFormat format, std::ostream& out);
void emit_report(const QualityReport& report, ReportFormat format, const std::filesystem::path& path);

/// Parses the CSV form back (SUMMARY rows are recomputed, not read).
QualityReport read_report_csv(std::istream& in, const std::string& source);
QualityReport read_report_csv(const std::filesystem::path& path);

/// Output file name for one image and method.
std::string output_name(const std::filesystem::path& image, const std::string& method);

}  // namespace uwkit
