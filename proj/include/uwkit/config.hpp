#pragma once

// Plain-text key/value configuration:
//
//   # comment
//   window.radius = 7
//   nrer = 0.83, 0.95, 0.97
//
// Keys are case-sensitive; values are decimal numbers, comma- or
// space-separated lists, or bare words.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uwkit/enhancement.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/metrics.hpp"
#include "uwkit/priors.hpp"

namespace uwkit {

class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, const std::string& source = "<input>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.contains(key); }
  std::optional<std::string> text(const std::string& key) const;
  /// Throws when the key is missing or not a number.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  bool boolean(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }
  /// Writes "key = value" lines in key order.
  void write(std::ostream& out) const;

 private:
  struct Origin {
    std::string source;
    int line = 0;
  };
  std::string where(const std::string& key) const;

  std::map<std::string, std::string> entries_;
  std::map<std::string, Origin> origins_;
};

/// Every tunable of the toolkit in one place.
struct ToolkitConfig {
  WindowSpec window{7};
  PriorConstants priors{};
  bool refine = true;
  GuidedFilterParams refine_params{};
  double t_floor = 0.1;
  MetricWeights metrics{};
  EnhanceParams enhance{};

  /// Overrides fields present in `kv`; unknown keys are an error.
  void apply(const KeyValueFile& kv);
  void validate() const;
  /// Emits every key with its current value.
  KeyValueFile to_key_values() const;
};

ToolkitConfig load_config(const std::filesystem::path& path);
PriorConstants load_prior_constants(const std::filesystem::path& path);

}  // namespace uwkit
