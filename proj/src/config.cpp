#include "uwkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "uwkit/format.hpp"

namespace uwkit {

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& source) {
  KeyValueFile kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) throw Error(source + ":" + std::to_string(lineno) + ": empty key");
    if (kv.entries_.contains(key))
      throw Error(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv.entries_[key] = value;
    kv.origins_[key] = {source, lineno};
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  return parse(in, path.string());
}

std::string KeyValueFile::where(const std::string& key) const {
  const auto it = origins_.find(key);
  if (it == origins_.end()) return "key '" + key + "'";
  return it->second.source + ":" + std::to_string(it->second.line) + ": key '" + key + "'";
}

std::optional<std::string> KeyValueFile::text(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double KeyValueFile::number(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("missing key '" + key + "'");
  double v = 0.0;
  if (!parse_double(it->second, v)) throw Error(where(key) + ": not a number: " + it->second);
  return v;
}

double KeyValueFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::vector<double> KeyValueFile::numbers(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("missing key '" + key + "'");
  std::string s = it->second;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    if (!parse_double(tok, v)) throw Error(where(key) + ": not a number: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw Error(where(key) + ": empty list");
  return out;
}

bool KeyValueFile::boolean(const std::string& key) const {
  const auto v = text(key);
  if (!v) throw Error("missing key '" + key + "'");
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw Error(where(key) + ": not a boolean: " + *v);
}

void KeyValueFile::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

namespace {

std::string join(const double* v, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Binding {
  const char* key;
  std::function<std::string(const ToolkitConfig&)> get;
  std::function<void(ToolkitConfig&, const KeyValueFile&, const std::string&)> set;
};

template <std::size_t N>
void set_array(std::array<double, N>& dst, const KeyValueFile& kv, const std::string& key) {
  const auto v = kv.numbers(key);
  if (v.size() != N) throw Error("key '" + key + "' needs " + std::to_string(N) + " values");
  std::copy(v.begin(), v.end(), dst.begin());
}

int as_int(const KeyValueFile& kv, const std::string& key) {
  const double v = kv.number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw Error("key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

#define UW_NUM(KEY, FIELD)                                                   \
  Binding {                                                                  \
    KEY, [](const ToolkitConfig& c) { return format_double(c.FIELD); },      \
        [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) { \
          c.FIELD = kv.number(k);                                            \
        }                                                                    \
  }
#define UW_INT(KEY, FIELD)                                                   \
  Binding {                                                                  \
    KEY, [](const ToolkitConfig& c) { return std::to_string(c.FIELD); },     \
        [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) { \
          c.FIELD = as_int(kv, k);                                           \
        }                                                                    \
  }
#define UW_ARR(KEY, FIELD)                                                                     \
  Binding {                                                                                    \
    KEY, [](const ToolkitConfig& c) { return join(c.FIELD.data(), c.FIELD.size()); },          \
        [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) { set_array(c.FIELD, kv, k); } \
  }
#define UW_BOOL(KEY, FIELD)                                                  \
  Binding {                                                                  \
    KEY, [](const ToolkitConfig& c) { return bool_text(c.FIELD); },          \
        [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) { \
          c.FIELD = kv.boolean(k);                                           \
        }                                                                    \
  }

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      Binding{"window.radius", [](const ToolkitConfig& c) { return std::to_string(c.window.radius); },
              [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) {
                c.window = WindowSpec(as_int(kv, k));
              }},
      UW_ARR("priors.ulap_coeffs", priors.ulap_coeffs),
      UW_ARR("priors.nrer", priors.nrer),
      UW_NUM("priors.atten_m", priors.atten_m),
      UW_NUM("priors.atten_i", priors.atten_i),
      UW_ARR("priors.wavelengths_nm", priors.wavelengths_nm),
      UW_NUM("priors.rcp_lambda", priors.rcp_lambda),
      Binding{"priors.blur_scales",
              [](const ToolkitConfig& c) { return join(c.priors.blur_scales.data(), c.priors.blur_scales.size()); },
              [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) {
                c.priors.blur_scales = kv.numbers(k);
              }},
      UW_INT("priors.blur_closing_radius", priors.blur_closing_radius),
      UW_INT("priors.blur_refine_radius", priors.blur_refine.radius),
      UW_NUM("priors.blur_refine_eps", priors.blur_refine.eps),
      UW_NUM("priors.ibla_theta_a_gain", priors.ibla_theta_a_gain),
      UW_NUM("priors.ibla_theta_a_center", priors.ibla_theta_a_center),
      UW_NUM("priors.ibla_theta_b_gain", priors.ibla_theta_b_gain),
      UW_NUM("priors.ibla_theta_b_center", priors.ibla_theta_b_center),
      Binding{"priors.mip_shift",
              [](const ToolkitConfig& c) { return std::string(c.priors.mip_shift == MipShift::Max ? "max" : "min"); },
              [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) {
                const std::string v = *kv.text(k);
                if (v == "max") c.priors.mip_shift = MipShift::Max;
                else if (v == "min") c.priors.mip_shift = MipShift::Min;
                else throw Error("key '" + k + "' must be 'max' or 'min'");
              }},
      Binding{"priors.dcp_mip_mode",
              [](const ToolkitConfig& c) {
                return std::string(c.priors.dcp_mip_mode == DcpMipMode::TopDarkDifference ? "top-dark-difference"
                                                                                          : "dark-channel-difference");
              },
              [](ToolkitConfig& c, const KeyValueFile& kv, const std::string& k) {
                const std::string v = *kv.text(k);
                if (v == "top-dark-difference") c.priors.dcp_mip_mode = DcpMipMode::TopDarkDifference;
                else if (v == "dark-channel-difference") c.priors.dcp_mip_mode = DcpMipMode::DarkChannelDifference;
                else throw Error("key '" + k + "' must be 'top-dark-difference' or 'dark-channel-difference'");
              }},
      UW_BOOL("restore.refine", refine),
      UW_INT("restore.refine_radius", refine_params.radius),
      UW_NUM("restore.refine_eps", refine_params.eps),
      UW_NUM("restore.t_floor", t_floor),
      UW_ARR("metrics.uciqe_weights", metrics.uciqe),
      UW_ARR("metrics.uiqm_weights", metrics.uiqm),
      UW_NUM("enhance.clahe_clip", enhance.clahe.clip),
      UW_INT("enhance.clahe_tiles_x", enhance.clahe.tiles_x),
      UW_INT("enhance.clahe_tiles_y", enhance.clahe.tiles_y),
      UW_BOOL("enhance.clahe_rgb", enhance.clahe.rgb_mode),
      UW_NUM("enhance.stretch_percentile", enhance.stretch_percentile),
      UW_NUM("enhance.ucm_range_threshold", enhance.ucm_range_threshold),
      UW_NUM("enhance.rayleigh_sigma", enhance.rayleigh_sigma),
      UW_NUM("enhance.rghs_tail", enhance.rghs_tail),
      UW_ARR("enhance.rghs_expansion", enhance.rghs_expansion),
      UW_NUM("enhance.rghs_chroma_gain", enhance.rghs_chroma_gain),
      UW_INT("enhance.fusion_levels", enhance.fusion.levels),
      UW_BOOL("enhance.fusion_contrast", enhance.fusion.use_contrast),
      UW_BOOL("enhance.fusion_saliency", enhance.fusion.use_saliency),
      UW_BOOL("enhance.fusion_exposedness", enhance.fusion.use_exposedness),
      UW_BOOL("enhance.fusion_bypass_second", enhance.fusion.bypass_second_input),
  };
  return table;
}

#undef UW_NUM
#undef UW_INT
#undef UW_ARR
#undef UW_BOOL

}  // namespace

void ToolkitConfig::apply(const KeyValueFile& kv) {
  for (const auto& [key, value] : kv.entries()) {
    const Binding* found = nullptr;
    for (const Binding& b : bindings())
      if (key == b.key) found = &b;
    if (!found) throw Error("unknown config key '" + key + "'");
    found->set(*this, kv, key);
  }
  validate();
}

void ToolkitConfig::validate() const {
  priors.validate();
  enhance.validate();
  if (!(t_floor > 0.0 && t_floor < 1.0)) throw Error("restore.t_floor must lie in (0,1)");
  if (refine_params.radius < 0 || !(refine_params.eps >= 0.0)) throw Error("restore refine params out of range");
}

KeyValueFile ToolkitConfig::to_key_values() const {
  KeyValueFile kv;
  for (const Binding& b : bindings()) kv.set(b.key, b.get(*this));
  return kv;
}

ToolkitConfig load_config(const std::filesystem::path& path) {
  ToolkitConfig cfg;
  cfg.apply(KeyValueFile::load(path));
  return cfg;
}

PriorConstants load_prior_constants(const std::filesystem::path& path) { return load_config(path).priors; }

}  // namespace uwkit
