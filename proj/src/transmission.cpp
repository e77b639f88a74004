#include "uwkit/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace uwkit {
namespace {

struct NamedMethod {
  TmMethod method;
  std::string_view name;
};

constexpr NamedMethod kNames[] = {
    {TmMethod::Dcp, "dcp"},       {TmMethod::DcpMedian, "dcp-median"}, {TmMethod::Udcp, "udcp"},
    {TmMethod::Mip, "mip"},       {TmMethod::Rcp, "rcp"},              {TmMethod::NomRed, "nom-red"},
    {TmMethod::Blurriness, "blurriness"}, {TmMethod::WavelengthRatio, "wavelength"}, {TmMethod::Ulap, "ulap"},
    {TmMethod::Ibla, "ibla"},
};

constexpr double kMinDivisor = 1e-6;

void require_divisor(double v, const char* what) {
  if (!(v > kMinDivisor)) throw Error(std::string("estimate_transmission: ") + what + " is zero or too small");
}

// min over the listed channels of I^c / B^c, per pixel.
ImageGray normalized_channel_min(const ImageRGB& img, const Rgb& bl, std::initializer_list<int> channels) {
  ImageGray out(img.width(), img.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double m = 1e300;
    for (int c : channels) m = std::min(m, img.channel(c)[i] / bl[c]);
    out[i] = m;
  }
  return out;
}

ImageGray one_minus(const ImageGray& img) {
  ImageGray out(img.width(), img.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(1.0 - img[i], 0.0, 1.0);
  return out;
}

double mean(const ImageGray& img) {
  return std::accumulate(img.pixels().begin(), img.pixels().end(), 0.0) / static_cast<double>(img.size());
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TransmissionMaps power_of_nrer(const ImageGray& depth, const PriorConstants& consts, TmMethod method) {
  TransmissionMaps tm{{ImageGray(depth.width(), depth.height()), ImageGray(depth.width(), depth.height()),
                       ImageGray(depth.width(), depth.height())},
                      method,
                      false};
  for (int c = 0; c < 3; ++c) {
    const double base = consts.nrer[static_cast<std::size_t>(c)];
    ImageGray& t = tm.channel(c);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::clamp(std::pow(base, depth[i]), 0.0, 1.0);
  }
  return tm;
}

ImageGray ibla_depth(const ImageRGB& img, WindowSpec win, const PriorConstants& consts) {
  ImageGray neg_mip = mip_map(img, win);
  for (double& v : neg_mip.pixels()) v = -v;
  const ImageGray d_mip = normalize_minmax(neg_mip, 0.5);
  const ImageGray red_max = window_max(img.channel(0), win);
  const ImageGray d_blur = blurriness_map(img, consts);

  const ImageGray gray = to_gray(img);
  double bright = 0.0;
  const auto top = top_k_indices(gray.pixels(), top_count(gray.size(), 0.001));
  for (std::size_t i : top) bright += gray[i];
  bright /= static_cast<double>(top.size());
  const double theta_a = sigmoid(consts.ibla_theta_a_gain * (bright - consts.ibla_theta_a_center));
  const double theta_b = sigmoid(consts.ibla_theta_b_gain * (mean(img.channel(0)) - consts.ibla_theta_b_center));

  ImageGray depth(img.width(), img.height());
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const double d_red = 1.0 - red_max[i];
    const double d = theta_b * (theta_a * d_mip[i] + (1.0 - theta_a) * d_red) + (1.0 - theta_b) * d_blur[i];
    depth[i] = std::clamp(d, 0.0, 1.0);
  }
  return depth;
}

}  // namespace

std::string_view to_string(TmMethod m) {
  for (const auto& [method, name] : kNames)
    if (method == m) return name;
  return "?";
}

TmMethod parse_tm_method(std::string_view name) {
  for (const auto& [method, n] : kNames)
    if (n == name) return method;
  throw Error("unknown transmission method: " + std::string(name));
}

TransmissionMaps TransmissionMaps::uniform(const ImageGray& map, TmMethod method) {
  return {{map, map, map}, method, false};
}

std::array<double, 2> attenuation_ratios(const Rgb& bl, const PriorConstants& consts) {
  const auto& lambda = consts.wavelengths_nm;
  const double red_term = consts.atten_m * lambda[0] + consts.atten_i;
  std::array<double, 2> out{};
  for (int c = 1; c < 3; ++c) {
    if (!(bl[c] > kMinDivisor)) throw Error("attenuation_ratios: background light component is zero");
    const double channel_term = consts.atten_m * lambda[static_cast<std::size_t>(c)] + consts.atten_i;
    out[static_cast<std::size_t>(c - 1)] = bl.r * channel_term / (bl[c] * red_term);
  }
  return out;
}

std::array<ImageGray, 2> wavelength_extend(const ImageGray& t_r, std::array<double, 2> ratios) {
  std::array<ImageGray, 2> out{ImageGray(t_r.width(), t_r.height()), ImageGray(t_r.width(), t_r.height())};
  for (std::size_t k = 0; k < 2; ++k) {
    if (!(ratios[k] > 0.0)) throw Error("wavelength_extend: ratios must be > 0");
    for (std::size_t i = 0; i < t_r.size(); ++i) out[k][i] = std::pow(t_r[i], ratios[k]);
  }
  return out;
}

TransmissionMaps tm_from_depth(const DepthMap& depth, const PriorConstants& consts) {
  for (double n : consts.nrer)
    if (!(n > 0.0 && n <= 1.0)) throw Error("tm_from_depth: nrer must lie in (0,1]");
  return power_of_nrer(depth.values(), consts, TmMethod::Ulap);
}

TransmissionMaps estimate_transmission(const ImageRGB& img, const BackgroundLight& bl, TmMethod method,
                                       WindowSpec win, const PriorConstants& consts, const TmInputs& inputs) {
  require_valid(img, "estimate_transmission");
  if (inputs.depth) require_same_shape(img, inputs.depth->values(), "estimate_transmission depth");
  const Rgb& b = bl.color;

  switch (method) {
    case TmMethod::Dcp:
    case TmMethod::DcpMedian: {
      require_divisor(b.r, "B_r");
      require_divisor(b.g, "B_g");
      require_divisor(b.b, "B_b");
      const ImageGray ratio = normalized_channel_min(img, b, {0, 1, 2});
      const ImageGray t =
          one_minus(method == TmMethod::Dcp ? window_min(ratio, win) : window_median(ratio, win));
      return TransmissionMaps::uniform(t, method);
    }

    case TmMethod::Udcp: {
      require_divisor(b.g, "B_g");
      require_divisor(b.b, "B_b");
      return TransmissionMaps::uniform(one_minus(window_min(normalized_channel_min(img, b, {1, 2}), win)), method);
    }

    case TmMethod::Mip: {
      ImageGray mip = mip_map(img, win);
      const auto [lo, hi] = std::minmax_element(mip.pixels().begin(), mip.pixels().end());
      const double shift = 1.0 - (consts.mip_shift == MipShift::Max ? *hi : *lo);
      for (double& v : mip.pixels()) v = std::clamp(v + shift, 0.0, 1.0);
      return TransmissionMaps::uniform(mip, method);
    }

    case TmMethod::Rcp: {
      require_divisor(b.g, "B_g");
      require_divisor(b.b, "B_b");
      require_divisor(1.0 - b.r, "1 - B_r");
      const ImageGray gb_term = window_min(normalized_channel_min(img, b, {1, 2}), win);
      ImageGray saturation(img.width(), img.height());
      ImageGray red_term(img.width(), img.height());
      for (std::size_t i = 0; i < saturation.size(); ++i) {
        const Rgb p = img.pixel(i);
        const double mx = std::max({p.r, p.g, p.b});
        saturation[i] = mx > 0.0 ? (mx - std::min({p.r, p.g, p.b})) / mx : 0.0;
        red_term[i] = (1.0 - p.r) / (1.0 - b.r);
      }
      const ImageGray sat_min = window_min(saturation, win);
      const ImageGray red_min = window_min(red_term, win);
      ImageGray t_r(img.width(), img.height());
      for (std::size_t i = 0; i < t_r.size(); ++i)
        t_r[i] = std::clamp(1.0 - std::min({gb_term[i], consts.rcp_lambda * sat_min[i], red_min[i]}), 0.0, 1.0);
      auto [t_g, t_b] = wavelength_extend(t_r, attenuation_ratios(b, consts));
      return {{std::move(t_r), std::move(t_g), std::move(t_b)}, method, false};
    }

    case TmMethod::NomRed: {
      require_divisor(b.g, "B_g");
      require_divisor(b.b, "B_b");
      const ImageGray t_gb = one_minus(window_min(normalized_channel_min(img, b, {1, 2}), win));
      const ImageGray red_max = window_max(img.channel(0), win);
      const double red_avg = mean(red_max);
      const double tau = red_avg > 0.0 ? mean(t_gb) / red_avg : 0.0;
      ImageGray t_r(img.width(), img.height());
      for (std::size_t i = 0; i < t_r.size(); ++i) t_r[i] = std::clamp(tau * red_max[i], 0.0, 1.0);
      return {{std::move(t_r), t_gb, t_gb}, method, false};
    }

    case TmMethod::Blurriness:
      return TransmissionMaps::uniform(one_minus(blurriness_map(img, consts)), method);

    case TmMethod::WavelengthRatio: {
      require_divisor(b.r, "B_r");
      require_divisor(b.g, "B_g");
      require_divisor(b.b, "B_b");
      ImageGray t_r = one_minus(window_min(normalized_channel_min(img, b, {0, 1, 2}), win));
      auto [t_g, t_b] = wavelength_extend(t_r, attenuation_ratios(b, consts));
      return {{std::move(t_r), std::move(t_g), std::move(t_b)}, method, false};
    }

    case TmMethod::Ulap: {
      const DepthMap depth = inputs.depth ? *inputs.depth : ulap_depth(img, consts);
      return power_of_nrer(depth.values(), consts, method);
    }

    case TmMethod::Ibla: {
      const ImageGray depth = inputs.depth ? inputs.depth->values() : ibla_depth(img, win, consts);
      return power_of_nrer(depth, consts, method);
    }
  }
  throw Error("estimate_transmission: unknown method");
}

TransmissionMaps refine_tm(const TransmissionMaps& tm, const ImageRGB& guide, int radius, double eps) {
  require_same_shape(guide, tm.channel(0), "refine_tm");
  const ImageGray gray = to_gray(guide);
  TransmissionMaps out = tm;
  for (int c = 0; c < 3; ++c) out.channel(c) = clamp01(guided_filter(tm.channel(c), gray, radius, eps));
  out.refined = true;
  return out;
}

}  // namespace uwkit
