#include "uwkit/enhancement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwkit/color.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/stats.hpp"

namespace uwkit {
namespace {

constexpr int kLevels = 256;

struct NamedMethod {
  EnhanceMethod method;
  std::string_view name;
};

constexpr NamedMethod kNames[] = {
    {EnhanceMethod::He, "he"},   {EnhanceMethod::Clahe, "clahe"},       {EnhanceMethod::Icm, "icm"},
    {EnhanceMethod::Ucm, "ucm"}, {EnhanceMethod::Rayleigh, "rayleigh"}, {EnhanceMethod::Rghs, "rghs"},
    {EnhanceMethod::Fusion, "fusion"},
};

int level_of(double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

using Histogram = std::array<double, kLevels>;

Histogram histogram(const ImageGray& plane) {
  Histogram h{};
  for (double v : plane.pixels()) h[static_cast<std::size_t>(level_of(v))] += 1.0;
  return h;
}

int occupied_levels(const Histogram& h) {
  return static_cast<int>(std::count_if(h.begin(), h.end(), [](double c) { return c > 0.0; }));
}

// (cdf(q) - cdf_min) / (1 - cdf_min), cdf_min at the first occupied bin.
std::array<double, kLevels> equalization_map(const Histogram& h) {
  double total = 0.0;
  for (double c : h) total += c;
  std::array<double, kLevels> map{};
  double cdf_min = -1.0;
  double running = 0.0;
  for (int q = 0; q < kLevels; ++q) {
    running += h[static_cast<std::size_t>(q)];
    if (cdf_min < 0.0 && h[static_cast<std::size_t>(q)] > 0.0) cdf_min = running / total;
    map[static_cast<std::size_t>(q)] = running / total;
  }
  const double span = 1.0 - cdf_min;
  for (int q = 0; q < kLevels; ++q) {
    auto& m = map[static_cast<std::size_t>(q)];
    m = span > 0.0 ? std::clamp((m - cdf_min) / span, 0.0, 1.0) : q / 255.0;
  }
  return map;
}

std::array<double, kLevels> identity_map() {
  std::array<double, kLevels> map{};
  for (int q = 0; q < kLevels; ++q) map[static_cast<std::size_t>(q)] = q / 255.0;
  return map;
}

ImageRGB per_channel(const ImageRGB& img, auto&& fn) {
  return ImageRGB(fn(img.channel(0)), fn(img.channel(1)), fn(img.channel(2)));
}

std::array<double, 3> channel_means(const ImageRGB& img) {
  return {mean(img.channel(0).pixels()), mean(img.channel(1).pixels()), mean(img.channel(2).pixels())};
}

ImageRGB apply_gains(const ImageRGB& img, const std::array<double, 3>& gains) {
  ImageRGB out = img;
  for (int c = 0; c < 3; ++c)
    for (double& v : out.channel(c).pixels()) v = std::clamp(v * gains[static_cast<std::size_t>(c)], 0.0, 1.0);
  return out;
}

}  // namespace

std::string_view to_string(EnhanceMethod m) {
  for (const auto& [method, name] : kNames)
    if (method == m) return name;
  return "?";
}

EnhanceMethod parse_enhance_method(std::string_view name) {
  for (const auto& [method, n] : kNames)
    if (n == name) return method;
  throw Error("unknown enhancement method: " + std::string(name));
}

void EnhanceParams::validate() const {
  if (!(clahe.clip > 0.0)) throw Error("clahe clip limit must be > 0");
  if (clahe.tiles_x < 1 || clahe.tiles_y < 1) throw Error("clahe tile grid must be at least 1x1");
  if (!(stretch_percentile >= 0.0 && stretch_percentile < 50.0)) throw Error("stretch percentile must be in [0,50)");
  if (!(rghs_tail >= 0.0 && rghs_tail < 50.0)) throw Error("rghs tail must be in [0,50)");
  if (!(rayleigh_sigma > 0.0)) throw Error("rayleigh sigma must be > 0");
  if (fusion.levels < 1) throw Error("fusion levels must be >= 1");
}

// ---------------------------------------------------------------------------
// Histogram equalisation

ImageGray equalize_plane(const ImageGray& plane) {
  const Histogram h = histogram(plane);
  if (occupied_levels(h) <= 1) return plane;
  const auto map = equalization_map(h);
  ImageGray out(plane.width(), plane.height());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::round(255.0 * map[static_cast<std::size_t>(level_of(plane[i]))]) / 255.0;
  return out;
}

ImageRGB he(const ImageRGB& img) {
  require_valid(img, "he");
  if (is_constant(img)) return img;
  return per_channel(img, equalize_plane);
}

ImageGray clahe_plane(const ImageGray& plane, const ClaheParams& params) {
  const int w = plane.width();
  const int h = plane.height();
  const int nx = params.tiles_x;
  const int ny = params.tiles_y;
  if (nx < 1 || ny < 1) throw Error("clahe: tile grid must be at least 1x1");
  if (nx > w || ny > h) throw Error("clahe: tile grid larger than image");
  if (!(params.clip > 0.0)) throw Error("clahe: clip limit must be > 0");

  auto edge = [](int k, int n, int extent) { return static_cast<int>(static_cast<long long>(k) * extent / n); };
  std::vector<std::array<double, kLevels>> maps(static_cast<std::size_t>(nx * ny));
  for (int ty = 0; ty < ny; ++ty)
    for (int tx = 0; tx < nx; ++tx) {
      Histogram hist{};
      for (int y = edge(ty, ny, h); y < edge(ty + 1, ny, h); ++y)
        for (int x = edge(tx, nx, w); x < edge(tx + 1, nx, w); ++x)
          hist[static_cast<std::size_t>(level_of(plane.at(x, y)))] += 1.0;
      auto& map = maps[static_cast<std::size_t>(ty * nx + tx)];
      if (occupied_levels(hist) <= 1) {
        map = identity_map();
        continue;
      }
      if (std::isfinite(params.clip)) {
        double count = 0.0;
        for (double c : hist) count += c;
        const double limit = params.clip * count / kLevels;
        double excess = 0.0;
        for (double& c : hist) {
          if (c > limit) {
            excess += c - limit;
            c = limit;
          }
        }
        for (double& c : hist) c += excess / kLevels;
      }
      map = equalization_map(hist);
    }

  // Bilinear blend of the four surrounding tile maps, keyed on tile centres.
  auto centre = [&](int k, int n, int extent) { return 0.5 * (edge(k, n, extent) + edge(k + 1, n, extent) - 1); };
  auto locate = [&](double pos, int n, int extent, int& k0, int& k1, double& frac) {
    k0 = 0;
    while (k0 + 1 < n && centre(k0 + 1, n, extent) <= pos) ++k0;
    k1 = std::min(k0 + 1, n - 1);
    const double c0 = centre(k0, n, extent);
    const double c1 = centre(k1, n, extent);
    frac = (k1 == k0 || pos <= c0) ? 0.0 : std::min(1.0, (pos - c0) / (c1 - c0));
  };

  ImageGray out(w, h);
  std::vector<int> x0(static_cast<std::size_t>(w)), x1(static_cast<std::size_t>(w));
  std::vector<double> fx(static_cast<std::size_t>(w));
  for (int x = 0; x < w; ++x)
    locate(x, nx, w, x0[static_cast<std::size_t>(x)], x1[static_cast<std::size_t>(x)], fx[static_cast<std::size_t>(x)]);
  for (int y = 0; y < h; ++y) {
    int y0, y1;
    double fy;
    locate(y, ny, h, y0, y1, fy);
    for (int x = 0; x < w; ++x) {
      const auto q = static_cast<std::size_t>(level_of(plane.at(x, y)));
      const auto ux = static_cast<std::size_t>(x);
      auto m = [&](int ty, int tx) { return maps[static_cast<std::size_t>(ty * nx + tx)][q]; };
      const double top = (1.0 - fx[ux]) * m(y0, x0[ux]) + fx[ux] * m(y0, x1[ux]);
      const double bottom = (1.0 - fx[ux]) * m(y1, x0[ux]) + fx[ux] * m(y1, x1[ux]);
      out.at(x, y) = std::clamp((1.0 - fy) * top + fy * bottom, 0.0, 1.0);
    }
  }
  return out;
}

ImageRGB clahe(const ImageRGB& img, const ClaheParams& params) {
  require_valid(img, "clahe");
  if (params.tiles_x > img.width() || params.tiles_y > img.height())
    throw Error("clahe: tile grid larger than image");
  if (is_constant(img)) return img;
  if (params.rgb_mode) return per_channel(img, [&](const ImageGray& p) { return clahe_plane(p, params); });
  ColorPlanes hsv = convert_color(img, ColorSpace::Hsv);
  hsv.z = clahe_plane(hsv.z, params);
  return convert_to_rgb(hsv, ColorSpace::Hsv);
}

// ---------------------------------------------------------------------------
// Colour-model stretching

ImageGray stretch_plane(const ImageGray& plane, double pct) {
  const double lo = percentile(plane.pixels(), pct);
  const double hi = percentile(plane.pixels(), 100.0 - pct);
  if (!(hi - lo > 1e-12)) return plane;
  ImageGray out(plane.width(), plane.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp((plane[i] - lo) / (hi - lo), 0.0, 1.0);
  return out;
}

ImageRGB stretch_channels(const ImageRGB& img, double pct) {
  return per_channel(img, [&](const ImageGray& p) { return stretch_plane(p, pct); });
}

ImageRGB stretch_hsi(const ImageRGB& img, double pct) {
  ColorPlanes hsi = convert_color(img, ColorSpace::Hsi);
  hsi.y = stretch_plane(hsi.y, pct);
  hsi.z = stretch_plane(hsi.z, pct);
  return convert_to_rgb(hsi, ColorSpace::Hsi);
}

ImageRGB icm(const ImageRGB& img, double pct) {
  require_valid(img, "icm");
  if (!(pct >= 0.0 && pct < 50.0)) throw Error("icm: percentile must be in [0,50)");
  if (is_constant(img)) return img;
  return stretch_hsi(stretch_channels(img, pct), pct);
}

std::array<double, 3> von_kries_gains(const ImageRGB& img) {
  const auto means = channel_means(img);
  const double target = std::max({means[0], means[1], means[2]});
  std::array<double, 3> gains{};
  for (std::size_t c = 0; c < 3; ++c) gains[c] = means[c] > 0.0 ? target / means[c] : 1.0;
  return gains;
}

ImageRGB ucm(const ImageRGB& img, double pct, double range_threshold) {
  require_valid(img, "ucm");
  if (!(pct >= 0.0 && pct < 50.0)) throw Error("ucm: percentile must be in [0,50)");
  if (is_constant(img)) return img;
  ImageRGB balanced = apply_gains(img, von_kries_gains(img));
  for (int c = 0; c < 3; ++c) {
    const auto px = balanced.channel(c).pixels();
    const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
    if (*hi - *lo < range_threshold) balanced.channel(c) = stretch_plane(balanced.channel(c), pct);
  }
  return stretch_hsi(balanced, pct);
}

// ---------------------------------------------------------------------------
// Rayleigh histogram matching

ImageRGB rayleigh_stretch(const ImageRGB& img, double sigma) {
  require_valid(img, "rayleigh_stretch");
  if (!(sigma > 0.0)) throw Error("rayleigh_stretch: sigma must be > 0");
  if (is_constant(img)) return img;
  const double two_var = 2.0 * sigma * sigma;
  const double mass = 1.0 - std::exp(-1.0 / two_var);  // Rayleigh CDF at 1
  auto inverse_cdf = [&](double u) { return std::sqrt(-two_var * std::log1p(-u * mass)); };
  return per_channel(img, [&](const ImageGray& plane) {
    const Histogram h = histogram(plane);
    if (occupied_levels(h) <= 1) return plane;
    double total = 0.0;
    for (double c : h) total += c;
    std::array<double, kLevels> map{};
    double running = 0.0;
    for (std::size_t q = 0; q < kLevels; ++q) {
      running += h[q];
      map[q] = std::clamp(inverse_cdf(running / total), 0.0, 1.0);
    }
    ImageGray out(plane.width(), plane.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = map[static_cast<std::size_t>(level_of(plane[i]))];
    return out;
  });
}

// ---------------------------------------------------------------------------
// Relative global histogram stretching

ImageRGB gray_world(const ImageRGB& img) {
  const auto means = channel_means(img);
  const double gray = (means[0] + means[1] + means[2]) / 3.0;
  std::array<double, 3> gains{};
  for (std::size_t c = 0; c < 3; ++c) gains[c] = means[c] > 0.0 ? gray / means[c] : 1.0;
  return apply_gains(img, gains);
}

ImageRGB gray_world_gb(const ImageRGB& img) {
  const auto means = channel_means(img);
  const double target = 0.5 * (means[1] + means[2]);
  return apply_gains(img, {1.0, means[1] > 0.0 ? target / means[1] : 1.0, means[2] > 0.0 ? target / means[2] : 1.0});
}

ImageRGB relative_stretch(const ImageRGB& img, double tail_pct, const std::array<double, 3>& expansion) {
  ImageRGB out = img;
  for (int c = 0; c < 3; ++c) {
    const ImageGray& plane = img.channel(c);
    const double lo = percentile(plane.pixels(), tail_pct);
    const double hi = percentile(plane.pixels(), 100.0 - tail_pct);
    if (!(hi - lo > 1e-12)) continue;
    const double rho = expansion[static_cast<std::size_t>(c)];
    const double out_lo = lo * (1.0 - rho);
    const double out_hi = hi + (1.0 - hi) * rho;
    ImageGray& dst = out.channel(c);
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = std::clamp(out_lo + (plane[i] - lo) * (out_hi - out_lo) / (hi - lo), out_lo, out_hi);
  }
  return out;
}

ImageRGB rghs(const ImageRGB& img, const EnhanceParams& params) {
  require_valid(img, "rghs");
  if (is_constant(img)) return img;
  const ImageRGB stretched = relative_stretch(gray_world_gb(img), params.rghs_tail, params.rghs_expansion);

  ColorPlanes lab = convert_color(stretched, ColorSpace::Lab);
  const double lo = percentile(lab.x.pixels(), params.rghs_tail);
  const double hi = percentile(lab.x.pixels(), 100.0 - params.rghs_tail);
  if (hi - lo > 1e-9)
    for (double& v : lab.x.pixels()) v = std::clamp((v - lo) / (hi - lo) * 100.0, 0.0, 100.0);
  const double k = params.rghs_chroma_gain;
  auto curve = [k](double v) { return v * (1.0 + k - k * std::min(1.0, std::fabs(v) / 128.0)); };
  for (double& v : lab.y.pixels()) v = curve(v);
  for (double& v : lab.z.pixels()) v = curve(v);
  return convert_to_rgb(lab, ColorSpace::Lab);
}

// ---------------------------------------------------------------------------
// Multi-scale fusion

std::array<ImageGray, 2> fusion_weights(const ImageRGB& first, const ImageRGB& second, const FusionParams& params) {
  auto raw_weight = [&](const ImageRGB& input) {
    const ImageGray gray = to_gray(input);
    ImageGray weight(input.width(), input.height(), 0.0);
    if (params.use_contrast) {
      const ImageGray lap = laplacian(gray);
      for (std::size_t i = 0; i < weight.size(); ++i) weight[i] += std::fabs(lap[i]);
    }
    if (params.use_saliency) {
      const ColorPlanes lab = convert_color(input, ColorSpace::Lab);
      const double ml = mean(lab.x.pixels()), ma = mean(lab.y.pixels()), mb = mean(lab.z.pixels());
      const ImageGray bl = gaussian_blur(lab.x, 1.0), ba = gaussian_blur(lab.y, 1.0), bb = gaussian_blur(lab.z, 1.0);
      for (std::size_t i = 0; i < weight.size(); ++i) {
        const double dl = bl[i] - ml, da = ba[i] - ma, db = bb[i] - mb;
        weight[i] += std::sqrt(dl * dl + da * da + db * db) / 100.0;
      }
    }
    if (params.use_exposedness) {
      constexpr double kSigma = 0.25;
      for (std::size_t i = 0; i < weight.size(); ++i)
        weight[i] += std::exp(-(gray[i] - 0.5) * (gray[i] - 0.5) / (2.0 * kSigma * kSigma));
    }
    return weight;
  };
  ImageGray w1 = raw_weight(first);
  ImageGray w2 = raw_weight(second);
  constexpr double kDelta = 1e-12;
  for (std::size_t i = 0; i < w1.size(); ++i) {
    const double total = w1[i] + w2[i] + 2.0 * kDelta;
    w1[i] = (w1[i] + kDelta) / total;
    w2[i] = 1.0 - w1[i];
  }
  return {std::move(w1), std::move(w2)};
}

ImageRGB fusion_enhance(const ImageRGB& img, const EnhanceParams& params) {
  require_valid(img, "fusion_enhance");
  const int levels = params.fusion.levels;
  if (levels < 1) throw Error("fusion_enhance: levels must be >= 1");
  if (levels > max_pyramid_levels(img.width(), img.height()))
    throw Error("fusion_enhance: " + std::to_string(levels) + " levels too deep for image size");
  if (is_constant(img)) return img;

  const ImageRGB first = gray_world(img);
  const ImageRGB second = params.fusion.bypass_second_input ? first : clahe(first, params.clahe);
  const auto weights = fusion_weights(first, second, params.fusion);
  const auto g0 = gaussian_pyramid(weights[0], levels);
  const auto g1 = gaussian_pyramid(weights[1], levels);

  ImageRGB out(img.width(), img.height());
  for (int c = 0; c < 3; ++c) {
    const auto l0 = laplacian_pyramid(first.channel(c), levels);
    const auto l1 = laplacian_pyramid(second.channel(c), levels);
    std::vector<ImageGray> fused;
    fused.reserve(l0.size());
    for (std::size_t l = 0; l < l0.size(); ++l) {
      ImageGray level(l0[l].width(), l0[l].height());
      for (std::size_t i = 0; i < level.size(); ++i) level[i] = g0[l][i] * l0[l][i] + g1[l][i] * l1[l][i];
      fused.push_back(std::move(level));
    }
    out.channel(c) = clamp01(collapse_pyramid(fused));
  }
  return out;
}

ImageRGB enhance(const ImageRGB& img, EnhanceMethod method, const EnhanceParams& params) {
  params.validate();
  switch (method) {
    case EnhanceMethod::He: return he(img);
    case EnhanceMethod::Clahe: return clahe(img, params.clahe);
    case EnhanceMethod::Icm: return icm(img, params.stretch_percentile);
    case EnhanceMethod::Ucm: return ucm(img, params.stretch_percentile, params.ucm_range_threshold);
    case EnhanceMethod::Rayleigh: return rayleigh_stretch(img, params.rayleigh_sigma);
    case EnhanceMethod::Rghs: return rghs(img, params);
    case EnhanceMethod::Fusion: return fusion_enhance(img, params);
  }
  throw Error("enhance: unknown method");
}

}  // namespace uwkit
