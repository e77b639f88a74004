#include "uwkit/priors.hpp"

#include <algorithm>
#include <cmath>

namespace uwkit {

void PriorConstants::validate() const {
  for (double n : nrer)
    if (!(n > 0.0 && n <= 1.0)) throw Error("nrer components must lie in (0,1]");
  if (blur_scales.empty()) throw Error("blur_scales must be non-empty");
  for (std::size_t i = 0; i < blur_scales.size(); ++i) {
    if (!(blur_scales[i] > 0.0)) throw Error("blur_scales must be positive");
    if (i > 0 && !(blur_scales[i] > blur_scales[i - 1])) throw Error("blur_scales must be strictly increasing");
  }
  if (blur_closing_radius < 0) throw Error("blur closing radius must be >= 0");
  for (double c : ulap_coeffs)
    if (!std::isfinite(c)) throw Error("ulap coefficients must be finite");
  if (!(rcp_lambda >= 0.0)) throw Error("rcp lambda must be >= 0");
}

DepthMap::DepthMap(ImageGray depth) : depth_(std::move(depth)) {
  for (double v : depth_.pixels())
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) throw Error("depth values must lie in [0,1]");
}

ImageGray channel_min(const ImageRGB& img) {
  ImageGray out(img.width(), img.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Rgb p = img.pixel(i);
    out[i] = std::min({p.r, p.g, p.b});
  }
  return out;
}

ImageGray dark_channel(const ImageRGB& img, WindowSpec win) { return window_min(channel_min(img), win); }

ImageGray underwater_dark_channel(const ImageRGB& img, WindowSpec win) {
  ImageGray gb(img.width(), img.height());
  for (std::size_t i = 0; i < gb.size(); ++i) gb[i] = std::min(img.channel(1)[i], img.channel(2)[i]);
  return window_min(gb, win);
}

ImageGray mip_map(const ImageRGB& img, WindowSpec win) {
  ImageGray gb(img.width(), img.height());
  for (std::size_t i = 0; i < gb.size(); ++i) gb[i] = std::max(img.channel(1)[i], img.channel(2)[i]);
  ImageGray out = window_max(img.channel(0), win);
  const ImageGray gb_max = window_max(gb, win);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= gb_max[i];
  return out;
}

ImageGray red_inverted_dark(const ImageRGB& img, WindowSpec win) {
  ImageGray m(img.width(), img.height());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rgb p = img.pixel(i);
    m[i] = std::min({1.0 - p.r, p.g, p.b});
  }
  return window_min(m, win);
}

ImageGray blurriness_raw(const ImageRGB& img, const std::vector<double>& scales) {
  if (scales.empty()) throw Error("blurriness: no scales");
  const ImageGray gray = to_gray(img);
  ImageGray acc(img.width(), img.height(), 0.0);
  for (double r : scales) {
    const ImageGray blurred = gaussian_blur(gray, r);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::fabs(gray[i] - blurred[i]);
  }
  for (double& v : acc.pixels()) v /= static_cast<double>(scales.size());
  return normalize_minmax(acc, 0.0);
}

ImageGray blurriness_map(const ImageRGB& img, const PriorConstants& consts) {
  const ImageGray raw = blurriness_raw(img, consts.blur_scales);
  const WindowSpec close_win(consts.blur_closing_radius);
  const ImageGray closed = window_min(window_max(raw, close_win), close_win);
  return clamp01(guided_filter(closed, to_gray(img), consts.blur_refine));
}

DepthMap ulap_depth(const ImageRGB& img, const PriorConstants& consts) {
  const auto [mu0, mu1, mu2] = consts.ulap_coeffs;
  ImageGray raw(img.width(), img.height());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Rgb p = img.pixel(i);
    raw[i] = mu0 + mu1 * std::max(p.g, p.b) + mu2 * p.r;
  }
  return DepthMap(normalize_minmax(raw, 0.5));
}

}  // namespace uwkit
