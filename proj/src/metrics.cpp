#include "uwkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uwkit/color.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/stats.hpp"

namespace uwkit {
namespace {

constexpr int kBlock = 8;

// Sum over kBlock x kBlock tiles (partial edge tiles included) of
// term(block max, block min); returns the sum and the tile count.
template <typename Term>
std::pair<double, int> block_sum(const ImageGray& img, Term term) {
  double sum = 0.0;
  int blocks = 0;
  for (int by = 0; by < img.height(); by += kBlock)
    for (int bx = 0; bx < img.width(); bx += kBlock) {
      double mx = -std::numeric_limits<double>::infinity();
      double mn = std::numeric_limits<double>::infinity();
      for (int y = by; y < std::min(by + kBlock, img.height()); ++y)
        for (int x = bx; x < std::min(bx + kBlock, img.width()); ++x) {
          mx = std::max(mx, img.at(x, y));
          mn = std::min(mn, img.at(x, y));
        }
      sum += term(mx, mn);
      ++blocks;
    }
  return {sum, blocks};
}

// 2/(k1 k2) * sum log(max/min); degenerate blocks contribute 0.
double eme(const ImageGray& img) {
  const auto [sum, blocks] = block_sum(img, [](double mx, double mn) {
    return (mn > 0.0 && mx > 0.0) ? std::log(mx / mn) : 0.0;
  });
  return 2.0 * sum / blocks;
}

ImageGray scaled(const ImageGray& plane, double k) {
  ImageGray out = plane;
  for (double& v : out.pixels()) v *= k;
  return out;
}

}  // namespace

double entropy(const ImageRGB& img) {
  require_valid(img, "entropy");
  std::array<double, 256> hist{};
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    hist[static_cast<std::size_t>(std::lround(std::clamp(luma(img.pixel(i)), 0.0, 1.0) * 255.0))] += 1.0;
  const double n = static_cast<double>(img.pixel_count());
  double h = 0.0;
  for (double c : hist)
    if (c > 0.0) h -= (c / n) * std::log2(c / n);
  return h;
}

UciqeResult uciqe(const ImageRGB& img, const MetricWeights& w) {
  require_valid(img, "uciqe");
  const ColorPlanes lab = convert_color(img, ColorSpace::Lab);
  std::vector<double> chroma(img.pixel_count());
  std::vector<double> saturation(img.pixel_count());
  for (std::size_t i = 0; i < chroma.size(); ++i) {
    chroma[i] = std::sqrt(lab.y[i] * lab.y[i] + lab.z[i] * lab.z[i]) / 100.0;
    saturation[i] = rgb_to_hsv(img.pixel(i)).y;
  }
  UciqeResult r;
  r.sigma_c = std::sqrt(variance(chroma));
  r.con_l = (percentile(lab.x.pixels(), 99.0) - percentile(lab.x.pixels(), 1.0)) / 100.0;
  r.mu_s = mean(saturation);
  r.score = w.uciqe[0] * r.sigma_c + w.uciqe[1] * r.con_l + w.uciqe[2] * r.mu_s;
  return r;
}

double trimmed_mean(std::span<const double> values, double alpha_lo, double alpha_hi) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const auto drop_lo = static_cast<std::size_t>(std::ceil(alpha_lo * static_cast<double>(n)));
  const auto drop_hi = static_cast<std::size_t>(std::floor(alpha_hi * static_cast<double>(n)));
  if (drop_lo + drop_hi >= n) return mean(values);
  double sum = 0.0;
  for (std::size_t i = drop_lo; i < n - drop_hi; ++i) sum += sorted[i];
  return sum / static_cast<double>(n - drop_lo - drop_hi);
}

double uicm(const ImageRGB& img) {
  constexpr double kAlpha = 0.1;
  std::vector<double> rg(img.pixel_count());
  std::vector<double> yb(img.pixel_count());
  for (std::size_t i = 0; i < rg.size(); ++i) {
    const Rgb p = img.pixel(i);
    rg[i] = 255.0 * (p.r - p.g);
    yb[i] = 255.0 * ((p.r + p.g) / 2.0 - p.b);
  }
  const double mu_rg = trimmed_mean(rg, kAlpha, kAlpha);
  const double mu_yb = trimmed_mean(yb, kAlpha, kAlpha);
  double var_rg = 0.0, var_yb = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    var_rg += (rg[i] - mu_rg) * (rg[i] - mu_rg);
    var_yb += (yb[i] - mu_yb) * (yb[i] - mu_yb);
  }
  var_rg /= static_cast<double>(rg.size());
  var_yb /= static_cast<double>(yb.size());
  return -0.0268 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb) + 0.1586 * std::sqrt(var_rg + var_yb);
}

double uism(const ImageRGB& img) {
  constexpr double kLambda[3] = {0.299, 0.587, 0.114};
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    const ImageGray channel = scaled(img.channel(c), 255.0);
    ImageGray edges = sobel_magnitude(channel);
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i] *= channel[i];
    total += kLambda[c] * eme(edges);
  }
  return total;
}

double uiconm(const ImageRGB& img) {
  const ImageGray gray = scaled(to_gray(img), 255.0);
  const auto [sum, blocks] = block_sum(gray, [](double mx, double mn) {
    const double top = mx - mn;
    const double bottom = mx + mn;
    if (top <= 0.0 || bottom <= 0.0) return 0.0;
    const double ratio = top / bottom;
    return ratio * std::log(ratio);
  });
  return -sum / blocks;
}

UiqmResult uiqm(const ImageRGB& img, const MetricWeights& w) {
  require_valid(img, "uiqm");
  UiqmResult r;
  r.uicm = uicm(img);
  r.uism = uism(img);
  r.uiconm = uiconm(img);
  r.score = w.uiqm[0] * r.uicm + w.uiqm[1] * r.uism + w.uiqm[2] * r.uiconm;
  return r;
}

double psnr(const ImageRGB& a, const ImageRGB& b) {
  require_same_shape(a, b, "psnr");
  double sse = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
      const double d = a.channel(c)[i] - b.channel(c)[i];
      sse += d * d;
    }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / (3.0 * static_cast<double>(a.pixel_count()));
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace uwkit
