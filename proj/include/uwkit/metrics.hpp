#pragma once

// No-reference underwater quality measures and a full-reference PSNR.

#include <array>
#include <span>

#include "uwkit/image.hpp"

namespace uwkit {

/// UCIQE weights c1..c3 (chroma std, luminance contrast, mean saturation)
/// and UIQM weights (UICM, UISM, UIConM).
struct MetricWeights {
  std::array<double, 3> uciqe{0.4680, 0.2745, 0.2576};
  std::array<double, 3> uiqm{0.0282, 0.2953, 3.5753};
};

struct UciqeResult {
  double score = 0.0;
  double sigma_c = 0.0;  // std of Lab chroma, chroma scaled by 1/100
  double con_l = 0.0;    // (p99 - p1) of L, over the L range 100
  double mu_s = 0.0;     // mean HSV saturation
};

struct UiqmResult {
  double score = 0.0;
  double uicm = 0.0;
  double uism = 0.0;
  double uiconm = 0.0;
};

/// Shannon entropy (bits) of the 256-bin histogram of the luma image.
double entropy(const ImageRGB& img);

UciqeResult uciqe(const ImageRGB& img, const MetricWeights& w = {});
UiqmResult uiqm(const ImageRGB& img, const MetricWeights& w = {});

// UIQM components; opponent/edge measures operate on the 0..255 scale.
double uicm(const ImageRGB& img);
double uism(const ImageRGB& img);
double uiconm(const ImageRGB& img);

/// Alpha-trimmed mean: drops ceil(alpha_lo*n) smallest and floor(alpha_hi*n)
/// largest samples.
double trimmed_mean(std::span<const double> values, double alpha_lo, double alpha_hi);

/// 10 log10(1 / MSE) over all channels; +infinity for identical images.
double psnr(const ImageRGB& a, const ImageRGB& b);

}  // namespace uwkit
