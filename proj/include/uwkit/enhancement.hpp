#pragma once

// Model-free enhancers: histogram equalisation and its contrast-limited
// adaptive form, colour-model stretching (ICM/UCM), Rayleigh histogram
// matching, relative global histogram stretching, and two-input
// multi-scale fusion.
//
// Every enhancer returns a constant image unchanged.

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include "uwkit/image.hpp"

namespace uwkit {

enum class EnhanceMethod { He, Clahe, Icm, Ucm, Rayleigh, Rghs, Fusion };

inline constexpr EnhanceMethod kAllEnhanceMethods[] = {EnhanceMethod::He,       EnhanceMethod::Clahe,
                                                       EnhanceMethod::Icm,      EnhanceMethod::Ucm,
                                                       EnhanceMethod::Rayleigh, EnhanceMethod::Rghs,
                                                       EnhanceMethod::Fusion};

std::string_view to_string(EnhanceMethod m);
EnhanceMethod parse_enhance_method(std::string_view name);

struct ClaheParams {
  double clip = 2.0;  // relative to the mean bin count; +inf disables clipping
  int tiles_x = 8;
  int tiles_y = 8;
  bool rgb_mode = false;  // false: equalise HSV value only
};

struct FusionParams {
  int levels = 5;
  bool use_contrast = true;
  bool use_saliency = true;
  bool use_exposedness = true;
  bool bypass_second_input = false;  // second input := first input
};

struct EnhanceParams {
  ClaheParams clahe{};
  double stretch_percentile = 0.2;  // percent per tail, icm/ucm
  double ucm_range_threshold = 0.9;
  double rayleigh_sigma = 0.4;
  double rghs_tail = 0.1;  // percent per tail
  std::array<double, 3> rghs_expansion{0.85, 0.95, 0.95};
  double rghs_chroma_gain = 0.3;
  FusionParams fusion{};

  void validate() const;
};

ImageRGB he(const ImageRGB& img);
ImageRGB clahe(const ImageRGB& img, const ClaheParams& params);
ImageRGB icm(const ImageRGB& img, double percentile);
ImageRGB ucm(const ImageRGB& img, double percentile, double range_threshold = 0.9);
ImageRGB rayleigh_stretch(const ImageRGB& img, double sigma);
ImageRGB rghs(const ImageRGB& img, const EnhanceParams& params);
ImageRGB fusion_enhance(const ImageRGB& img, const EnhanceParams& params);

ImageRGB enhance(const ImageRGB& img, EnhanceMethod method, const EnhanceParams& params = {});

// Building blocks, exposed for inspection and testing.

/// 256-level equalisation of one plane; single-level planes are unchanged.
ImageGray equalize_plane(const ImageGray& plane);
/// Contrast-limited adaptive equalisation of one plane in [0,1].
ImageGray clahe_plane(const ImageGray& plane, const ClaheParams& params);
/// Affine map of the pct / (100-pct) percentiles to [0,1], clamped.
/// Planes with a flat percentile range are unchanged.
ImageGray stretch_plane(const ImageGray& plane, double pct);
/// stretch_plane on each of R, G, B.
ImageRGB stretch_channels(const ImageRGB& img, double pct);
/// Stretch S and I in HSI and convert back.
ImageRGB stretch_hsi(const ImageRGB& img, double pct);
/// Von Kries gains that lift each channel mean to the largest channel mean.
std::array<double, 3> von_kries_gains(const ImageRGB& img);
/// Gray-world balance of all three channels (gain = gray mean / channel mean).
ImageRGB gray_world(const ImageRGB& img);
/// Gray-world balance of G and B toward their common mean (R untouched).
ImageRGB gray_world_gb(const ImageRGB& img);
/// Per-channel stretch with percentile input bounds and relative output bounds.
ImageRGB relative_stretch(const ImageRGB& img, double tail_pct, const std::array<double, 3>& expansion);

/// Normalised per-pixel weights of the two fusion inputs (sum to 1).
std::array<ImageGray, 2> fusion_weights(const ImageRGB& first, const ImageRGB& second, const FusionParams& params);

}  // namespace uwkit
