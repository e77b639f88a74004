#pragma once

// Prior maps computed from a single underwater image: dark channels, the
// maximum-intensity difference, the red-inverted dark channel, and the two
// depth cues (blurriness and the linear attenuation model).

#include <array>
#include <vector>

#include "uwkit/image.hpp"
#include "uwkit/kernels.hpp"

namespace uwkit {

enum class MipShift {
  Max,  // s = 1 - max MIP: the closest point maps to t = 1
  Min,  // s = 1 - min MIP, as printed in the survey table
};

enum class DcpMipMode {
  TopDarkDifference,   // top 0.1% dark-channel pixels, max(B-G, G-R)
  DarkChannelDifference,  // argmin of red dark channel minus max G/B dark channel
};

/// Physical and heuristic constants shared by the prior-based estimators.
/// Defaults and their provenance are documented in config/uwkit.conf.
struct PriorConstants {
  std::array<double, 3> ulap_coeffs{0.53214829, 0.51309827, -0.91066194};
  std::array<double, 3> nrer{0.83, 0.95, 0.97};
  // Attenuation ratio model beta_c / beta_r = B_r (m*lambda_c + i) / (B_c (m*lambda_r + i)).
  double atten_m = -0.00113;
  double atten_i = 1.62517;
  std::array<double, 3> wavelengths_nm{620.0, 540.0, 450.0};
  double rcp_lambda = 0.5;
  std::vector<double> blur_scales{2.0, 4.0, 8.0, 16.0};
  int blur_closing_radius = 7;
  GuidedFilterParams blur_refine{};
  // Sigmoid selectors of the blurriness/absorption depth blend.
  double ibla_theta_a_gain = 32.0;
  double ibla_theta_a_center = 0.5;
  double ibla_theta_b_gain = 32.0;
  double ibla_theta_b_center = 0.1;
  MipShift mip_shift = MipShift::Max;
  DcpMipMode dcp_mip_mode = DcpMipMode::TopDarkDifference;

  /// Throws uwkit::Error when an invariant is violated.
  void validate() const;
};

/// Relative scene depth in [0,1], 1 = farthest.
class DepthMap {
 public:
  DepthMap() = default;
  explicit DepthMap(ImageGray depth);
  const ImageGray& values() const { return depth_; }
  int width() const { return depth_.width(); }
  int height() const { return depth_.height(); }

 private:
  ImageGray depth_;
};

/// min over the window and over R, G, B.
ImageGray dark_channel(const ImageRGB& img, WindowSpec win);
/// min over the window and over G, B only.
ImageGray underwater_dark_channel(const ImageRGB& img, WindowSpec win);
/// window max of R minus window max over G and B; range [-1,1].
ImageGray mip_map(const ImageRGB& img, WindowSpec win);
/// min over the window of min(1-R, G, B).
ImageGray red_inverted_dark(const ImageRGB& img, WindowSpec win);

/// Per-pixel channel minimum (no window).
ImageGray channel_min(const ImageRGB& img);

/// Mean over scales of |gray - Gaussian_r(gray)|, min-max normalised
/// (flat maps become 0). No morphology or smoothing.
ImageGray blurriness_raw(const ImageRGB& img, const std::vector<double>& scales);
/// blurriness_raw, hole-filled by grayscale closing, guided-filter smoothed
/// against the gray image, clamped to [0,1].
ImageGray blurriness_map(const ImageRGB& img, const PriorConstants& consts);

/// mu0 + mu1*max(G,B) + mu2*R, min-max normalised (flat maps become 0.5).
DepthMap ulap_depth(const ImageRGB& img, const PriorConstants& consts);

}  // namespace uwkit
