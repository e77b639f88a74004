#pragma once

// Sliding-window and filtering kernels. All windows are square with
// replicate-edge borders; see WindowSpec.

#include <vector>

#include "uwkit/image.hpp"

namespace uwkit {

/// Windowed minimum / maximum. Separable van Herk / Gil-Werman passes:
/// about three comparisons per pixel per pass, independent of the radius.
ImageGray window_min(const ImageGray& img, WindowSpec win);
ImageGray window_max(const ImageGray& img, WindowSpec win);

/// Windowed median (the middle order statistic of the (2r+1)^2 samples,
/// replicated border samples included). Values are rank-compressed and a
/// sliding histogram over the ranks is maintained, so the result is an
/// exact sample value. On 8-bit-origin data this is the classic 256-bin
/// sliding histogram.
ImageGray window_median(const ImageGray& img, WindowSpec win);

/// Windowed mean via running sums.
ImageGray box_filter(const ImageGray& img, WindowSpec win);

/// Separable Gaussian blur with standard deviation `sigma`, truncated at
/// ceil(3*sigma). sigma <= 0 returns the input.
ImageGray gaussian_blur(const ImageGray& img, double sigma);

struct GuidedFilterParams {
  int radius = 20;
  double eps = 1e-3;
};

/// Edge-preserving smoothing of `p` by per-window linear regression on
/// `guide`: a = cov(guide,p)/(var(guide)+eps), b = mean(p) - a*mean(guide),
/// q = mean(a)*guide + mean(b). Windows whose var+eps is numerically zero
/// get a = 0.
ImageGray guided_filter(const ImageGray& p, const ImageGray& guide, int radius, double eps);
inline ImageGray guided_filter(const ImageGray& p, const ImageGray& guide, GuidedFilterParams params) {
  return guided_filter(p, guide, params.radius, params.eps);
}

/// Bilinear resampling on pixel centres, edges clamped.
ImageGray resize_bilinear(const ImageGray& img, int width, int height);
ImageRGB resize_bilinear(const ImageRGB& img, int width, int height);

/// 3x3 Sobel gradient magnitude, replicate borders.
ImageGray sobel_magnitude(const ImageGray& img);
/// 4-neighbour Laplacian, replicate borders.
ImageGray laplacian(const ImageGray& img);

// Pyramids: 5-tap binomial (1 4 6 4 1)/16 reduce/expand, sizes halve with
// ceiling rounding.
int max_pyramid_levels(int width, int height);
std::vector<ImageGray> gaussian_pyramid(const ImageGray& img, int levels);
std::vector<ImageGray> laplacian_pyramid(const ImageGray& img, int levels);
ImageGray collapse_pyramid(const std::vector<ImageGray>& laplacian);
ImageGray pyramid_reduce(const ImageGray& img);
ImageGray pyramid_expand(const ImageGray& coarse, int width, int height);

/// Min-max normalisation to [0,1]; a flat input returns `degenerate`.
ImageGray normalize_minmax(const ImageGray& img, double degenerate);

}  // namespace uwkit
