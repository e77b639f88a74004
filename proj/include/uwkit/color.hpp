#pragma once

// Color-space conversions. Inputs are treated as sRGB-encoded values in
// [0,1]; Lab uses the D65 white point.
//
//   HSV: h in degrees [0,360), s and v in [0,1]; achromatic pixels get h = 0.
//   HSI: h in degrees [0,360), s and i in [0,1]; i = (r+g+b)/3.
//   Lab: L in [0,100], a/b unbounded (roughly [-128,128]).

#include "uwkit/image.hpp"

namespace uwkit {

struct Triple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class ColorSpace { Hsv, Hsi, Lab };

Triple rgb_to_hsv(Rgb p);
Rgb hsv_to_rgb(Triple hsv);
Triple rgb_to_hsi(Rgb p);
Rgb hsi_to_rgb(Triple hsi);
Triple rgb_to_lab(Rgb p);
Rgb lab_to_rgb(Triple lab);

double srgb_to_linear(double v);
double linear_to_srgb(double v);

/// Whole-image conversion into three planes (x, y, z) of the target space.
struct ColorPlanes {
  ImageGray x, y, z;
};
ColorPlanes convert_color(const ImageRGB& img, ColorSpace target);
/// Inverse conversion; the result is clamped to [0,1].
ImageRGB convert_to_rgb(const ColorPlanes& planes, ColorSpace source);

}  // namespace uwkit
