#include "uwkit/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace uwkit {
namespace {

// sRGB primaries, D65 (IEC 61966-2-1).
constexpr double kRgbToXyz[3][3] = {{0.4124564, 0.3575761, 0.1804375},
                                    {0.2126729, 0.7151522, 0.0721750},
                                    {0.0193339, 0.1191920, 0.9503041}};

using Matrix3 = std::array<std::array<double, 3>, 3>;

constexpr Matrix3 invert(const double (&m)[3][3]) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Matrix3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

// Exact inverse of the forward matrix so Lab round trips stay tight.
constexpr Matrix3 kXyzToRgb = invert(kRgbToXyz);
// D65 white as the image of RGB (1,1,1), so white maps to a = b = 0.
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }
double lab_f_inv(double f) {
  const double f3 = f * f * f;
  return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

double wrap_degrees(double h) {
  h = std::fmod(h, 360.0);
  return h < 0.0 ? h + 360.0 : h;
}

}  // namespace

double srgb_to_linear(double v) { return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4); }
double linear_to_srgb(double v) {
  return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

Triple rgb_to_hsv(Rgb p) {
  const double mx = std::max({p.r, p.g, p.b});
  const double mn = std::min({p.r, p.g, p.b});
  const double delta = mx - mn;
  Triple out{0.0, mx > 0.0 ? delta / mx : 0.0, mx};
  if (delta <= 0.0) return out;
  double h;
  if (mx == p.r)
    h = 60.0 * ((p.g - p.b) / delta);
  else if (mx == p.g)
    h = 60.0 * ((p.b - p.r) / delta + 2.0);
  else
    h = 60.0 * ((p.r - p.g) / delta + 4.0);
  out.x = wrap_degrees(h);
  return out;
}

Rgb hsv_to_rgb(Triple hsv) {
  const double h = wrap_degrees(hsv.x) / 60.0;
  const double s = hsv.y;
  const double v = hsv.z;
  const double c = v * s;
  const double x = c * (1.0 - std::fabs(std::fmod(h, 2.0) - 1.0));
  const double m = v - c;
  Rgb out;
  switch (static_cast<int>(h) % 6) {
    case 0: out = {c, x, 0}; break;
    case 1: out = {x, c, 0}; break;
    case 2: out = {0, c, x}; break;
    case 3: out = {0, x, c}; break;
    case 4: out = {x, 0, c}; break;
    default: out = {c, 0, x}; break;
  }
  return {out.r + m, out.g + m, out.b + m};
}

Triple rgb_to_hsi(Rgb p) {
  const double sum = p.r + p.g + p.b;
  const double i = sum / 3.0;
  const double mn = std::min({p.r, p.g, p.b});
  const double s = i > 0.0 ? 1.0 - mn / i : 0.0;
  const double num = 0.5 * ((p.r - p.g) + (p.r - p.b));
  const double den = std::sqrt((p.r - p.g) * (p.r - p.g) + (p.r - p.b) * (p.g - p.b));
  double h = 0.0;
  if (den > 0.0) {
    h = std::acos(std::clamp(num / den, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    if (p.b > p.g) h = 360.0 - h;
  }
  return {wrap_degrees(h), s, i};
}

Rgb hsi_to_rgb(Triple hsi) {
  const double h = wrap_degrees(hsi.x);
  const double s = hsi.y;
  const double i = hsi.z;
  constexpr double kDeg = std::numbers::pi / 180.0;
  auto sector = [&](double hh) {
    const double a = i * (1.0 - s);
    const double b = i * (1.0 + s * std::cos(hh * kDeg) / std::cos((60.0 - hh) * kDeg));
    const double c = 3.0 * i - (a + b);
    return Triple{a, b, c};
  };
  if (h < 120.0) {
    const Triple t = sector(h);
    return {t.y, t.z, t.x};
  }
  if (h < 240.0) {
    const Triple t = sector(h - 120.0);
    return {t.x, t.y, t.z};
  }
  const Triple t = sector(h - 240.0);
  return {t.z, t.x, t.y};
}

Triple rgb_to_lab(Rgb p) {
  if (p.r == p.g && p.g == p.b) {
    // Achromatic: X/Xn = Y = Z/Zn exactly, so a = b = 0 without rounding.
    const double f = lab_f(srgb_to_linear(p.r));
    return {116.0 * f - 16.0, 0.0, 0.0};
  }
  const double lin[3] = {srgb_to_linear(p.r), srgb_to_linear(p.g), srgb_to_linear(p.b)};
  double xyz[3];
  for (int k = 0; k < 3; ++k) xyz[k] = kRgbToXyz[k][0] * lin[0] + kRgbToXyz[k][1] * lin[1] + kRgbToXyz[k][2] * lin[2];
  const double fx = lab_f(xyz[0] / kWhiteX);
  const double fy = lab_f(xyz[1]);
  const double fz = lab_f(xyz[2] / kWhiteZ);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Rgb lab_to_rgb(Triple lab) {
  const double fy = (lab.x + 16.0) / 116.0;
  if (lab.y == 0.0 && lab.z == 0.0) {
    const double v = linear_to_srgb(lab_f_inv(fy));
    return {v, v, v};
  }
  const double fx = fy + lab.y / 500.0;
  const double fz = fy - lab.z / 200.0;
  const double xyz[3] = {lab_f_inv(fx) * kWhiteX, lab_f_inv(fy), lab_f_inv(fz) * kWhiteZ};
  double rgb[3];
  for (int k = 0; k < 3; ++k) {
    const double lin = kXyzToRgb[k][0] * xyz[0] + kXyzToRgb[k][1] * xyz[1] + kXyzToRgb[k][2] * xyz[2];
    rgb[k] = linear_to_srgb(std::max(lin, 0.0));
  }
  return {rgb[0], rgb[1], rgb[2]};
}

ColorPlanes convert_color(const ImageRGB& img, ColorSpace target) {
  ColorPlanes out{ImageGray(img.width(), img.height()), ImageGray(img.width(), img.height()),
                  ImageGray(img.width(), img.height())};
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const Rgb p = img.pixel(i);
    const Triple t = target == ColorSpace::Hsv ? rgb_to_hsv(p) : target == ColorSpace::Hsi ? rgb_to_hsi(p) : rgb_to_lab(p);
    out.x[i] = t.x;
    out.y[i] = t.y;
    out.z[i] = t.z;
  }
  return out;
}

ImageRGB convert_to_rgb(const ColorPlanes& planes, ColorSpace source) {
  ImageRGB out(planes.x.width(), planes.x.height());
  for (std::size_t i = 0; i < planes.x.size(); ++i) {
    const Triple t{planes.x[i], planes.y[i], planes.z[i]};
    const Rgb p = source == ColorSpace::Hsv ? hsv_to_rgb(t) : source == ColorSpace::Hsi ? hsi_to_rgb(t) : lab_to_rgb(t);
    out.set(i, {std::clamp(p.r, 0.0, 1.0), std::clamp(p.g, 0.0, 1.0), std::clamp(p.b, 0.0, 1.0)});
  }
  return out;
}

}  // namespace uwkit
