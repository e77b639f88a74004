#include "uwkit/image.hpp"

#include <algorithm>
#include <cmath>

namespace uwkit {

ImageGray::ImageGray(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error("image dimensions must be >= 1");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImageRGB::ImageRGB(int width, int height, Rgb fill)
    : planes_{ImageGray(width, height, fill.r), ImageGray(width, height, fill.g), ImageGray(width, height, fill.b)} {}

ImageRGB::ImageRGB(ImageGray r, ImageGray g, ImageGray b) : planes_{std::move(r), std::move(g), std::move(b)} {
  if (!planes_[0].same_shape(planes_[1]) || !planes_[0].same_shape(planes_[2]))
    throw Error("channel planes differ in size");
}

bool is_valid(const ImageRGB& img) {
  if (img.empty()) return false;
  for (int c = 0; c < 3; ++c)
    for (double v : img.channel(c).pixels())
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) return false;
  return true;
}

void require_valid(const ImageRGB& img, const char* what) {
  if (img.empty()) throw Error(std::string(what) + ": empty image");
  if (!is_valid(img)) throw Error(std::string(what) + ": pixel values must be finite and within [0,1]");
}

void require_same_shape(const ImageGray& a, const ImageGray& b, const char* what) {
  if (!a.same_shape(b)) throw Error(std::string(what) + ": dimension mismatch");
}
void require_same_shape(const ImageRGB& a, const ImageGray& b, const char* what) {
  if (!a.same_shape(b)) throw Error(std::string(what) + ": dimension mismatch");
}
void require_same_shape(const ImageRGB& a, const ImageRGB& b, const char* what) {
  if (!a.same_shape(b)) throw Error(std::string(what) + ": dimension mismatch");
}

bool is_constant(const ImageGray& img) {
  auto px = img.pixels();
  return std::all_of(px.begin(), px.end(), [&](double v) { return v == px.front(); });
}

bool is_constant(const ImageRGB& img) {
  return is_constant(img.channel(0)) && is_constant(img.channel(1)) && is_constant(img.channel(2));
}

ImageGray to_gray(const ImageRGB& img) {
  ImageGray out(img.width(), img.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = luma(img.pixel(i));
  return out;
}

ImageGray clamp01(ImageGray img) {
  for (double& v : img.pixels()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

ImageRGB clamp01(ImageRGB img) {
  for (int c = 0; c < 3; ++c) img.channel(c) = clamp01(std::move(img.channel(c)));
  return img;
}

ImageRGB quantize8(ImageRGB img) {
  for (int c = 0; c < 3; ++c)
    for (double& v : img.channel(c).pixels()) v = std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
  return img;
}

}  // namespace uwkit
