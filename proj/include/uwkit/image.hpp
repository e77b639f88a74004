#pragma once

// Planar double-precision image containers shared by every module.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  double operator[](int c) const { return c == 0 ? r : (c == 1 ? g : b); }
  double& operator[](int c) { return c == 0 ? r : (c == 1 ? g : b); }
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Single-channel plane. Values are usually in [0,1] but signed maps
/// (e.g. the MIP difference) reuse the same container.
class ImageGray {
 public:
  ImageGray() = default;
  ImageGray(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[index(x, y)]; }
  double at(int x, int y) const { return data_[index(x, y)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const double> row(int y) const {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<double> pixels() & { return data_; }
  std::span<const double> pixels() const& { return data_; }
  // a span into a temporary would dangle
  void pixels() && = delete;

  bool same_shape(const ImageGray& o) const { return width_ == o.width_ && height_ == o.height_; }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Three planes (R, G, B). Linear intensities in [0,1].
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(int width, int height, Rgb fill = {});
  ImageRGB(ImageGray r, ImageGray g, ImageGray b);

  int width() const { return planes_[0].width(); }
  int height() const { return planes_[0].height(); }
  std::size_t pixel_count() const { return planes_[0].size(); }
  bool empty() const { return planes_[0].empty(); }

  ImageGray& channel(int c) { return planes_[static_cast<std::size_t>(c)]; }
  const ImageGray& channel(int c) const { return planes_[static_cast<std::size_t>(c)]; }

  Rgb pixel(std::size_t i) const { return {planes_[0][i], planes_[1][i], planes_[2][i]}; }
  Rgb pixel(int x, int y) const { return {planes_[0].at(x, y), planes_[1].at(x, y), planes_[2].at(x, y)}; }
  void set(std::size_t i, Rgb v) {
    planes_[0][i] = v.r;
    planes_[1][i] = v.g;
    planes_[2][i] = v.b;
  }
  void set(int x, int y, Rgb v) {
    planes_[0].at(x, y) = v.r;
    planes_[1].at(x, y) = v.g;
    planes_[2].at(x, y) = v.b;
  }

  bool same_shape(const ImageRGB& o) const { return planes_[0].same_shape(o.planes_[0]); }
  bool same_shape(const ImageGray& o) const { return planes_[0].same_shape(o); }

 private:
  std::array<ImageGray, 3> planes_;
};

/// Square (2r+1)x(2r+1) window centred on each pixel; borders replicate.
struct WindowSpec {
  int radius = 7;

  constexpr WindowSpec() = default;
  constexpr explicit WindowSpec(int r) : radius(r) {
    if (r < 0) throw std::invalid_argument("window radius must be >= 0");
  }
  constexpr int side() const { return 2 * radius + 1; }
};

// Validation helpers. Throw uwkit::Error with `what` in the message.
void require_valid(const ImageRGB& img, const char* what);
void require_same_shape(const ImageGray& a, const ImageGray& b, const char* what);
void require_same_shape(const ImageRGB& a, const ImageGray& b, const char* what);
void require_same_shape(const ImageRGB& a, const ImageRGB& b, const char* what);
bool is_valid(const ImageRGB& img);
bool is_constant(const ImageRGB& img);
bool is_constant(const ImageGray& img);

/// Rec.601 luma, used wherever a single gray plane is needed.
ImageGray to_gray(const ImageRGB& img);
inline double luma(const Rgb& p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

ImageGray clamp01(ImageGray img);
ImageRGB clamp01(ImageRGB img);

/// Snap every value to the nearest 8-bit level (round(v*255)/255).
ImageRGB quantize8(ImageRGB img);

inline int replicate_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace uwkit
