#include <doctest.h>

#include <png.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "uwkit/color.hpp"
#include "uwkit/io.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/stats.hpp"

using namespace uwkit;

namespace {

std::filesystem::path temp_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "uwkit_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Writes raw 8-bit RGB through libpng directly, bypassing save_image.
void write_png_bytes(const std::filesystem::path& path, int w, int h, const std::vector<std::uint8_t>& rgb) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = PNG_FORMAT_RGB;
  REQUIRE(png_image_write_to_file(&image, path.c_str(), 0, rgb.data(), 0, nullptr));
}

std::vector<std::uint8_t> read_png_bytes(const std::filesystem::path& path, int& w, int& h) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  REQUIRE(png_image_begin_read_from_file(&image, path.c_str()));
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  REQUIRE(png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr));
  w = static_cast<int>(image.width);
  h = static_cast<int>(image.height);
  return buf;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("image containers validate their shape") {
  CHECK_THROWS_AS(ImageGray(0, 3), Error);
  CHECK_THROWS_AS(ImageRGB(3, -1), Error);
  CHECK_THROWS(WindowSpec(-1));
  CHECK(WindowSpec(7).side() == 15);
  ImageRGB img(2, 2, Rgb{0.1, 0.2, 0.3});
  CHECK(img.pixel(1, 1) == Rgb{0.1, 0.2, 0.3});
  CHECK(is_constant(img));
  img.set(0, 0, Rgb{0.1, 0.2, 0.4});
  CHECK_FALSE(is_constant(img));
  ImageRGB bad(1, 1, Rgb{1.5, 0, 0});
  CHECK_FALSE(is_valid(bad));
  CHECK_THROWS_AS(require_valid(bad, "x"), Error);
  ImageRGB nan_img(1, 1, Rgb{std::nan(""), 0, 0});
  CHECK_FALSE(is_valid(nan_img));
}

TEST_CASE("load_image maps 8-bit samples by v/255") {
  const auto dir = temp_dir("load");
  write_png_bytes(dir / "px.png", 1, 1, {255, 0, 128});
  const ImageRGB one = load_image(dir / "px.png");
  REQUIRE(one.width() == 1);
  CHECK(one.pixel(0) == Rgb{1.0, 0.0, 128.0 / 255.0});

  write_png_bytes(dir / "black.png", 2, 2, std::vector<std::uint8_t>(12, 0));
  const ImageRGB black = load_image(dir / "black.png");
  CHECK(black.width() == 2);
  CHECK(black.height() == 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(black.pixel(i) == Rgb{0, 0, 0});

  CHECK_THROWS_AS(load_image(dir / "missing.png"), Error);
  {
    std::ofstream junk(dir / "junk.png");
    junk << "not an image";
  }
  CHECK_THROWS_AS(load_image(dir / "junk.png"), Error);
}

TEST_CASE("save_image quantizes with round half up") {
  const auto dir = temp_dir("save");
  ImageRGB img(2, 1);
  img.set(0, 0, Rgb{1.0, 1.0, 1.0});
  img.set(1, 0, Rgb{0.5, 0.5, 0.5});
  save_image(img, dir / "q.png");
  int w = 0, h = 0;
  const auto bytes = read_png_bytes(dir / "q.png", w, h);
  CHECK(bytes == std::vector<std::uint8_t>{255, 255, 255, 128, 128, 128});
  CHECK(to_byte(-0.2) == 0);
  CHECK(to_byte(1.7) == 255);
}

TEST_CASE("8-bit round trip is bitwise for PNG") {
  const auto dir = temp_dir("roundtrip");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(0, 255);
  std::vector<std::uint8_t> bytes(16 * 16 * 3);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(u(rng));
  write_png_bytes(dir / "a.png", 16, 16, bytes);
  save_image(load_image(dir / "a.png"), dir / "b.png");
  int w = 0, h = 0;
  CHECK(read_png_bytes(dir / "b.png", w, h) == bytes);

  const ImageRGB img = oracle::random_rgb(rng, 16, 16, 255);
  save_image(img, dir / "c.png");
  CHECK(oracle::max_abs_diff(load_image(dir / "c.png"), img) == 0.0);
}

TEST_CASE("JPEG files load through signature sniffing") {
  const auto dir = temp_dir("jpeg");
  ImageRGB img(8, 8, Rgb{0.4, 0.5, 0.6});
  save_image(img, dir / "x.jpg");
  std::filesystem::copy_file(dir / "x.jpg", dir / "renamed.png");
  const ImageRGB back = load_image(dir / "renamed.png");
  CHECK(oracle::max_abs_diff(back, img) <= 3.0 / 255.0);
}

TEST_CASE("resize_bilinear") {
  ImageRGB c(5, 4, Rgb{0.25, 0.5, 0.75});
  const ImageRGB big = resize_bilinear(c, 13, 7);
  CHECK(big.width() == 13);
  CHECK(big.height() == 7);
  for (std::size_t i = 0; i < big.pixel_count(); ++i) {
    CHECK(big.pixel(i).r == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(big.pixel(i).b == doctest::Approx(0.75).epsilon(1e-12));
  }

  std::mt19937_64 rng(3);
  const ImageGray g = oracle::random_gray(rng, 9, 6);
  CHECK(oracle::max_abs_diff(resize_bilinear(g, 9, 6), g) <= 1e-6);

  ImageGray checker(2, 2);
  checker.at(0, 0) = 0;
  checker.at(1, 0) = 1;
  checker.at(0, 1) = 1;
  checker.at(1, 1) = 0;
  const ImageGray r = resize_bilinear(checker, 3, 3);
  CHECK(r.at(1, 1) == doctest::Approx(0.5));
  CHECK_THROWS(resize_bilinear(checker, 0, 3));
}

TEST_CASE("color conversions") {
  const Triple white = rgb_to_lab({1, 1, 1});
  CHECK(white.x == doctest::Approx(100.0).epsilon(1e-5));
  CHECK(std::fabs(white.y) < 1e-3);
  CHECK(std::fabs(white.z) < 1e-3);

  const Triple hsv = rgb_to_hsv({0.5, 0.5, 0.5});
  CHECK(hsv.x == 0.0);
  CHECK(hsv.y == 0.0);
  CHECK(hsv.z == 0.5);

  const Triple gray_lab = rgb_to_lab({0.3, 0.3, 0.3});
  CHECK(gray_lab.y == 0.0);
  CHECK(gray_lab.z == 0.0);

  const Triple red = rgb_to_hsv({1, 0, 0});
  CHECK(red.x == 0.0);
  CHECK(red.y == 1.0);
  CHECK(rgb_to_hsv({0, 1, 0}).x == doctest::Approx(120.0));
  CHECK(rgb_to_hsv({0, 0, 1}).x == doctest::Approx(240.0));
  CHECK(rgb_to_hsi({0.2, 0.4, 0.6}).z == doctest::Approx(0.4));

  CHECK(srgb_to_linear(linear_to_srgb(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("color round trips on a 1000-sample grid") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double err_lab = 0, err_hsv = 0, err_hsi = 0;
  for (int k = 0; k < 1000; ++k) {
    const Rgb p{u(rng), u(rng), u(rng)};
    auto dist = [](Rgb a, Rgb b) {
      return std::max({std::fabs(a.r - b.r), std::fabs(a.g - b.g), std::fabs(a.b - b.b)});
    };
    err_lab = std::max(err_lab, dist(lab_to_rgb(rgb_to_lab(p)), p));
    err_hsv = std::max(err_hsv, dist(hsv_to_rgb(rgb_to_hsv(p)), p));
    err_hsi = std::max(err_hsi, dist(hsi_to_rgb(rgb_to_hsi(p)), p));
  }
  CHECK(err_lab <= 1e-4);
  CHECK(err_hsv <= 1e-9);
  CHECK(err_hsi <= 1e-9);

  const ImageRGB img = oracle::random_rgb(rng, 10, 10);
  for (ColorSpace cs : {ColorSpace::Hsv, ColorSpace::Hsi, ColorSpace::Lab})
    CHECK(oracle::max_abs_diff(convert_to_rgb(convert_color(img, cs), cs), img) <= 1e-4);
}

TEST_CASE("window min/max examples") {
  ImageGray c(6, 5, 0.5);
  CHECK(oracle::identical(window_min(c, WindowSpec(1)), c));
  CHECK(oracle::identical(window_max(c, WindowSpec(2)), c));

  ImageGray dot(5, 5, 1.0);
  dot.at(2, 2) = 0.0;
  const ImageGray m = window_min(dot, WindowSpec(1));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      const bool centre = x >= 1 && x <= 3 && y >= 1 && y <= 3;
      CHECK(m.at(x, y) == (centre ? 0.0 : 1.0));
    }
}

TEST_CASE("window kernels match the naive oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 20), h = 1 + static_cast<int>(rng() % 20);
    const ImageGray img = oracle::random_gray(rng, w, h, trial % 2 ? 255 : 0);
    for (int r = 0; r <= 3; ++r) {
      CHECK(oracle::identical(window_min(img, WindowSpec(r)), oracle::win_min(img, r)));
      CHECK(oracle::identical(window_max(img, WindowSpec(r)), oracle::win_max(img, r)));
      CHECK(oracle::identical(window_median(img, WindowSpec(r)), oracle::win_median(img, r)));
      CHECK(oracle::max_abs_diff(box_filter(img, WindowSpec(r)), oracle::win_mean(img, r)) <= 1e-12);
    }
  }
}

TEST_CASE("median handles duplicates and radius larger than the image") {
  ImageGray img(3, 2);
  const double v[] = {0.2, 0.2, 0.9, 0.1, 0.2, 0.9};
  for (std::size_t i = 0; i < 6; ++i) img[i] = v[i];
  for (int r : {0, 1, 4, 9}) CHECK(oracle::identical(window_median(img, WindowSpec(r)), oracle::win_median(img, r)));
}

TEST_CASE("window properties: ordering and monotone radius") {
  std::mt19937_64 rng(8);
  const ImageGray img = oracle::random_gray(rng, 17, 13);
  ImageGray prev_min = img, prev_max = img;
  for (int r = 0; r <= 5; ++r) {
    const ImageGray mn = window_min(img, WindowSpec(r));
    const ImageGray mx = window_max(img, WindowSpec(r));
    for (std::size_t i = 0; i < img.size(); ++i) {
      CHECK(mn[i] <= img[i]);
      CHECK(img[i] <= mx[i]);
      CHECK(mn[i] <= prev_min[i]);
      CHECK(mx[i] >= prev_max[i]);
    }
    prev_min = mn;
    prev_max = mx;
  }
}

TEST_CASE("box filter examples") {
  ImageGray c(7, 4, 0.3);
  CHECK(oracle::max_abs_diff(box_filter(c, WindowSpec(2)), c) <= 1e-15);
  ImageGray impulse(5, 5, 0.0);
  impulse.at(2, 2) = 1.0;
  const ImageGray b = box_filter(impulse, WindowSpec(1));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      const bool centre = x >= 1 && x <= 3 && y >= 1 && y <= 3;
      CHECK(b.at(x, y) == doctest::Approx(centre ? 1.0 / 9.0 : 0.0));
    }
}

TEST_CASE("guided filter") {
  std::mt19937_64 rng(31);
  const ImageGray p = oracle::random_gray(rng, 12, 12);
  const ImageGray g = oracle::random_gray(rng, 12, 12);
  for (int r : {1, 2, 4})
    for (double eps : {0.0, 1e-3, 0.1})
      CHECK(oracle::max_abs_diff(guided_filter(p, g, r, eps), oracle::guided(p, g, r, eps)) <= 1e-6);

  CHECK(oracle::max_abs_diff(guided_filter(p, p, 3, 0.0), p) <= 1e-6);

  const ImageGray flat(12, 12, 0.4);
  const ImageGray twice = box_filter(box_filter(p, WindowSpec(2)), WindowSpec(2));
  CHECK(oracle::max_abs_diff(guided_filter(p, flat, 2, 1e-3), twice) <= 1e-12);
  CHECK(oracle::max_abs_diff(guided_filter(flat, g, 5, 1e-3), flat) <= 1e-12);
  CHECK_THROWS(guided_filter(p, ImageGray(3, 3), 1, 0.0));
}

TEST_CASE("gaussian blur") {
  ImageGray c(9, 9, 0.7);
  CHECK(oracle::max_abs_diff(gaussian_blur(c, 2.0), c) <= 1e-12);
  std::mt19937_64 rng(4);
  const ImageGray img = oracle::random_gray(rng, 9, 9);
  CHECK(oracle::identical(gaussian_blur(img, 0.0), img));
  // Blurring lowers variance.
  const ImageGray blurred = gaussian_blur(img, 1.5);
  CHECK(variance(blurred.pixels()) < variance(img.pixels()));
}

TEST_CASE("sobel and laplacian vanish on constants") {
  ImageGray c(6, 6, 0.2);
  CHECK(oracle::max_abs_diff(sobel_magnitude(c), ImageGray(6, 6)) == 0.0);
  CHECK(oracle::max_abs_diff(laplacian(c), ImageGray(6, 6)) == 0.0);
  ImageGray ramp(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) ramp.at(x, y) = 0.1 * x;
  CHECK(sobel_magnitude(ramp).at(3, 3) == doctest::Approx(0.8));
  CHECK(laplacian(ramp).at(3, 3) == doctest::Approx(0.0));
}

TEST_CASE("pyramids") {
  std::mt19937_64 rng(6);
  const ImageGray img = oracle::random_gray(rng, 32, 32);
  for (int levels = 1; levels <= max_pyramid_levels(32, 32); ++levels)
    CHECK(oracle::max_abs_diff(collapse_pyramid(laplacian_pyramid(img, levels)), img) <= 1e-5);

  const auto g1 = gaussian_pyramid(img, 1);
  REQUIRE(g1.size() == 1);
  CHECK(oracle::identical(g1[0], img));
  CHECK(oracle::identical(laplacian_pyramid(img, 1)[0], img));

  const ImageGray flat(20, 12, 0.35);
  const auto lp = laplacian_pyramid(flat, 3);
  for (std::size_t l = 0; l + 1 < lp.size(); ++l)
    CHECK(oracle::max_abs_diff(lp[l], ImageGray(lp[l].width(), lp[l].height())) <= 1e-12);
  const auto gp = gaussian_pyramid(flat, 3);
  CHECK(oracle::max_abs_diff(gp.back(), ImageGray(gp.back().width(), gp.back().height(), 0.35)) <= 1e-12);

  CHECK(gaussian_pyramid(ImageGray(7, 5), 3)[1].width() == 4);
  CHECK_THROWS_AS(gaussian_pyramid(ImageGray(4, 4), 10), Error);
}

TEST_CASE("normalize_minmax and stats") {
  ImageGray flat(3, 3, 0.2);
  CHECK(oracle::identical(normalize_minmax(flat, 0.5), ImageGray(3, 3, 0.5)));
  ImageGray two(2, 1);
  two[0] = -1;
  two[1] = 3;
  const ImageGray n = normalize_minmax(two, 0.0);
  CHECK(n[0] == 0.0);
  CHECK(n[1] == 1.0);

  const std::vector<double> v = {4, 1, 3, 2};
  CHECK(percentile(v, 0) == 1.0);
  CHECK(percentile(v, 100) == 4.0);
  CHECK(percentile(v, 50) == doctest::Approx(2.5));
  CHECK(mean(v) == 2.5);
  CHECK(variance(v) == 1.25);
}

}  // TEST_SUITE
