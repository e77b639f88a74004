#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "uwkit/background_light.hpp"

using namespace uwkit;

namespace {

bool single_pixel(BlMethod m) {
  return m == BlMethod::DcpBrightest || m == BlMethod::DcpTop01 || m == BlMethod::DcpMipDiff || m == BlMethod::Mip ||
         m == BlMethod::Udcp || m == BlMethod::RcpTop10;
}

void check_close(const Rgb& a, const Rgb& b, double tol) {
  CHECK(std::fabs(a.r - b.r) <= tol);
  CHECK(std::fabs(a.g - b.g) <= tol);
  CHECK(std::fabs(a.b - b.b) <= tol);
}

// Lower half and background (0.2,0.3,0.3); upper-left 4x4 white block;
// optional 4x4 (0.1,0.8,0.9) block near the bottom right.
ImageRGB two_region(bool with_cyan) {
  ImageRGB img(20, 20, Rgb{0.2, 0.3, 0.3});
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) img.set(x, y, Rgb{1, 1, 1});
  if (with_cyan)
    for (int y = 13; y < 17; ++y)
      for (int x = 13; x < 17; ++x) img.set(x, y, Rgb{0.1, 0.8, 0.9});
  return img;
}

}  // namespace

TEST_SUITE("background_light") {

TEST_CASE("method names round trip") {
  for (BlMethod m : kAllBlMethods) CHECK(parse_bl_method(to_string(m)) == m);
  CHECK(to_string(BlMethod::DcpBrightest) == "dcp-bright");
  CHECK(to_string(BlMethod::BlurTop01Avg) == "blur-top01");
  CHECK_THROWS_AS(parse_bl_method("brightest"), Error);
}

TEST_CASE("top set sizes and tie order") {
  CHECK(top_count(10, 0.001) == 1);
  CHECK(top_count(240000, 0.001) == 240);
  CHECK(top_count(1000, 0.10) == 100);
  CHECK(top_count(7, 1.0) == 7);
  const std::vector<double> v = {0.5, 0.9, 0.5, 0.9, 0.1};
  CHECK(top_k_indices(v, 3) == std::vector<std::size_t>{1, 3, 0});
  CHECK(top_k_indices(v, 9).size() == 5);
}

TEST_CASE("constant image gives its own color for every method") {
  const Rgb v{0.35, 0.6, 0.7};
  const ImageRGB img(16, 16, v);
  for (const auto& [m, bl] : rank_bl_candidates(img, WindowSpec(2), PriorConstants{})) {
    CAPTURE(to_string(m));
    CHECK(bl.source == m);
    check_close(bl.color, v, 1e-12);
  }
}

TEST_CASE("dark channel brightest pixel picks the white block") {
  const ImageRGB img = two_region(false);
  const BackgroundLight bl = estimate_background_light(img, BlMethod::DcpBrightest, WindowSpec(1), {});
  CHECK(bl.color == Rgb{1, 1, 1});
  REQUIRE(bl.pixel.has_value());
  CHECK(bl.pixel->x < 4);
  CHECK(bl.pixel->y < 4);

  // brute force: the pixel with the largest naive dark value
  const ImageGray d = oracle::dark(img, 1, {0, 1, 2});
  const auto best = std::max_element(d.pixels().begin(), d.pixels().end()) - d.pixels().begin();
  CHECK(img.pixel(static_cast<std::size_t>(best)) == Rgb{1, 1, 1});
}

TEST_CASE("mip picks the most negative red difference region") {
  const ImageRGB img = two_region(true);
  const BackgroundLight bl = estimate_background_light(img, BlMethod::Mip, WindowSpec(1), {});
  CHECK(bl.color == Rgb{0.1, 0.8, 0.9});
  const ImageGray m = oracle::mip(img, 1);
  const auto best = std::min_element(m.pixels().begin(), m.pixels().end()) - m.pixels().begin();
  CHECK(img.pixel(static_cast<std::size_t>(best)) == Rgb{0.1, 0.8, 0.9});

  const auto ranked = rank_bl_candidates(img, WindowSpec(1), {});
  CHECK(ranked[0].second.color == Rgb{1, 1, 1});
  CHECK(ranked[3].second.color == Rgb{0.1, 0.8, 0.9});
  CHECK(ranked[0].second.color != ranked[3].second.color);
}

TEST_CASE("candidate list covers every method in enum order") {
  std::mt19937_64 rng(12);
  const ImageRGB img = oracle::random_rgb(rng, 30, 25);
  const auto ranked = rank_bl_candidates(img, WindowSpec(3), {});
  REQUIRE(ranked.size() == std::size(kAllBlMethods));
  for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(ranked[i].first == kAllBlMethods[i]);
}

TEST_CASE("selected colors exist in the image; averages stay in the hull") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 6; ++trial) {
    const ImageRGB img = oracle::random_rgb(rng, 31, 27, trial % 2 ? 255 : 0);
    Rgb lo{1, 1, 1}, hi{0, 0, 0};
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
      for (int c = 0; c < 3; ++c) {
        lo[c] = std::min(lo[c], img.pixel(i)[c]);
        hi[c] = std::max(hi[c], img.pixel(i)[c]);
      }
    for (const auto& [m, bl] : rank_bl_candidates(img, WindowSpec(trial % 3 + 1), {})) {
      CAPTURE(to_string(m));
      if (single_pixel(m)) {
        REQUIRE(bl.pixel.has_value());
        CHECK(img.pixel(bl.pixel->x, bl.pixel->y) == bl.color);
      } else {
        for (int c = 0; c < 3; ++c) {
          CHECK(bl.color[c] >= lo[c] - 1e-12);
          CHECK(bl.color[c] <= hi[c] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("with a zero radius every method ignores pixel positions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int w = 40, h = 30;
    const ImageRGB img = oracle::random_rgb(rng, w, h);
    std::vector<std::size_t> perm(img.pixel_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ImageRGB shuffled(w, h);
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled.set(i, img.pixel(perm[i]));
    const auto a = rank_bl_candidates(img, WindowSpec(0), {});
    const auto b = rank_bl_candidates(shuffled, WindowSpec(0), {});
    for (std::size_t k = 0; k < a.size(); ++k) {
      CAPTURE(to_string(a[k].first));
      check_close(a[k].second.color, b[k].second.color, 1e-12);
    }
  }
}

TEST_CASE("a full top set reduces to the brightest pixel") {
  std::mt19937_64 rng(19);
  const ImageRGB img = oracle::random_rgb(rng, 21, 17);
  const ImageGray score = oracle::random_gray(rng, 21, 17);
  const std::size_t pick = brightest_of_top(img, score, 1.0);
  std::size_t best = 0;
  for (std::size_t i = 1; i < img.pixel_count(); ++i) {
    const Rgb p = img.pixel(i), q = img.pixel(best);
    if (p.r + p.g + p.b > q.r + q.g + q.b) best = i;
  }
  CHECK(pick == best);
}

TEST_CASE("dark-channel difference mode of the red-gap estimator") {
  PriorConstants consts;
  consts.dcp_mip_mode = DcpMipMode::DarkChannelDifference;
  const ImageRGB img = two_region(true);
  const BackgroundLight bl = estimate_background_light(img, BlMethod::DcpMipDiff, WindowSpec(1), consts);
  CHECK(bl.color == Rgb{0.1, 0.8, 0.9});
}

TEST_CASE("ulap background light averages the farthest pixels") {
  ImageRGB img(10, 10, Rgb{0.5, 0.5, 0.5});
  ImageGray d(10, 10, 0.0);
  d.at(7, 3) = 1.0;
  img.set(7, 3, Rgb{0.1, 0.7, 0.8});
  CHECK(ulap_background_light(img, DepthMap(d)).color == Rgb{0.1, 0.7, 0.8});
}

TEST_CASE("images smaller than one window are rejected") {
  const ImageRGB img(6, 20, Rgb{0.5, 0.5, 0.5});
  CHECK_THROWS_AS(estimate_background_light(img, BlMethod::Mip, WindowSpec(3), {}), Error);
  CHECK_NOTHROW(estimate_background_light(img, BlMethod::Mip, WindowSpec(2), {}));
  CHECK_THROWS_AS(rank_bl_candidates(img, WindowSpec(7), {}), Error);
}

}  // TEST_SUITE
