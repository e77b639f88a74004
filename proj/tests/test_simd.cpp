#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/priors.hpp"
#include "uwkit/simd/row_ops.hpp"

using namespace uwkit;
namespace simd = uwkit::simd;

namespace {

std::vector<double> random_row(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("UWKIT_SIMD=scalar selects the scalar backend") {
  const char* env = std::getenv("UWKIT_SIMD");
  if (env != nullptr && std::string(env) == "scalar")
    CHECK(simd::active_backend() == simd::Backend::Scalar);
  else if (simd::backend_available(simd::Backend::Avx2))
    CHECK(simd::active_backend() == simd::Backend::Avx2);
}

TEST_CASE("scalar backend is always available") {
  CHECK(simd::backend_available(simd::Backend::Scalar));
  simd::ScopedBackend scalar(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  CHECK(simd::backend_name(simd::Backend::Scalar) == "scalar");
}

TEST_CASE("AVX2 row primitives reproduce the scalar table bit for bit") {
  if (!simd::backend_available(simd::Backend::Avx2)) {
    MESSAGE("AVX2 backend not available on this machine; equivalence not exercised");
    return;
  }
  const simd::RowOps& s = simd::ops(simd::Backend::Scalar);
  const simd::RowOps& v = simd::ops(simd::Backend::Avx2);
  std::mt19937_64 rng(77);
  for (std::size_t n = 0; n <= 41; ++n) {
    CAPTURE(n);
    const auto a = random_row(rng, n), b = random_row(rng, n), c = random_row(rng, n), d = random_row(rng, n);
    std::vector<double> o1(n), o2(n);

    s.min_rows(a.data(), b.data(), o1.data(), n);
    v.min_rows(a.data(), b.data(), o2.data(), n);
    CHECK(bitwise_equal(o1, o2));
    s.max_rows(a.data(), b.data(), o1.data(), n);
    v.max_rows(a.data(), b.data(), o2.data(), n);
    CHECK(bitwise_equal(o1, o2));

    o1 = a;
    o2 = a;
    s.slide_sum(o1.data(), b.data(), c.data(), n);
    v.slide_sum(o2.data(), b.data(), c.data(), n);
    CHECK(bitwise_equal(o1, o2));

    o1 = a;
    o2 = a;
    s.accumulate(o1.data(), b.data(), n);
    v.accumulate(o2.data(), b.data(), n);
    CHECK(bitwise_equal(o1, o2));

    o1 = a;
    o2 = a;
    s.axpy(o1.data(), 0.3183098861837907, b.data(), n);
    v.axpy(o2.data(), 0.3183098861837907, b.data(), n);
    CHECK(bitwise_equal(o1, o2));

    s.multiply(a.data(), b.data(), o1.data(), n);
    v.multiply(a.data(), b.data(), o2.data(), n);
    CHECK(bitwise_equal(o1, o2));

    std::vector<double> a1(n), b1(n), a2(n), b2(n);
    // Moments with some windows exactly flat to hit the floor branch.
    auto gg = c;
    for (std::size_t i = 0; i < n; ++i) gg[i] = i % 3 == 0 ? a[i] * a[i] : std::fabs(c[i]) + a[i] * a[i];
    for (double eps : {0.0, 1e-3}) {
      s.regression(a.data(), b.data(), gg.data(), d.data(), eps, 1e-12, a1.data(), b1.data(), n);
      v.regression(a.data(), b.data(), gg.data(), d.data(), eps, 1e-12, a2.data(), b2.data(), n);
      CHECK(bitwise_equal(a1, a2));
      CHECK(bitwise_equal(b1, b2));
    }

    s.affine(a.data(), b.data(), c.data(), o1.data(), n);
    v.affine(a.data(), b.data(), c.data(), o2.data(), n);
    CHECK(bitwise_equal(o1, o2));
  }
}

TEST_CASE("min/max rows agree on signed zeros and ties") {
  if (!simd::backend_available(simd::Backend::Avx2)) return;
  const std::vector<double> a = {0.0, -0.0, 1.0, 0.5, -0.0, 0.0, 2.0, 2.0, 3.0};
  const std::vector<double> b = {-0.0, 0.0, 1.0, 0.5, -0.0, -0.0, 1.0, 3.0, 3.0};
  std::vector<double> o1(a.size()), o2(a.size());
  simd::ops(simd::Backend::Scalar).min_rows(a.data(), b.data(), o1.data(), a.size());
  simd::ops(simd::Backend::Avx2).min_rows(a.data(), b.data(), o2.data(), a.size());
  CHECK(bitwise_equal(o1, o2));
  simd::ops(simd::Backend::Scalar).max_rows(a.data(), b.data(), o1.data(), a.size());
  simd::ops(simd::Backend::Avx2).max_rows(a.data(), b.data(), o2.data(), a.size());
  CHECK(bitwise_equal(o1, o2));
}

TEST_CASE("kernels give identical results under both backends") {
  if (!simd::backend_available(simd::Backend::Avx2)) return;
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 6; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 60), h = 5 + static_cast<int>(rng() % 40);
    const ImageRGB img = oracle::random_rgb(rng, w, h);
    const ImageGray g = to_gray(img);
    const PriorConstants consts;
    auto run = [&](simd::Backend b) {
      simd::ScopedBackend scope(b);
      std::vector<ImageGray> out;
      for (int r : {0, 1, 3, 7}) {
        out.push_back(window_min(g, WindowSpec(r)));
        out.push_back(window_max(g, WindowSpec(r)));
        out.push_back(box_filter(g, WindowSpec(r)));
        out.push_back(dark_channel(img, WindowSpec(r)));
        out.push_back(mip_map(img, WindowSpec(r)));
        out.push_back(guided_filter(img.channel(0), g, r, 1e-3));
        out.push_back(guided_filter(g, g, r, 0.0));
      }
      out.push_back(gaussian_blur(g, 2.0));
      out.push_back(blurriness_map(img, consts));
      return out;
    };
    const auto a = run(simd::Backend::Scalar);
    const auto b = run(simd::Backend::Avx2);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CAPTURE(k);
      CHECK(oracle::identical(a[k], b[k]));
    }
  }
}

}  // TEST_SUITE
