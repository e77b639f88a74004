// Compiled with -mavx2 (no -mfma). Only reached after a runtime CPU check.

#include "uwkit/simd/row_ops.hpp"

#include <immintrin.h>

namespace uwkit::simd {
namespace {

constexpr std::size_t kLanes = 4;

void min_rows(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void max_rows(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void slide_sum(double* acc, const double* add, const double* sub, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(add + i));
    _mm256_storeu_pd(acc + i, _mm256_sub_pd(s, _mm256_loadu_pd(sub + i)));
  }
  for (; i < n; ++i) acc[i] = (acc[i] + add[i]) - sub[i];
}

void accumulate(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) acc[i] += x[i];
}

void axpy(double* acc, double w, const double* x, std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(vw, _mm256_loadu_pd(x + i))));
  for (; i < n; ++i) acc[i] = acc[i] + w * x[i];
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void regression(const double* mg, const double* mp, const double* corr_gg, const double* corr_gp, double eps,
                double floor, double* a, double* b, std::size_t n) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vfloor = _mm256_set1_pd(floor);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d g = _mm256_loadu_pd(mg + i);
    const __m256d p = _mm256_loadu_pd(mp + i);
    const __m256d var = _mm256_sub_pd(_mm256_loadu_pd(corr_gg + i), _mm256_mul_pd(g, g));
    const __m256d cov = _mm256_sub_pd(_mm256_loadu_pd(corr_gp + i), _mm256_mul_pd(g, p));
    const __m256d denom = _mm256_add_pd(var, veps);
    const __m256d keep = _mm256_cmp_pd(denom, vfloor, _CMP_GT_OQ);
    // Lanes failing the test may divide by zero; the blend discards them.
    const __m256d ai = _mm256_blendv_pd(zero, _mm256_div_pd(cov, denom), keep);
    _mm256_storeu_pd(a + i, ai);
    _mm256_storeu_pd(b + i, _mm256_sub_pd(p, _mm256_mul_pd(ai, g)));
  }
  for (; i < n; ++i) {
    const double var = corr_gg[i] - mg[i] * mg[i];
    const double cov = corr_gp[i] - mg[i] * mp[i];
    const double denom = var + eps;
    const double ai = denom > floor ? cov / denom : 0.0;
    a[i] = ai;
    b[i] = mp[i] - ai * mg[i];
  }
}

void affine(const double* a, const double* g, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(g + i)),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * g[i] + b[i];
}

constexpr RowOps kAvx2{min_rows, max_rows, slide_sum, accumulate, axpy, multiply, regression, affine};

}  // namespace

const RowOps* avx2_ops() { return &kAvx2; }

}  // namespace uwkit::simd
