#include "uwkit/simd/row_ops.hpp"

namespace uwkit::simd {
namespace {

// Selection order mirrors _mm256_min_pd / _mm256_max_pd so signed zeros
// resolve the same way in every backend.
void min_rows(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void max_rows(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void slide_sum(double* acc, const double* add, const double* sub, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = (acc[i] + add[i]) - sub[i];
}

void accumulate(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void axpy(double* acc, double w, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] + w * x[i];
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void regression(const double* mg, const double* mp, const double* corr_gg, const double* corr_gp, double eps,
                double floor, double* a, double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double var = corr_gg[i] - mg[i] * mg[i];
    const double cov = corr_gp[i] - mg[i] * mp[i];
    const double denom = var + eps;
    const double ai = denom > floor ? cov / denom : 0.0;
    a[i] = ai;
    b[i] = mp[i] - ai * mg[i];
  }
}

void affine(const double* a, const double* g, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * g[i] + b[i];
}

constexpr RowOps kScalar{min_rows, max_rows, slide_sum, accumulate, axpy, multiply, regression, affine};

}  // namespace

const RowOps& scalar_ops() { return kScalar; }

}  // namespace uwkit::simd
