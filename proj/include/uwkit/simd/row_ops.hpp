#pragma once

// Row-level arithmetic primitives used by the sliding-window and filter
// kernels. Each backend provides the same table of functions; the scalar
// table is the reference and every SIMD table must reproduce it bit for bit
// (no FMA contraction, identical operation order per element).

#include <cstddef>
#include <string_view>

namespace uwkit::simd {

enum class Backend { Scalar, Avx2 };

struct RowOps {
  // out[i] = min(a[i], b[i]) / max(a[i], b[i])
  void (*min_rows)(const double* a, const double* b, double* out, std::size_t n);
  void (*max_rows)(const double* a, const double* b, double* out, std::size_t n);
  // acc[i] += add[i] - sub[i]
  void (*slide_sum)(double* acc, const double* add, const double* sub, std::size_t n);
  // acc[i] += x[i]
  void (*accumulate)(double* acc, const double* x, std::size_t n);
  // acc[i] += w * x[i]
  void (*axpy)(double* acc, double w, const double* x, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
  // Guided-filter regression coefficients from window moments:
  //   var = corr_gg - mg*mg, cov = corr_gp - mg*mp
  //   a = (var + eps > floor) ? cov / (var + eps) : 0,  b = mp - a*mg
  void (*regression)(const double* mg, const double* mp, const double* corr_gg, const double* corr_gp, double eps,
                     double floor, double* a, double* b, std::size_t n);
  // out[i] = a[i] * g[i] + b[i]
  void (*affine)(const double* a, const double* g, const double* b, double* out, std::size_t n);
};

const RowOps& scalar_ops();
/// Null when the binary was built without AVX2 support.
const RowOps* avx2_ops();

bool cpu_supports(Backend b);
bool backend_available(Backend b);

/// Backend used by the kernels. Resolved once at first use: the best
/// supported backend, unless UWKIT_SIMD=scalar is set in the environment.
Backend active_backend();
/// Throws uwkit::Error when the backend is unavailable on this machine.
void set_backend(Backend b);
const RowOps& ops();
const RowOps& ops(Backend b);

std::string_view backend_name(Backend b);

/// Restores the previously active backend on scope exit.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : previous_(active_backend()) { set_backend(b); }
  ~ScopedBackend() { set_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

}  // namespace uwkit::simd
