#include <atomic>
#include <cstdlib>
#include <string>

#include "uwkit/image.hpp"
#include "uwkit/simd/row_ops.hpp"

namespace uwkit::simd {

#if !defined(UWKIT_HAVE_AVX2)
const RowOps* avx2_ops() { return nullptr; }
#endif

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  return avx2_ops() != nullptr && cpu_supports(b);
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("UWKIT_SIMD"); env != nullptr && std::string(env) == "scalar")
    return Backend::Scalar;
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw Error("SIMD backend " + std::string(backend_name(b)) + " is not available");
  active().store(b, std::memory_order_relaxed);
}

const RowOps& ops(Backend b) {
  if (b == Backend::Avx2 && backend_available(b)) return *avx2_ops();
  return scalar_ops();
}

const RowOps& ops() { return ops(active_backend()); }

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

}  // namespace uwkit::simd
