#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "iiot/errors.hpp"
#include "iiot/simd/minplus.hpp"

namespace iiot::simd {

namespace {

Backend detect() noexcept {
  if (const char* env = std::getenv("IIOT_SIMD"); env && std::string_view(env) == "scalar") return Backend::Scalar;
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() noexcept {
#if defined(IIOT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return selected().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw Error(Errc::PreconditionViolated, "AVX2 kernel not available on this machine");
  selected().store(b, std::memory_order_relaxed);
}

void minplus_relax(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                   std::span<std::int64_t> pred) {
#if defined(IIOT_HAVE_AVX2_TU)
  if (active_backend() == Backend::Avx2) {
    minplus_relax_avx2(prev, w, next, pred);
    return;
  }
#endif
  minplus_relax_scalar(prev, w, next, pred);
}

}  // namespace iiot::simd
