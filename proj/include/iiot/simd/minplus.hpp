#pragma once

// Min-plus relaxation used by the k-edge shortest-walk recursion:
//   next[j] = min_i (prev[i] + w[i·m + j]),  pred[j] = smallest minimizing i
// with pred[j] = -1 when every candidate is +inf. Every backend visits i in
// ascending order and adds without contraction, so results are bit-identical.

#include <cstdint>
#include <span>
#include <string_view>

namespace iiot::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b) noexcept;

void minplus_relax_scalar(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                          std::span<std::int64_t> pred);

#if defined(__x86_64__) || defined(_M_X64)
void minplus_relax_avx2(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                        std::span<std::int64_t> pred);
#endif

/// True when the AVX2 kernel was compiled in and the CPU supports it.
bool avx2_available() noexcept;

/// Selected once from the CPU; IIOT_SIMD=scalar in the environment forces the
/// reference kernel.
Backend active_backend() noexcept;
/// Throws if the requested backend is unavailable.
void set_backend(Backend b);

void minplus_relax(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                   std::span<std::int64_t> pred);

}  // namespace iiot::simd
