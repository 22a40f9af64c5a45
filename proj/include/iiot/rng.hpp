#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, trial, stream, step, draw), so trials can run in any order or in
// parallel and still reproduce the serial result bit for bit.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace iiot {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) noexcept
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ (stream * 0xD1B54A32D192ED03ull))) {}

  std::uint64_t bits(std::uint64_t step, std::uint64_t draw) const noexcept {
    return splitmix64(key_ ^ splitmix64((step << 8) ^ draw));
  }

  /// Uniform on the open interval (0,1).
  double uniform(std::uint64_t step, std::uint64_t draw) const noexcept {
    return (static_cast<double>(bits(step, draw) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box–Muller on draws 2d and 2d+1.
  double gaussian(std::uint64_t step, std::uint64_t d) const noexcept {
    const double u1 = uniform(step, 2 * d);
    const double u2 = uniform(step, 2 * d + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace iiot
