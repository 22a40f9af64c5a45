#include <cmath>
#include <limits>

#include "iiot/errors.hpp"
#include "iiot/simd/minplus.hpp"

namespace iiot::simd {

void minplus_relax_scalar(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                          std::span<std::int64_t> pred) {
  const std::size_t m = prev.size();
  if (w.size() != m * m || next.size() != m || pred.size() != m)
    throw Error(Errc::DimensionMismatch, "min-plus relaxation buffers");
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    next[j] = inf;
    pred[j] = -1;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double h = prev[i];
    if (h == inf) continue;
    const double* row = w.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = h + row[j];
      if (c < next[j]) {
        next[j] = c;
        pred[j] = static_cast<std::int64_t>(i);
      }
    }
  }
}

}  // namespace iiot::simd
