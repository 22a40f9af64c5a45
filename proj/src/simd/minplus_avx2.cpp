#include <immintrin.h>

#include <limits>

#include "iiot/errors.hpp"
#include "iiot/simd/minplus.hpp"

namespace iiot::simd {

void minplus_relax_avx2(std::span<const double> prev, std::span<const double> w, std::span<double> next,
                        std::span<std::int64_t> pred) {
  const std::size_t m = prev.size();
  if (w.size() != m * m || next.size() != m || pred.size() != m)
    throw Error(Errc::DimensionMismatch, "min-plus relaxation buffers");
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    next[j] = inf;
    pred[j] = -1;
  }
  const std::size_t vec_end = m - m % 4;
  for (std::size_t i = 0; i < m; ++i) {
    const double h = prev[i];
    if (h == inf) continue;
    const double* row = w.data() + i * m;
    const __m256d hv = _mm256_set1_pd(h);
    const __m256i iv = _mm256_set1_epi64x(static_cast<long long>(i));
    std::size_t j = 0;
    for (; j < vec_end; j += 4) {
      const __m256d c = _mm256_add_pd(hv, _mm256_loadu_pd(row + j));
      const __m256d cur = _mm256_loadu_pd(next.data() + j);
      const __m256d lt = _mm256_cmp_pd(c, cur, _CMP_LT_OQ);
      _mm256_storeu_pd(next.data() + j, _mm256_blendv_pd(cur, c, lt));
      const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pred.data() + j));
      const __m256i blended = _mm256_castpd_si256(
          _mm256_blendv_pd(_mm256_castsi256_pd(p), _mm256_castsi256_pd(iv), lt));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(pred.data() + j), blended);
    }
    for (; j < m; ++j) {
      const double c = h + row[j];
      if (c < next[j]) {
        next[j] = c;
        pred[j] = static_cast<std::int64_t>(i);
      }
    }
  }
}

}  // namespace iiot::simd
