// Compiled with -mavx2; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <limits>

#include "cfgen/mrf/maxplus.hpp"

namespace cfgen::mrf::kernels {

void max_plus_avx2(const double* matrix, const double* vec, double* out, std::size_t rows,
                   std::size_t cols) {
  constexpr std::size_t kWidth = 4;
  const std::size_t vec_end = cols - cols % kWidth;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = matrix + r * cols;
    __m256d acc = _mm256_set1_pd(neg_inf);
    for (std::size_t c = 0; c < vec_end; c += kWidth) {
      const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(vec + c));
      acc = _mm256_max_pd(acc, sum);
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d m2 = _mm_max_pd(lo, hi);
    const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
    double best = _mm_cvtsd_f64(m1);
    for (std::size_t c = vec_end; c < cols; ++c) {
      const double v = row[c] + vec[c];
      if (v > best) best = v;
    }
    out[r] = best;
  }
}

}  // namespace cfgen::mrf::kernels
