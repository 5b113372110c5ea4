#include <limits>

#include "cfgen/mrf/maxplus.hpp"

namespace cfgen::mrf::kernels {

void max_plus_scalar(const double* matrix, const double* vec, double* out, std::size_t rows,
                     std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = matrix + r * cols;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = row[c] + vec[c];
      if (v > best) best = v;
    }
    out[r] = best;
  }
}

}  // namespace cfgen::mrf::kernels
