#pragma once

// Max-plus matrix-vector product, the inner loop of max-product message
// passing:
//
//   out[r] = max_c (matrix[r * cols + c] + vec[c])
//
// The scalar kernel is the reference. SIMD variants must return bit-identical
// results: max is exact, and each candidate is the same single IEEE addition.

#include <cstddef>
#include <span>
#include <string_view>

namespace cfgen::mrf {

enum class KernelIsa { Scalar, Avx2 };

namespace kernels {
void max_plus_scalar(const double* matrix, const double* vec, double* out, std::size_t rows,
                     std::size_t cols);
#if defined(__x86_64__) || defined(_M_X64)
void max_plus_avx2(const double* matrix, const double* vec, double* out, std::size_t rows,
                   std::size_t cols);
#endif
}  // namespace kernels

bool isa_supported(KernelIsa isa);
// Best ISA the running CPU supports, unless CFGEN_FORCE_SCALAR is set.
KernelIsa active_isa();
std::string_view isa_name(KernelIsa isa);

// Dispatches to `isa`, which must be supported.
void max_plus(KernelIsa isa, std::span<const double> matrix, std::span<const double> vec,
              std::span<double> out);
inline void max_plus(std::span<const double> matrix, std::span<const double> vec,
                     std::span<double> out) {
  max_plus(active_isa(), matrix, vec, out);
}

}  // namespace cfgen::mrf
