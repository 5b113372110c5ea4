#include <cstdlib>

#include "cfgen/error.hpp"
#include "cfgen/mrf/maxplus.hpp"

namespace cfgen::mrf {

bool isa_supported(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::Scalar: return true;
    case KernelIsa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

KernelIsa active_isa() {
  static const KernelIsa isa = [] {
    if (std::getenv("CFGEN_FORCE_SCALAR") != nullptr) return KernelIsa::Scalar;
    return isa_supported(KernelIsa::Avx2) ? KernelIsa::Avx2 : KernelIsa::Scalar;
  }();
  return isa;
}

std::string_view isa_name(KernelIsa isa) {
  return isa == KernelIsa::Avx2 ? "avx2" : "scalar";
}

void max_plus(KernelIsa isa, std::span<const double> matrix, std::span<const double> vec,
              std::span<double> out) {
  const std::size_t rows = out.size();
  const std::size_t cols = vec.size();
  if (matrix.size() != rows * cols) {
    throw ContractError("max_plus: matrix is not rows x cols");
  }
  if (rows == 0) return;
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case KernelIsa::Avx2:
      if (!isa_supported(isa)) throw ContractError("AVX2 kernel requested on a CPU without AVX2");
      kernels::max_plus_avx2(matrix.data(), vec.data(), out.data(), rows, cols);
      return;
#endif
    default:
      kernels::max_plus_scalar(matrix.data(), vec.data(), out.data(), rows, cols);
      return;
  }
}

}  // namespace cfgen::mrf
