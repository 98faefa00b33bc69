#include "mflef/simd/monomial_kernels.hpp"

#include <cstdlib>

namespace mflef::simd {

const MonomialKernels &active_kernels() {
  static const MonomialKernels &chosen = []() -> const MonomialKernels & {
    if (std::getenv("MFLEF_FORCE_SCALAR") == nullptr)
      if (const auto *k = avx2_kernels())
        return *k;
    return scalar_kernels();
  }();
  return chosen;
}

} // namespace mflef::simd
