#include "mflef/simd/monomial_kernels.hpp"

namespace mflef::simd {

namespace {

bool divides(const std::uint16_t *a, const std::uint16_t *b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

bool coprime(const std::uint16_t *a, const std::uint16_t *b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] && b[i])
      return false;
  return true;
}

void add(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  for (std::size_t i = 0; i < kLanes; ++i)
    out[i] = static_cast<std::uint16_t>(a[i] + b[i]);
}

void sub(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  for (std::size_t i = 0; i < kLanes; ++i)
    out[i] = static_cast<std::uint16_t>(a[i] - b[i]);
}

void lcm(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  for (std::size_t i = 0; i < kLanes; ++i)
    out[i] = a[i] > b[i] ? a[i] : b[i];
}

std::uint32_t degree(const std::uint16_t *a) {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kLanes; ++i)
    d += a[i];
  return d;
}

constexpr MonomialKernels kScalar{"scalar", divides, coprime, add, sub, lcm, degree};

} // namespace

const MonomialKernels &scalar_kernels() { return kScalar; }

} // namespace mflef::simd
