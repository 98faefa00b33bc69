#pragma once

#include <cstddef>
#include <cstdint>

namespace mflef::simd {

// Exponent vectors are fixed-width blocks of 16 unsigned 16-bit lanes
// (one AVX2 register). Unused lanes must be zero and exponents stay below
// 2^15 (degree() sums lanes as signed 16-bit pairs).
inline constexpr std::size_t kLanes = 16;

struct MonomialKernels {
  const char *name;
  // a_i <= b_i for every lane.
  bool (*divides)(const std::uint16_t *a, const std::uint16_t *b);
  // No lane is positive in both.
  bool (*coprime)(const std::uint16_t *a, const std::uint16_t *b);
  void (*add)(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out);
  // out = a - b; requires b | a.
  void (*sub)(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out);
  void (*lcm)(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out);
  std::uint32_t (*degree)(const std::uint16_t *a);
};

const MonomialKernels &scalar_kernels();
// nullptr when the binary or the running CPU lacks AVX2.
const MonomialKernels *avx2_kernels();

// Chosen once at first use: AVX2 when available unless MFLEF_FORCE_SCALAR is set.
const MonomialKernels &active_kernels();

} // namespace mflef::simd
