#include "mflef/simd/monomial_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MFLEF_HAVE_AVX2_KERNELS 1
#else
#define MFLEF_HAVE_AVX2_KERNELS 0
#endif

namespace mflef::simd {

#if MFLEF_HAVE_AVX2_KERNELS

namespace {

#define MFLEF_AVX2 __attribute__((target("avx2")))

MFLEF_AVX2 inline __m256i load(const std::uint16_t *p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p));
}

MFLEF_AVX2 inline void store(std::uint16_t *p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i *>(p), v);
}

MFLEF_AVX2 bool divides(const std::uint16_t *a, const std::uint16_t *b) {
  const __m256i va = load(a), vb = load(b);
  // a <= b lane-wise  <=>  max(a, b) == b
  const __m256i eq = _mm256_cmpeq_epi16(_mm256_max_epu16(va, vb), vb);
  return _mm256_movemask_epi8(eq) == -1;
}

MFLEF_AVX2 bool coprime(const std::uint16_t *a, const std::uint16_t *b) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i za = _mm256_cmpeq_epi16(load(a), zero);
  const __m256i zb = _mm256_cmpeq_epi16(load(b), zero);
  return _mm256_movemask_epi8(_mm256_or_si256(za, zb)) == -1;
}

MFLEF_AVX2 void add(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  store(out, _mm256_add_epi16(load(a), load(b)));
}

MFLEF_AVX2 void sub(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  store(out, _mm256_sub_epi16(load(a), load(b)));
}

MFLEF_AVX2 void lcm(const std::uint16_t *a, const std::uint16_t *b, std::uint16_t *out) {
  store(out, _mm256_max_epu16(load(a), load(b)));
}

MFLEF_AVX2 std::uint32_t degree(const std::uint16_t *a) {
  // Widen pairs to 32 bits, then fold the eight partial sums.
  const __m256i ones = _mm256_set1_epi16(1);
  __m256i s = _mm256_madd_epi16(load(a), ones);
  __m128i lo = _mm256_castsi256_si128(s);
  __m128i hi = _mm256_extracti128_si256(s, 1);
  __m128i v = _mm_add_epi32(lo, hi);
  v = _mm_add_epi32(v, _mm_shuffle_epi32(v, _MM_SHUFFLE(1, 0, 3, 2)));
  v = _mm_add_epi32(v, _mm_shuffle_epi32(v, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(v));
}

constexpr MonomialKernels kAvx2{"avx2", divides, coprime, add, sub, lcm, degree};

} // namespace

const MonomialKernels *avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
}

#else

const MonomialKernels *avx2_kernels() { return nullptr; }

#endif

} // namespace mflef::simd
