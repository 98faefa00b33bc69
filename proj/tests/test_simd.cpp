#include "doctest.h"

#include "mflef/monomial.hpp"
#include "mflef/simd/monomial_kernels.hpp"

#include <array>
#include <random>

using namespace mflef;
using Lanes = std::array<std::uint16_t, simd::kLanes>;

namespace {

Lanes random_lanes(std::mt19937 &rng, unsigned max, std::size_t used) {
  Lanes a{};
  for (std::size_t i = 0; i < used; ++i)
    a[i] = static_cast<std::uint16_t>(rng() % (max + 1));
  return a;
}

void check_equivalent(const simd::MonomialKernels &ref, const simd::MonomialKernels &k) {
  std::mt19937 rng(41);
  for (int it = 0; it < 5000; ++it) {
    const std::size_t used = 1 + rng() % simd::kLanes;
    const unsigned max = (it % 3 == 0) ? 2 : (it % 3 == 1 ? 40 : 16000);
    Lanes a = random_lanes(rng, max, used), b = random_lanes(rng, max, used);
    if (it % 5 == 0)
      for (std::size_t i = 0; i < simd::kLanes; ++i)
        b[i] = static_cast<std::uint16_t>(a[i] + (i % 2));
    CHECK(ref.divides(a.data(), b.data()) == k.divides(a.data(), b.data()));
    CHECK(ref.coprime(a.data(), b.data()) == k.coprime(a.data(), b.data()));
    CHECK(ref.degree(a.data()) == k.degree(a.data()));
    alignas(32) Lanes r1{}, r2{};
    ref.add(a.data(), b.data(), r1.data());
    k.add(a.data(), b.data(), r2.data());
    CHECK(r1 == r2);
    ref.lcm(a.data(), b.data(), r1.data());
    k.lcm(a.data(), b.data(), r2.data());
    CHECK(r1 == r2);
    if (ref.divides(b.data(), a.data())) {
      ref.sub(a.data(), b.data(), r1.data());
      k.sub(a.data(), b.data(), r2.data());
      CHECK(r1 == r2);
    }
  }
}

} // namespace

TEST_CASE("scalar kernels behave as specified") {
  const auto &k = simd::scalar_kernels();
  const Lanes a{1, 0, 2}, b{1, 3, 2}, c{0, 1, 1};
  CHECK(k.divides(a.data(), b.data()));
  CHECK_FALSE(k.divides(b.data(), a.data()));
  CHECK(k.coprime(a.data(), c.data()) == false);
  const Lanes d{0, 4};
  CHECK(k.coprime(a.data(), d.data()));
  CHECK(k.degree(b.data()) == 6);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const auto *avx = simd::avx2_kernels();
  if (!avx) {
    MESSAGE("AVX2 not available on this machine; equivalence test skipped");
    return;
  }
  check_equivalent(simd::scalar_kernels(), *avx);
}

TEST_CASE("active kernels drive monomial arithmetic") {
  const int e1[] = {2, 0, 1}, e2[] = {1, 3, 0};
  const Monomial a(e1), b(e2);
  CHECK((a * b).degree() == 7);
  CHECK(lcm(a, b) == Monomial(std::array<int, 3>{2, 3, 1}));
  CHECK((a * b) / b == a);
  CHECK_FALSE(a.divides(b));
  // degrevlex: equal degree, compare the last variable, smaller exponent wins
  const int e3[] = {0, 2, 1}, e4[] = {1, 2, 0};
  CHECK(Monomial(e4) > Monomial(e3));
}
