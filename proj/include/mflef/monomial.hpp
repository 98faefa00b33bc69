#pragma once

#include "mflef/simd/monomial_kernels.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>

namespace mflef {

inline constexpr std::size_t kMaxVariables = simd::kLanes;

// Exponent vector; lanes past the ambient variable count stay zero.
struct Monomial {
  alignas(32) std::array<std::uint16_t, kMaxVariables> exps{};

  Monomial() = default;
  explicit Monomial(std::span<const int> e);
  static Monomial variable(std::size_t i, unsigned power = 1);

  std::uint16_t operator[](std::size_t i) const { return exps[i]; }
  std::uint16_t &operator[](std::size_t i) { return exps[i]; }

  std::uint32_t degree() const { return simd::active_kernels().degree(exps.data()); }
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial &o) const {
    return simd::active_kernels().divides(exps.data(), o.exps.data());
  }
  bool coprime(const Monomial &o) const {
    return simd::active_kernels().coprime(exps.data(), o.exps.data());
  }

  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial r;
    simd::active_kernels().add(a.exps.data(), b.exps.data(), r.exps.data());
    return r;
  }
  // Requires b | a.
  friend Monomial operator/(const Monomial &a, const Monomial &b) {
    Monomial r;
    simd::active_kernels().sub(a.exps.data(), b.exps.data(), r.exps.data());
    return r;
  }
  friend Monomial lcm(const Monomial &a, const Monomial &b) {
    Monomial r;
    simd::active_kernels().lcm(a.exps.data(), b.exps.data(), r.exps.data());
    return r;
  }

  friend bool operator==(const Monomial &a, const Monomial &b) { return a.exps == b.exps; }

  // Degree-reverse-lexicographic order.
  friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
    const auto da = a.degree(), db = b.degree();
    if (da != db)
      return da <=> db;
    for (std::size_t i = kMaxVariables; i-- > 0;)
      if (a.exps[i] != b.exps[i])
        return b.exps[i] <=> a.exps[i];
    return std::strong_ordering::equal;
  }

  long weighted_degree(std::span<const long> weights) const {
    long d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      d += weights[i] * exps[i];
    return d;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial &m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exps)
      h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

} // namespace mflef
