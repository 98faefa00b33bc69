#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mflef {

long euler_phi(long m);

// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<mpz_class> &cyclotomic_polynomial(long m);

// Exact element of Q(zeta_m), stored in the power basis 1, z, ..., z^(phi(m)-1)
// and reduced modulo Phi_m. Mixed-order arithmetic promotes both operands to
// Q(zeta_L) with L = lcm of the orders; no automatic descent happens, but
// equality is independent of the order a value is stored at.
class Scalar {
public:
  Scalar() : order_(1), coeffs_(1) {}
  Scalar(long v) : order_(1), coeffs_{mpq_class(v)} {}
  Scalar(const mpq_class &q) : order_(1), coeffs_{q} { coeffs_[0].canonicalize(); }
  Scalar(long num, long den);

  // zeta_m^k, k taken mod m.
  static Scalar zeta(long m, long k = 1);

  // Canonical representative of sum_j p[j] zeta_m^j.
  static Scalar from_powers(std::span<const mpq_class> powers, long m);

  long order() const { return order_; }
  const std::vector<mpq_class> &coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  // Throws if the value is not rational.
  mpq_class to_rational() const;
  // All power-basis coordinates are integers.
  bool is_integral() const;

  Scalar embed(long target_order) const;
  // Smallest divisor d of order() such that the value lies in Q(zeta_d).
  Scalar descend() const;

  Scalar galois(long k) const; // zeta -> zeta^k, gcd(k, m) = 1
  Scalar conjugate() const { return galois(order_ - 1); }
  Scalar inverse() const;

  Scalar operator-() const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  friend bool operator==(const Scalar &a, const Scalar &b);
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

  Scalar pow(long e) const;

  // Expression-grammar rendering, e.g. "1/2 - 3*zeta(3)^2".
  std::string str() const;
  // True when str() is a single additive term (no parentheses needed).
  bool is_monomial_literal() const;

  // Complex embedding zeta_m -> exp(2 pi i k / m); used by float cross-checks.
  std::pair<double, double> to_complex(long k = 1) const;

private:
  Scalar(long order, std::vector<mpq_class> coeffs) : order_(order), coeffs_(std::move(coeffs)) {}
  void promote_pair(Scalar &o);

  long order_;
  std::vector<mpq_class> coeffs_;
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

// Product of all Galois conjugates; always rational.
mpq_class norm_to_rational(const Scalar &a);

// Exact power of (1 - zeta_p) dividing a in Z[zeta_p]; nullopt means a = 0
// (infinite valuation). Throws InputError when a is not in Z[zeta_p].
std::optional<long> one_minus_zeta_valuation(const Scalar &a, long p);

// p-adic valuation of a nonzero integer.
long padic_valuation(const mpz_class &n, long p);

bool is_prime(long p);

// zeta_order^exponent with the exponent kept reduced.
struct RootOfUnity {
  long order = 1;
  long exponent = 0;

  RootOfUnity() = default;
  RootOfUnity(long m, long k);

  Scalar value() const { return Scalar::zeta(order, exponent); }
  bool is_one() const { return exponent == 0; }
  RootOfUnity inverse() const { return {order, order - exponent}; }
  // Multiplicative order of the element itself.
  long element_order() const;
  friend RootOfUnity operator*(const RootOfUnity &a, const RootOfUnity &b);
  friend bool operator==(const RootOfUnity &a, const RootOfUnity &b);
};

using Symmetry = std::vector<RootOfUnity>;

Symmetry inverse(const Symmetry &t);
Symmetry compose(const Symmetry &s, const Symmetry &t);
bool is_identity(const Symmetry &t);
// lcm of the element orders; t^order = identity.
long symmetry_order(const Symmetry &t);
// Smallest m such that every entry lies in mu_m; used to write t as zeta(m)^[...].
long common_order(const Symmetry &t);

} // namespace mflef
