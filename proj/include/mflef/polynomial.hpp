#pragma once

#include "mflef/monomial.hpp"
#include "mflef/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mflef {

// Variable names of a polynomial ring over the cyclotomic scalars.
class Ring {
public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string &name) const;

  friend bool operator==(const Ring &a, const Ring &b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr &a, const RingPtr &b);

struct Term {
  Monomial mono;
  Scalar coeff;
};

// Sparse polynomial; terms are kept sorted by decreasing degrevlex order with
// no zero coefficients, so structural equality is mathematical equality.
//
// A default-constructed polynomial is zero with no ring attached; it adopts
// the ring of whatever it is combined with.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, const Scalar &c);
  Polynomial(RingPtr ring, const Monomial &m, const Scalar &c = Scalar(1));

  static Polynomial variable(RingPtr ring, std::size_t i);
  // Terms in any order, duplicates allowed.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  // Terms already strictly decreasing with nonzero coefficients; not checked.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr &ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  const std::vector<Term> &terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  // Coefficient of one monomial (zero if absent).
  Scalar coefficient(const Monomial &m) const;
  const Term &leading_term() const { return terms_.front(); }
  long total_degree() const; // -1 for zero

  Polynomial operator-() const;
  Polynomial &operator+=(const Polynomial &o);
  Polynomial &operator-=(const Polynomial &o);
  Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }
  Polynomial &operator*=(const Scalar &c);
  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(Polynomial a, const Scalar &c) { return a *= c; }
  friend Polynomial operator*(const Scalar &c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial &a, const Polynomial &b);
  friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

  Polynomial mul_term(const Monomial &m, const Scalar &c) const;
  Polynomial pow(unsigned e) const;

  Polynomial derivative(std::size_t i) const;
  // f(t_1 x_1, ..., t_n x_n).
  Polynomial scale_substitute(std::span<const Scalar> t) const;
  Polynomial scale_substitute(const Symmetry &t) const;
  // Sets the flagged variables to zero (ring unchanged).
  Polynomial set_zero(const std::vector<bool> &vanish) const;
  // Re-expresses the polynomial in another ring; variable i goes to index_map[i].
  Polynomial map_variables(RingPtr target, std::span<const std::size_t> index_map) const;

  // Weighted degree of every term; nullopt if not homogeneous (or zero).
  std::optional<long> weighted_degree(std::span<const long> weights) const;

  std::string str() const;

private:
  void check_ring(const Polynomial &o);
  void normalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

std::ostream &operator<<(std::ostream &os, const Polynomial &p);

// Partial derivative d f / d x_i.
Polynomial partial_derivative(const Polynomial &f, std::size_t i);

// Ring with names x_1..x_n followed by a second copy y_1..y_n (primed names).
RingPtr doubled_ring(const RingPtr &ring);

// Delta_i w in k[x, y] with sum_i Delta_i w * (y_i - x_i) = w(y) - w(x), where
// Delta_i w = (w(y_1..y_i, x_{i+1}..x_n) - w(y_1..y_{i-1}, x_i..x_n)) / (y_i - x_i).
std::vector<Polynomial> difference_quotients(const Polynomial &w, const RingPtr &doubled);

// det(d^2 w / dx_i dx_j), expanded exactly.
Polynomial hessian_determinant(const Polynomial &w);

bool check_symmetry(const Polynomial &w, const Symmetry &t);

// Positive rational weights q_i with every term of w of weighted degree 1,
// scaled to coprime integers: returns (weights, degree). nullopt if w is not
// quasi-homogeneous with uniquely determined positive weights.
struct WeightSystem {
  std::vector<long> weights;
  long degree = 0;
};
std::optional<WeightSystem> detect_weights(const Polynomial &w);

} // namespace mflef
