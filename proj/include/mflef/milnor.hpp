#pragma once

#include "mflef/groebner.hpp"
#include "mflef/linalg.hpp"
#include "mflef/polynomial.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace mflef {

// Jacobian quotient R/(d_1 w, ..., d_n w) with its standard-monomial basis and
// the residue functional. The quotient is global, which agrees with the local
// algebra at the origin for quasi-homogeneous potentials. A ring without
// variables gives the field itself.
class MilnorAlgebra {
public:
  explicit MilnorAlgebra(Polynomial w);

  const Polynomial &potential() const { return w_; }
  const RingPtr &ring() const { return w_.ring(); }
  std::size_t milnor_number() const { return basis_.size(); }
  const std::vector<Monomial> &basis() const { return basis_; }
  const GroebnerBasis &jacobian_basis() const { return gb_; }
  const std::optional<WeightSystem> &weights() const { return weights_; }

  Polynomial normal_form(const Polynomial &f) const;
  std::vector<Scalar> coordinates(const Polynomial &f) const;
  // Column j holds the coordinates of f * basis[j].
  ScalarMatrix multiplication_matrix(const Polynomial &f) const;

  // Linear functional with residue(hessian) = mu, supported on the socle.
  // Throws InputError for potentials that are not quasi-homogeneous.
  Scalar residue(const Polynomial &f) const;
  Scalar residue_pairing(const Polynomial &f, const Polynomial &g) const {
    return residue(f * g);
  }
  ScalarMatrix gram_matrix() const;

  // Weighted degree of the socle (integer weights), when graded.
  std::optional<long> socle_degree() const { return socle_degree_; }

private:
  Polynomial w_;
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::optional<WeightSystem> weights_;
  std::optional<long> socle_degree_;
  std::optional<std::size_t> socle_index_;
  Scalar residue_scale_;
};

// Sign attached to the residue pairing on m fixed variables.
int pairing_sign(std::size_t fixed_count);

// w_t and its Milnor algebra for a diagonal symmetry t.
struct TraceSpace {
  Polynomial w;
  Symmetry t;
  std::vector<bool> moving;
  std::vector<std::size_t> fixed; // indices into the ambient variables
  RingPtr fixed_ring;
  Polynomial restricted; // w_t in fixed_ring
  std::shared_ptr<const MilnorAlgebra> algebra;

  std::size_t moving_count() const { return w.nvars() - fixed.size(); }
  // (n - k) mod 2
  int parity() const { return static_cast<int>(fixed.size() % 2); }
  // Ambient polynomial with moving variables set to zero, moved to fixed_ring.
  Polynomial restrict(const Polynomial &f) const;
};

// Throws InputError if t is not a symmetry of w, NonIsolatedError if w_t is
// not an isolated singularity.
TraceSpace trace_space(const Polynomial &w, const Symmetry &t);

// Class in H(w_t): a normal form in the fixed variables times the volume form
// of the fixed coordinates.
struct TraceSpaceElement {
  std::shared_ptr<const TraceSpace> space;
  Polynomial cls;

  int parity() const { return space->parity(); }
  bool is_zero() const { return cls.is_zero(); }
};

// prod_{moving}(1 - t_i)^{-1} * sign * residue(u v); u lives over t and v over
// t^{-1}.
Scalar canonical_pairing(const TraceSpaceElement &u, const TraceSpaceElement &v);

} // namespace mflef
