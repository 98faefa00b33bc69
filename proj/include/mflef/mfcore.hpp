#pragma once

#include "mflef/groebner.hpp"
#include "mflef/linalg.hpp"
#include "mflef/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mflef {

// Z/2-graded free module R^{r0} + R^{r1} with d0 : even -> odd (r1 x r0) and
// d1 : odd -> even (r0 x r1), d1 d0 = w and d0 d1 = w. Generators are numbered
// even first, so the full operator is the block matrix {0, d1; d0, 0}.
class MatrixFactorization {
public:
  MatrixFactorization() = default;
  // Throws ValidationError when the composites are not w.
  MatrixFactorization(Polynomial w, PolyMatrix d0, PolyMatrix d1);

  const Polynomial &potential() const { return w_; }
  const RingPtr &ring() const { return w_.ring(); }
  std::size_t even_rank() const { return d0_.cols(); }
  std::size_t odd_rank() const { return d0_.rows(); }
  std::size_t rank() const { return even_rank() + odd_rank(); }
  int parity_of(std::size_t gen) const { return gen < even_rank() ? 0 : 1; }

  const PolyMatrix &d0() const { return d0_; }
  const PolyMatrix &d1() const { return d1_; }
  PolyMatrix delta() const;

  // Same factorization over a ring containing all variable names.
  MatrixFactorization embed(const RingPtr &target) const;

  std::string str() const;
  friend bool operator==(const MatrixFactorization &a, const MatrixFactorization &b);

private:
  Polynomial w_;
  PolyMatrix d0_, d1_;
};

// Throws ValidationError naming the first failing entry.
void validate_mf(const Polynomial &w, const PolyMatrix &d0, const PolyMatrix &d1);

// Ring with the names of a followed by the names of b missing from a.
RingPtr union_ring(const RingPtr &a, const RingPtr &b);
// Rewrites f in a ring containing every variable of f by name.
Polynomial embed(const Polynomial &f, const RingPtr &target);

// delta = sum a_i e_i^ + b_i iota_i on the exterior algebra; subsets ordered by
// bitmask, even ones first.
MatrixFactorization koszul_mf(const RingPtr &ring, const Vec &a, const Vec &b);
MatrixFactorization tensor_mf(const MatrixFactorization &e1, const MatrixFactorization &e2);
MatrixFactorization pullback(const Symmetry &t, const MatrixFactorization &e);
// Parity shift: swapped blocks with delta negated.
MatrixFactorization shift(const MatrixFactorization &e);
// Koszul factorization of w(y) - w(x) in the doubled ring.
MatrixFactorization stabilized_diagonal(const Polynomial &w);

// Rows index target generators, columns source generators.
struct MFMorphism {
  MatrixFactorization source, target;
  int parity = 0;
  PolyMatrix map;

  // Throws InputError on wrong shape or entries of the wrong parity.
  MFMorphism(MatrixFactorization src, MatrixFactorization tgt, int par, PolyMatrix m);
};

MFMorphism identity_morphism(const MatrixFactorization &e);
// g after f
MFMorphism compose(const MFMorphism &g, const MFMorphism &f);
// d_B phi - (-1)^{|phi|} phi d_A
PolyMatrix morphism_differential(const MatrixFactorization &a, const MatrixFactorization &b,
                                 int parity, const PolyMatrix &phi);
bool morphism_closed(const MFMorphism &phi);
// Inverse of an even morphism whose map is an invertible constant matrix.
MFMorphism inverse_morphism(const MFMorphism &phi);
// t^*(phi) : t^*A -> t^*B
MFMorphism pullback(const Symmetry &t, const MFMorphism &phi);

// Diagonal constant alpha : E -> t^*E with alpha at the first generator equal
// to scale; throws InputError when no such morphism exists.
MFMorphism diagonal_equivariant_structure(const MatrixFactorization &e, const Symmetry &t,
                                          const Scalar &scale = Scalar(1));
// t^{(p-1)*}(alpha) o ... o t^*(alpha) o alpha == id
bool equivariance_power_check(const MFMorphism &alpha, const Symmetry &t, long p);

struct OriginComplex {
  std::size_t even_rank = 0, odd_rank = 0;
  ScalarMatrix delta;
};
OriginComplex restrict_to_origin(const MatrixFactorization &e);

// Even trace minus odd trace of a square matrix on r0 + r1 generators.
Polynomial supertrace(const PolyMatrix &m, std::size_t even_rank);
// Zero for odd morphisms.
Scalar supertrace_at_origin(const MFMorphism &phi);

// Internal degrees of the generators in doubled units: variable i has degree
// 2 q_i, w has degree 2 D and delta degree D, for the weights (q, D) of w.
// nullopt when w is not quasi-homogeneous or some entry is not homogeneous.
std::optional<std::vector<long>> infer_grading(const MatrixFactorization &e);

struct StabilizedModule {
  FreeResolution resolution;
  MatrixFactorization mf;
  // Standard degree of each generator of mf.
  std::vector<long> degrees;
  // Generator g acts by (-1)^{deg g}; a closed morphism mf -> (-1)^* mf.
  std::optional<MFMorphism> involution;
};

// Throws InputError when w does not annihilate the module.
StabilizedModule stabilize_module(const GradedModulePresentation &m, const Polynomial &w);

} // namespace mflef
