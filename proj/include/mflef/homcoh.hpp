#pragma once

#include "mflef/groebner.hpp"
#include "mflef/mfcore.hpp"

#include <array>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace mflef {

// Hom(A, B) as a Z/2-graded free module. Parity p holds the entries (i, j),
// i a generator of B and j one of A, with parity(i) + parity(j) = p;
// d[p] : C^p -> C^{1-p} is phi -> d_B phi - (-1)^p phi d_A.
struct HomComplex {
  MatrixFactorization source, target;
  std::array<std::vector<std::pair<std::size_t, std::size_t>>, 2> slots;
  std::array<PolyMatrix, 2> d;

  std::size_t rank(int p) const { return slots[p].size(); }
  Vec flatten(const PolyMatrix &phi, int p) const;
  PolyMatrix unflatten(const Vec &v, int p) const;
};

// Throws InputError for different potentials.
HomComplex hom_complex(const MatrixFactorization &a, const MatrixFactorization &b);

// H^p = ker d[p] / im d[1-p], presented as R^c / N with c the number of kernel
// generators; the basis is the standard monomials of N.
class CohomologyBasis {
public:
  explicit CohomologyBasis(HomComplex hx);

  const HomComplex &complex() const { return hx_; }
  std::size_t dim(int p) const { return basis_[p].size(); }
  const std::vector<PolyMatrix> &representatives(int p) const { return reps_[p]; }
  // Coordinates of a cocycle of parity p; throws InputError if not closed.
  std::vector<Scalar> coordinates(const PolyMatrix &cocycle, int p) const;

private:
  HomComplex hx_;
  std::array<PolyMatrix, 2> kernel_;
  std::array<std::unique_ptr<Lifter>, 2> lifter_;
  std::array<GroebnerBasis, 2> relations_;
  std::array<std::vector<StandardMonomial>, 2> basis_;
  std::array<std::map<std::pair<std::size_t, Monomial>, std::size_t>, 2> index_;
  std::array<std::vector<PolyMatrix>, 2> reps_;
};

// Throws NonIsolatedError when the cohomology is infinite-dimensional.
CohomologyBasis cohomology(const HomComplex &hx);

// Matrices of phi -> beta o t^*(phi) o alpha on H^0 and H^1.
struct InducedMap {
  std::array<ScalarMatrix, 2> blocks;
};

// alpha : A -> t^*A and beta : t^*B -> B even and closed.
InducedMap induced_endomorphism(const CohomologyBasis &h, const Symmetry &t, const MFMorphism &alpha,
                                const MFMorphism &beta);
Scalar supertrace_on_cohomology(const InducedMap &m);

// Sum over internal degrees e in [-window, window] (doubled units, see
// infer_grading) of the supertrace of the induced map on the cohomology of the
// degree-e piece. Needs quasi-homogeneous w, graded A and B, and alpha, beta
// of internal degree zero.
Scalar graded_euler_supertrace(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                               const MFMorphism &alpha, const MFMorphism &beta, long window);
// A window covering every degree where cohomology can live.
long default_window(const MatrixFactorization &a, const MatrixFactorization &b);

} // namespace mflef
