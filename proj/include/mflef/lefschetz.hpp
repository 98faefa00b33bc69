#pragma once

#include "mflef/homcoh.hpp"
#include "mflef/mfcore.hpp"
#include "mflef/milnor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mflef {

enum class Engine { groebner, graded, both };

Engine parse_engine(const std::string &name);
std::string engine_name(Engine e);

// Convention line attached to every report that goes through the pairing.
extern const char *const kPairingConvention;

struct LefschetzReport {
  std::string name;
  Scalar lhs, rhs;
  bool equal = false;
  std::string lhs_engine, rhs_engine;
  // Set when both cohomology engines ran: whether they agreed.
  std::optional<bool> engines_agree;
  long long micros = 0;
  std::vector<std::string> notes;

  bool pass() const { return equal && engines_agree.value_or(true); }
};

LefschetzReport make_report(std::string name, Scalar lhs, Scalar rhs, std::string lhs_engine,
                            std::string rhs_engine);

// str(d_{f_m} delta ... d_{f_1} delta alpha) over the fixed coordinates
// f_1 < ... < f_m, moving coordinates set to zero, reduced in the Milnor
// algebra of w_t and signed by the permutation putting moving coordinates
// first.
TraceSpaceElement boundary_bulk(const MatrixFactorization &e, const Symmetry &t, const MFMorphism &alpha);
TraceSpaceElement boundary_bulk(const std::shared_ptr<const TraceSpace> &space, const MatrixFactorization &e,
                                const MFMorphism &alpha);

// beta : t^*B -> B becomes (t^{-1})^*(beta) : B -> (t^{-1})^*B.
MFMorphism tilde_beta(const Symmetry &t, const MFMorphism &beta);

Scalar rhs_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
               const MFMorphism &alpha, const MFMorphism &beta);
Scalar lhs_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
               const MFMorphism &alpha, const MFMorphism &beta);

LefschetzReport verify_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                           const MFMorphism &alpha, const MFMorphism &beta, Engine engine = Engine::groebner);
// All coordinates moving: rhs = str(alpha|0) str(beta|0) prod (1 - t_i)^{-1}.
LefschetzReport verify_isolated(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                                const MFMorphism &alpha, const MFMorphism &beta, Engine engine = Engine::groebner);
// (-1)^n (prod t_i) tr(f -> f(tx) on the Milnor algebra) against (-1)^{n-k} mu(w_t).
LefschetzReport lunts_check(const Polynomial &w, const Symmetry &t);
// Odd-dimensional fixed locus: lhs must vanish.
LefschetzReport zero_fixed_locus_check(const MatrixFactorization &a, const MatrixFactorization &b,
                                       const Symmetry &t, const MFMorphism &alpha, const MFMorphism &beta,
                                       Engine engine = Engine::groebner);
// str(alpha|0) str(alpha^{-1}|0) against str(T, Hom(A, A)) prod (1 - t_i).
LefschetzReport trace_identity_check(const MatrixFactorization &a, const Symmetry &t, const MFMorphism &alpha,
                                     Engine engine = Engine::groebner);

struct DivisibilityReport {
  long p = 0;
  std::size_t n = 0;
  Scalar supertrace;
  std::optional<long> valuation; // nullopt for zero
  long bound = 0;                // ceil(n / 2)
  long m_max = 0;                // largest m with bound - 1 >= m (p - 1)
  bool pass = false;
};

// Throws InputError when alpha is not Z/p-equivariant or some t_i is 1.
DivisibilityReport divisibility_check(const MatrixFactorization &a, const Symmetry &t, const MFMorphism &alpha,
                                      long p);

} // namespace mflef
