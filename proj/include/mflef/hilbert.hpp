#pragma once

#include "mflef/groebner.hpp"
#include "mflef/lefschetz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mflef {

// Integer polynomial in t: entry i is the coefficient of t^i, no trailing zeros.
using IntPoly = std::vector<long>;

long evaluate(const IntPoly &p, long t);
std::string int_poly_str(const IntPoly &p);

struct HilbertData {
  IntPoly chi;
  std::size_t krull_dim = 0;
  IntPoly multiplicity;
};

// Alternating sum of the generator degrees of the minimal graded free
// resolution, i.e. H_M(t) (1 - t)^n. Generator degrees must be >= 0.
IntPoly chi_polynomial(const GradedModulePresentation &m);
HilbertData multiplicity_data(const IntPoly &chi, std::size_t n);

struct EvenDivisibilityReport {
  std::size_t n = 0;
  HilbertData data;
  long e_at_minus_one = 0;
  std::optional<long> valuation; // 2-adic; nullopt when e(-1) = 0
  long bound = 0;                // d(M) - floor(n / 2)
  bool pass = false;
};

// w homogeneous of even degree, annihilating M, with a finite-colength
// Jacobian ideal; otherwise InputError / NonIsolatedError.
EvenDivisibilityReport verify_even_multiplicity_divisibility(const GradedModulePresentation &m, const Polynomial &w);

// str((-1)^* on the stabilization at the origin) against chi_M(-1).
LefschetzReport chi_stabilization_consistency(const GradedModulePresentation &m, const Polynomial &w);

} // namespace mflef
