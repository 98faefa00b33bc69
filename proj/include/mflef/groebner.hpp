#pragma once

#include "mflef/linalg.hpp"
#include "mflef/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mflef {

// Element of the free module R^rank, one polynomial per component.
using Vec = std::vector<Polynomial>;

struct ModuleTerm {
  std::uint32_t comp = 0;
  Monomial mono;
  Scalar coeff;
};

// Sparse free-module element sorted by decreasing position-over-term order:
// a lower component index beats any monomial, ties broken by degrevlex.
class ModuleElement {
public:
  ModuleElement() = default;
  static ModuleElement from_vec(const Vec &v);
  Vec to_vec(const RingPtr &ring, std::size_t rank) const;

  bool is_zero() const { return terms_.empty(); }
  const ModuleTerm &lead() const { return terms_.front(); }
  const std::vector<ModuleTerm> &terms() const { return terms_; }
  std::vector<ModuleTerm> &terms() { return terms_; }

  void make_monic();
  // this -= c * m * g
  void sub_multiple(const Scalar &c, const Monomial &m, const ModuleElement &g);

private:
  std::vector<ModuleTerm> terms_;
};

// True when a is strictly greater than b in the position-over-term order.
bool pot_greater(std::uint32_t ca, const Monomial &ma, std::uint32_t cb, const Monomial &mb);

struct StandardMonomial {
  std::size_t comp = 0;
  Monomial mono;
  friend bool operator==(const StandardMonomial &, const StandardMonomial &) = default;
};

// Reduced Groebner basis of a submodule of R^rank (rank 1 for ideals).
class GroebnerBasis {
public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, std::size_t rank, const std::vector<Vec> &generators);
  static GroebnerBasis ideal(RingPtr ring, const std::vector<Polynomial> &generators);

  const RingPtr &ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<ModuleElement> &elements() const { return basis_; }
  std::vector<Vec> generators() const;

  ModuleElement reduce(ModuleElement f) const;
  Vec normal_form(const Vec &f) const;
  Polynomial normal_form(const Polynomial &f) const;
  bool contains(const Vec &f) const;

  // Monomials outside the leading-term module, grouped by component and
  // increasing within each; nullopt when there are infinitely many.
  std::optional<std::vector<StandardMonomial>> standard_monomials() const;
  // Same, throwing NonIsolatedError on an infinite set.
  std::vector<StandardMonomial> finite_standard_monomials() const;

private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<ModuleElement> basis_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

// Columns generate {v : m v = 0}.
PolyMatrix syzygy_basis(const PolyMatrix &m);

// Division with lift through the column module of a fixed matrix. Built from
// one basis of [gens; I], which also yields the syzygies of gens.
class Lifter {
public:
  explicit Lifter(const PolyMatrix &gens);

  std::optional<Vec> try_lift(const Vec &target) const;
  // Throws NotMemberError when target is outside the column module.
  Vec lift(const Vec &target) const;
  PolyMatrix lift_columns(const PolyMatrix &targets) const;
  PolyMatrix syzygies() const;
  bool contains(const Vec &target) const { return try_lift(target).has_value(); }

private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  GroebnerBasis gb_;
};

// Coefficient matrix C with gens * C = targets.
PolyMatrix lift_through(const PolyMatrix &targets, const PolyMatrix &gens);

// Standard-graded module presented as coker(relations): relations is
// (#generators) x (#relations), generator degrees given, deg x_i = 1.
struct GradedModulePresentation {
  RingPtr ring;
  std::vector<long> degrees;
  PolyMatrix relations;
};

// Degrees of the columns of a homogeneous matrix whose rows have the given
// degrees; throws InputError when a column is not homogeneous.
std::vector<long> column_degrees(const PolyMatrix &m, const std::vector<long> &row_degrees);

// maps[i] : F_{i+1} -> F_i, degrees[i] are the generator degrees of F_i.
struct FreeResolution {
  RingPtr ring;
  std::vector<std::vector<long>> degrees;
  std::vector<PolyMatrix> maps;

  std::size_t length() const { return maps.size(); }
  std::vector<std::size_t> ranks() const;
};

// Minimal presentation of the same module: unit entries eliminated, redundant
// relations dropped.
GradedModulePresentation minimize_presentation(const GradedModulePresentation &m);

FreeResolution free_resolution(const GradedModulePresentation &m);

} // namespace mflef
