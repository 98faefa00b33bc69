#pragma once

#include "mflef/groebner.hpp"
#include "mflef/mfcore.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mflef {

// Workspace documents: line-oriented, '#' starts a comment.
//
//   [potential]
//   vars = x, y                 # optional ring for the entries below
//   w = x^3 + y^3
//   [symmetry]
//   t = zeta(3)^[1,0] for w     # 'for w' runs check_symmetry at load
//   [mf]
//   A = mf(w, {x; y}, {x^2, ...})
//   K = koszul(w, {a1, a2}, {b1, b2})
//   T = tensor(w, A, B)
//   [morphism]
//   al = morphism(A -> t*A, even, {...})
//   be = inverse(al)
//   nat = natural(A, t)         # diagonal A -> t*A
//   id = identity(A)
//   [module]
//   vars = x, y
//   M = module({0, 1}, {x, y, 0; 0, 0, x})
//   [case]
//   caseA = hlf-verify A A t al be expect 1 - zeta(3)^2
//
// A value continues on following lines while a brace or parenthesis is open. Derived
// entries (koszul, tensor, inverse, natural, identity) are expanded at load
// time, so serialize() writes them back in explicit form.

struct SymmetryEntry {
  Symmetry t;
  std::string potential; // empty when unbound
};

struct MFEntry {
  std::string potential;
  MatrixFactorization mf;
};

// "B" or "t*B"
struct MFRef {
  std::string symmetry;
  std::string mf;

  std::string str() const { return symmetry.empty() ? mf : symmetry + "*" + mf; }
  friend bool operator==(const MFRef &, const MFRef &) = default;
};

struct MorphismEntry {
  MFRef source, target;
  MFMorphism morphism;
};

struct CaseEntry {
  std::string command;
  std::vector<std::string> args;
  // "expect v": the first report's lhs must equal v
  std::optional<Scalar> expect;
  friend bool operator==(const CaseEntry &, const CaseEntry &) = default;
};

const std::vector<std::string> &command_names();

class Workspace {
public:
  std::map<std::string, Polynomial> potentials;
  std::map<std::string, SymmetryEntry> symmetries;
  std::map<std::string, MFEntry> mfs;
  std::map<std::string, MorphismEntry> morphisms;
  std::map<std::string, GradedModulePresentation> modules;
  std::map<std::string, CaseEntry> cases;

  // Each throws InputError naming the missing entity.
  const Polynomial &potential(const std::string &name) const;
  const Symmetry &symmetry(const std::string &name) const;
  const MatrixFactorization &mf(const std::string &name) const;
  const MFMorphism &morphism(const std::string &name) const;
  const GradedModulePresentation &module(const std::string &name) const;
  const CaseEntry &case_entry(const std::string &name) const;

  MatrixFactorization resolve(const MFRef &ref) const;
  // "potential", "symmetry", ... or nullopt.
  std::optional<std::string> kind_of(const std::string &name) const;
};

bool operator==(const Workspace &a, const Workspace &b);

// SyntaxError (with line and column) or ValidationError / InputError naming
// the line and entity.
Workspace parse_document(std::string_view text);
std::string serialize(const Workspace &ws);

} // namespace mflef
