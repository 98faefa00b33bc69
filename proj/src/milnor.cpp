#include "mflef/milnor.hpp"

#include "mflef/errors.hpp"
#include "mflef/parse.hpp"

#include <algorithm>

namespace mflef {

MilnorAlgebra::MilnorAlgebra(Polynomial w) : w_(std::move(w)) {
  if (!w_.ring())
    throw InputError("potential has no ring");
  const std::size_t n = w_.nvars();
  std::vector<Polynomial> jac;
  for (std::size_t i = 0; i < n; ++i)
    jac.push_back(w_.derivative(i));
  gb_ = GroebnerBasis::ideal(w_.ring(), jac);
  auto s = gb_.standard_monomials();
  if (!s)
    throw NonIsolatedError("potential " + w_.str() + " does not have an isolated singularity");
  for (const auto &m : *s)
    basis_.push_back(m.mono);

  if (n == 0) {
    residue_scale_ = Scalar(1);
    socle_index_ = 0;
    socle_degree_ = 0;
    return;
  }
  weights_ = detect_weights(w_);
  if (!weights_ || basis_.empty())
    return;
  long sd = 0;
  for (auto q : weights_->weights)
    sd += weights_->degree - 2 * q;
  socle_degree_ = sd;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].weighted_degree(weights_->weights) == sd) {
      if (socle_index_)
        throw InternalError("socle of " + w_.str() + " is not one-dimensional");
      socle_index_ = i;
    }
  if (!socle_index_)
    throw InternalError("no standard monomial in the socle degree of " + w_.str());
  const Scalar h = normal_form(hessian_determinant(w_)).coefficient(basis_[*socle_index_]);
  if (h.is_zero())
    throw InternalError("hessian of " + w_.str() + " vanishes in the Milnor algebra");
  residue_scale_ = Scalar(static_cast<long>(basis_.size())) / h;
}

Polynomial MilnorAlgebra::normal_form(const Polynomial &f) const {
  if (w_.nvars() == 0)
    return Polynomial(w_.ring(), f.constant_term());
  return gb_.normal_form(f);
}

std::vector<Scalar> MilnorAlgebra::coordinates(const Polynomial &f) const {
  const Polynomial nf = normal_form(f);
  std::vector<Scalar> c(basis_.size());
  for (const auto &t : nf.terms()) {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), t.mono);
    if (it == basis_.end() || *it != t.mono)
      throw InternalError("normal form has a non-standard monomial");
    c[static_cast<std::size_t>(it - basis_.begin())] = t.coeff;
  }
  return c;
}

ScalarMatrix MilnorAlgebra::multiplication_matrix(const Polynomial &f) const {
  ScalarMatrix m(basis_.size(), basis_.size());
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const auto c = coordinates(f.mul_term(basis_[j], Scalar(1)));
    for (std::size_t i = 0; i < c.size(); ++i)
      m(i, j) = c[i];
  }
  return m;
}

Scalar MilnorAlgebra::residue(const Polynomial &f) const {
  if (basis_.empty())
    return Scalar(0);
  if (!socle_index_)
    throw InputError("residue needs a quasi-homogeneous potential, got " + w_.str());
  return normal_form(f).coefficient(basis_[*socle_index_]) * residue_scale_;
}

ScalarMatrix MilnorAlgebra::gram_matrix() const {
  const std::size_t mu = basis_.size();
  ScalarMatrix g(mu, mu);
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j)
      g(i, j) = residue(Polynomial(ring(), basis_[i] * basis_[j]));
  return g;
}

int pairing_sign(std::size_t fixed_count) {
  const std::size_t m = fixed_count;
  return (m * (m - (m > 0 ? 1 : 0)) / 2) % 2 == 0 ? 1 : -1;
}

Polynomial TraceSpace::restrict(const Polynomial &f) const {
  std::vector<std::size_t> index(w.nvars(), 0);
  for (std::size_t j = 0; j < fixed.size(); ++j)
    index[fixed[j]] = j;
  return f.set_zero(moving).map_variables(fixed_ring, index);
}

TraceSpace trace_space(const Polynomial &w, const Symmetry &t) {
  if (t.size() != w.nvars())
    throw InputError("symmetry has " + std::to_string(t.size()) + " entries for " +
                     std::to_string(w.nvars()) + " variables");
  if (!check_symmetry(w, t))
    throw InputError(symmetry_str(t) + " is not a symmetry of " + w.str());
  TraceSpace s;
  s.w = w;
  s.t = t;
  s.moving.assign(t.size(), false);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s.moving[i] = !t[i].is_one();
    if (!s.moving[i]) {
      s.fixed.push_back(i);
      names.push_back(w.ring()->names()[i]);
    }
  }
  s.fixed_ring = make_ring(names);
  s.restricted = s.restrict(w);
  try {
    s.algebra = std::make_shared<const MilnorAlgebra>(s.restricted);
  } catch (const NonIsolatedError &) {
    throw NonIsolatedError("restriction " + s.restricted.str() +
                           " to the fixed locus is not an isolated singularity");
  }
  return s;
}

Scalar canonical_pairing(const TraceSpaceElement &u, const TraceSpaceElement &v) {
  const TraceSpace &a = *u.space, &b = *v.space;
  if (a.fixed != b.fixed || a.w != b.w)
    throw InputError("pairing needs trace spaces with the same fixed locus");
  if (!is_identity(compose(a.t, b.t)))
    throw InputError("pairing needs inverse symmetries");
  Scalar factor(pairing_sign(a.fixed.size()));
  for (std::size_t i = 0; i < a.t.size(); ++i)
    if (a.moving[i])
      factor *= (Scalar(1) - a.t[i].value()).inverse();
  std::vector<std::size_t> same(a.fixed.size());
  for (std::size_t j = 0; j < same.size(); ++j)
    same[j] = j;
  return factor * a.algebra->residue(u.cls * v.cls.map_variables(a.fixed_ring, same));
}

} // namespace mflef
