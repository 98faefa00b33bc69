#include "mflef/hilbert.hpp"

#include "mflef/errors.hpp"
#include "mflef/milnor.hpp"

namespace mflef {

namespace {

void trim(IntPoly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

void require_annihilates(const GradedModulePresentation &m, const Polynomial &w) {
  if (!same_ring(m.ring, w.ring()))
    throw InputError("module and potential live in different rings");
  const Lifter rel(m.relations);
  for (std::size_t j = 0; j < m.degrees.size(); ++j) {
    Vec v(m.degrees.size(), Polynomial(m.ring));
    v[j] = w;
    if (!rel.contains(v))
      throw InputError("potential " + w.str() + " does not annihilate the module");
  }
}

void require_even_homogeneous(const Polynomial &w) {
  if (w.is_zero())
    throw InputError("potential is zero");
  const long d = w.total_degree();
  for (const auto &t : w.terms())
    if (t.mono.degree() != d)
      throw InputError("potential " + w.str() + " is not homogeneous");
  if (d % 2)
    throw InputError("potential " + w.str() + " has odd degree " + std::to_string(d));
}

} // namespace

long evaluate(const IntPoly &p, long t) {
  long v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * t + *it;
  return v;
}

std::string int_poly_str(const IntPoly &p) {
  if (p.empty())
    return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long c = p[i];
    if (c == 0)
      continue;
    const long a = c < 0 ? -c : c;
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (i == 0 || a != 1)
      s += std::to_string(a);
    if (i > 0) {
      if (a != 1)
        s += "*";
      s += "t";
      if (i > 1)
        s += "^" + std::to_string(i);
    }
  }
  return s;
}

IntPoly chi_polynomial(const GradedModulePresentation &m) {
  for (long d : m.degrees)
    if (d < 0)
      throw InputError("negative generator degree " + std::to_string(d));
  const FreeResolution res = free_resolution(m);
  IntPoly chi;
  for (std::size_t i = 0; i < res.degrees.size(); ++i)
    for (long d : res.degrees[i]) {
      if (d < 0)
        throw InternalError("resolution has a generator of negative degree");
      if (chi.size() <= static_cast<std::size_t>(d))
        chi.resize(d + 1, 0);
      chi[d] += i % 2 ? -1 : 1;
    }
  trim(chi);
  return chi;
}

HilbertData multiplicity_data(const IntPoly &chi, std::size_t n) {
  HilbertData h;
  h.chi = chi;
  trim(h.chi);
  if (h.chi.empty())
    throw InputError("chi is zero: the module is zero");
  IntPoly e = h.chi;
  std::size_t order = 0;
  // divide by (1 - t) while t = 1 is a root: q_i = sum_{k <= i} p_k
  while (evaluate(e, 1) == 0) {
    IntPoly q(e.size() - 1);
    long acc = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      q[i] = acc += e[i];
    e = std::move(q);
    trim(e);
    ++order;
  }
  if (order > n)
    throw InputError("chi vanishes at t = 1 to order " + std::to_string(order) + " > " + std::to_string(n));
  h.krull_dim = n - order;
  h.multiplicity = std::move(e);
  return h;
}

EvenDivisibilityReport verify_even_multiplicity_divisibility(const GradedModulePresentation &m, const Polynomial &w) {
  require_even_homogeneous(w);
  require_annihilates(m, w);
  // finite-colength Jacobian, i.e. a smooth projective hypersurface
  MilnorAlgebra jac(w);
  EvenDivisibilityReport r;
  r.n = m.ring->size();
  r.data = multiplicity_data(chi_polynomial(m), r.n);
  r.e_at_minus_one = evaluate(r.data.multiplicity, -1);
  r.bound = static_cast<long>(r.data.krull_dim) - static_cast<long>(r.n / 2);
  if (r.e_at_minus_one != 0) {
    long v = 0;
    for (long e = r.e_at_minus_one; e % 2 == 0; e /= 2)
      ++v;
    r.valuation = v;
  }
  r.pass = r.bound <= 0 || !r.valuation || *r.valuation >= r.bound;
  return r;
}

LefschetzReport chi_stabilization_consistency(const GradedModulePresentation &m, const Polynomial &w) {
  require_even_homogeneous(w);
  const StabilizedModule st = stabilize_module(m, w);
  if (!st.involution)
    throw InternalError("stabilization of an even potential has no sign involution");
  const long chi = evaluate(chi_polynomial(m), -1);
  return make_report("chi-stabilization", supertrace_at_origin(*st.involution), Scalar(chi),
                     "str((-1)^*) at the origin", "chi_M(-1)");
}

} // namespace mflef
