#include "mflef/lefschetz.hpp"

#include "mflef/errors.hpp"
#include "mflef/parse.hpp"

namespace mflef {

const char *const kPairingConvention =
    "pairing on H(w_t) = (-1)^{m(m-1)/2} prod_{moving}(1 - t_i)^{-1} Res, m = number of fixed variables";

namespace {

Scalar moving_factor(const Symmetry &t) {
  Scalar f(1);
  for (const auto &ti : t)
    if (!ti.is_one())
      f *= Scalar(1) - ti.value();
  return f;
}

void require_all_moving(const Symmetry &t) {
  for (const auto &ti : t)
    if (ti.is_one())
      throw InputError("symmetry " + symmetry_str(t) + " fixes a coordinate");
}

struct Lhs {
  Scalar value;
  std::string engine;
  std::optional<bool> agree;
  std::vector<std::string> notes;
};

Lhs compute_lhs(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                const MFMorphism &alpha, const MFMorphism &beta, Engine engine) {
  Lhs out;
  if (engine == Engine::graded) {
    out.value = graded_euler_supertrace(a, b, t, alpha, beta, default_window(a, b));
    out.engine = "graded";
    return out;
  }
  out.value = lhs_hlf(a, b, t, alpha, beta);
  out.engine = "groebner";
  if (engine == Engine::both) {
    long window = default_window(a, b);
    Scalar g;
    for (int attempt = 0; attempt < 3; ++attempt, window *= 2) {
      g = graded_euler_supertrace(a, b, t, alpha, beta, window);
      if (g == out.value)
        break;
    }
    out.agree = g == out.value;
    out.engine = "groebner+graded";
    if (!*out.agree)
      out.notes.push_back("graded engine gave " + g.str() + " up to window " + std::to_string(window / 2));
  }
  return out;
}

} // namespace

Engine parse_engine(const std::string &name) {
  if (name == "groebner")
    return Engine::groebner;
  if (name == "graded")
    return Engine::graded;
  if (name == "both")
    return Engine::both;
  throw InputError("unknown engine " + name);
}

std::string engine_name(Engine e) {
  switch (e) {
  case Engine::groebner:
    return "groebner";
  case Engine::graded:
    return "graded";
  case Engine::both:
    return "both";
  }
  return "?";
}

LefschetzReport make_report(std::string name, Scalar lhs, Scalar rhs, std::string lhs_engine,
                            std::string rhs_engine) {
  LefschetzReport r;
  r.name = std::move(name);
  r.equal = lhs == rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.lhs_engine = std::move(lhs_engine);
  r.rhs_engine = std::move(rhs_engine);
  return r;
}

TraceSpaceElement boundary_bulk(const std::shared_ptr<const TraceSpace> &space, const MatrixFactorization &e,
                                const MFMorphism &alpha) {
  if (!(alpha.source == e) || !(alpha.target == pullback(space->t, e)))
    throw InputError("alpha must map the factorization to its pullback");
  if (!morphism_closed(alpha))
    throw InputError("alpha is not closed");
  const PolyMatrix delta = e.delta();
  PolyMatrix prod = alpha.map;
  for (auto f : space->fixed)
    prod = delta.derivative(f) * prod;
  Polynomial s = supertrace(prod, e.even_rank());
  // sign of the shuffle putting moving coordinates in front
  std::size_t inversions = 0;
  for (auto f : space->fixed)
    for (std::size_t m = f + 1; m < space->moving.size(); ++m)
      if (space->moving[m])
        ++inversions;
  if (inversions % 2)
    s = -s;
  return {space, space->algebra->normal_form(space->restrict(s))};
}

TraceSpaceElement boundary_bulk(const MatrixFactorization &e, const Symmetry &t, const MFMorphism &alpha) {
  auto space = std::make_shared<const TraceSpace>(trace_space(e.potential(), t));
  return boundary_bulk(space, e, alpha);
}

MFMorphism tilde_beta(const Symmetry &t, const MFMorphism &beta) {
  const Symmetry ti = inverse(t);
  if (!(beta.source == pullback(t, beta.target)))
    throw InputError("beta must map the pullback of B to B");
  const MatrixFactorization &b = beta.target;
  return MFMorphism(b, pullback(ti, b), beta.parity, beta.map.scale_substitute(ti));
}

Scalar rhs_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
               const MFMorphism &alpha, const MFMorphism &beta) {
  if (!morphism_closed(beta))
    throw InputError("beta is not closed");
  const TraceSpaceElement u = boundary_bulk(a, t, alpha);
  const TraceSpaceElement v = boundary_bulk(b, inverse(t), tilde_beta(t, beta));
  return canonical_pairing(u, v);
}

Scalar lhs_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
               const MFMorphism &alpha, const MFMorphism &beta) {
  const CohomologyBasis h = cohomology(hom_complex(a, b));
  return supertrace_on_cohomology(induced_endomorphism(h, t, alpha, beta));
}

LefschetzReport verify_hlf(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                           const MFMorphism &alpha, const MFMorphism &beta, Engine engine) {
  Lhs l = compute_lhs(a, b, t, alpha, beta, engine);
  LefschetzReport r = make_report("hlf", l.value, rhs_hlf(a, b, t, alpha, beta), l.engine, "boundary-bulk+pairing");
  r.engines_agree = l.agree;
  r.notes = std::move(l.notes);
  r.notes.push_back(kPairingConvention);
  return r;
}

LefschetzReport verify_isolated(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                                const MFMorphism &alpha, const MFMorphism &beta, Engine engine) {
  require_all_moving(t);
  Lhs l = compute_lhs(a, b, t, alpha, beta, engine);
  const Scalar rhs = supertrace_at_origin(alpha) * supertrace_at_origin(beta) * moving_factor(t).inverse();
  LefschetzReport r = make_report("isolated", l.value, rhs, l.engine, "origin supertraces");
  r.engines_agree = l.agree;
  r.notes = std::move(l.notes);
  return r;
}

LefschetzReport lunts_check(const Polynomial &w, const Symmetry &t) {
  const TraceSpace space = trace_space(w, t);
  const MilnorAlgebra full(w);
  Scalar tr;
  for (std::size_t j = 0; j < full.milnor_number(); ++j) {
    const Polynomial b(w.ring(), full.basis()[j]);
    tr += full.coordinates(b.scale_substitute(t))[j];
  }
  Scalar prod(1);
  for (const auto &ti : t)
    prod *= ti.value();
  const std::size_t n = w.nvars();
  const Scalar lhs = (n % 2 ? Scalar(-1) : Scalar(1)) * prod * tr;
  const long mu = static_cast<long>(space.algebra->milnor_number());
  const Scalar rhs((n - space.moving_count()) % 2 ? -mu : mu);
  LefschetzReport r = make_report("lunts", lhs, rhs, "trace on Milnor algebra", "sdim H(w_t)");
  r.notes.push_back("action f(x) dx -> f(tx) (prod t_i) dx");
  return r;
}

LefschetzReport zero_fixed_locus_check(const MatrixFactorization &a, const MatrixFactorization &b,
                                       const Symmetry &t, const MFMorphism &alpha, const MFMorphism &beta,
                                       Engine engine) {
  std::size_t fixed = 0;
  for (const auto &ti : t)
    if (ti.is_one())
      ++fixed;
  if (fixed % 2 == 0)
    throw InputError("fixed locus of " + symmetry_str(t) + " has even dimension");
  Lhs l = compute_lhs(a, b, t, alpha, beta, engine);
  LefschetzReport r = make_report("zero", l.value, Scalar(0), l.engine, "H(w_t) purely odd");
  r.engines_agree = l.agree;
  r.notes = std::move(l.notes);
  return r;
}

LefschetzReport trace_identity_check(const MatrixFactorization &a, const Symmetry &t, const MFMorphism &alpha,
                                     Engine engine) {
  require_all_moving(t);
  const MFMorphism inv = inverse_morphism(alpha);
  const Scalar lhs = supertrace_at_origin(alpha) * supertrace_at_origin(inv);
  Lhs l = compute_lhs(a, a, t, alpha, inv, engine);
  LefschetzReport r =
      make_report("trace-identity", lhs, l.value * moving_factor(t), "origin supertraces", l.engine + " x prod(1-t_i)");
  r.engines_agree = l.agree;
  r.notes = std::move(l.notes);
  return r;
}

DivisibilityReport divisibility_check(const MatrixFactorization &a, const Symmetry &t, const MFMorphism &alpha,
                                      long p) {
  if (!is_prime(p))
    throw InputError(std::to_string(p) + " is not prime");
  require_all_moving(t);
  for (const auto &ti : t)
    if (p % ti.element_order() != 0)
      throw InputError("symmetry " + symmetry_str(t) + " is not of order " + std::to_string(p));
  if (a.even_rank() != a.odd_rank())
    throw InputError("virtual rank of the factorization is not zero");
  if (!morphism_closed(alpha) || !equivariance_power_check(alpha, t, p))
    throw InputError("alpha is not a Z/" + std::to_string(p) + "-equivariant structure");
  DivisibilityReport r;
  r.p = p;
  r.n = a.ring()->size();
  r.supertrace = supertrace_at_origin(alpha);
  r.valuation = one_minus_zeta_valuation(r.supertrace, p);
  r.bound = static_cast<long>((r.n + 1) / 2);
  r.m_max = r.bound >= 1 ? (r.bound - 1) / (p - 1) : 0;
  r.pass = !r.valuation || *r.valuation >= r.bound;
  return r;
}

} // namespace mflef
