#include "mflef/mfcore.hpp"

#include "mflef/errors.hpp"

#include <bit>
#include <deque>
#include <sstream>

namespace mflef {

namespace {

PolyMatrix scalar_identity(const RingPtr &ring, std::size_t n, const Polynomial &w) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = w;
  return m;
}

void check_composite(const char *what, const PolyMatrix &p, const Polynomial &w) {
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const Polynomial want = i == j ? w : Polynomial(w.ring());
      if (p(i, j) != want)
        throw ValidationError(std::string(what) + " differs from w*id at (" + std::to_string(i) + ", " +
                              std::to_string(j) + "): got " + p(i, j).str() + ", expected " +
                              want.str());
    }
}

// Splits a full operator on r0 + r1 generators into its off-diagonal blocks.
MatrixFactorization from_full(const Polynomial &w, const PolyMatrix &full, std::size_t r0) {
  const std::size_t n = full.rows(), r1 = n - r0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i < r0) == (j < r0) && !full(i, j).is_zero())
        throw InternalError("operator is not odd");
  return MatrixFactorization(w, full.block(r0, 0, r1, r0), full.block(0, r0, r0, r1));
}

std::vector<std::size_t> name_map(const RingPtr &from, const RingPtr &to) {
  std::vector<std::size_t> idx(from->size());
  for (std::size_t i = 0; i < from->size(); ++i) {
    auto j = to->index_of(from->names()[i]);
    if (!j)
      throw InputError("variable " + from->names()[i] + " is missing from the target ring");
    idx[i] = *j;
  }
  return idx;
}

Polynomial homogeneous_part(const Polynomial &f, long degree) {
  std::vector<Term> keep;
  for (const auto &t : f.terms())
    if (t.mono.degree() == degree)
      keep.push_back(t);
  return Polynomial::from_sorted_terms(f.ring(), std::move(keep));
}

} // namespace

MatrixFactorization::MatrixFactorization(Polynomial w, PolyMatrix d0, PolyMatrix d1)
    : w_(std::move(w)), d0_(std::move(d0)), d1_(std::move(d1)) {
  validate_mf(w_, d0_, d1_);
}

void validate_mf(const Polynomial &w, const PolyMatrix &d0, const PolyMatrix &d1) {
  if (d1.rows() != d0.cols() || d1.cols() != d0.rows())
    throw ValidationError("block shapes " + std::to_string(d0.rows()) + "x" + std::to_string(d0.cols()) +
                          " and " + std::to_string(d1.rows()) + "x" + std::to_string(d1.cols()) +
                          " do not compose");
  if ((d0.ring() && !same_ring(d0.ring(), w.ring())) || (d1.ring() && !same_ring(d1.ring(), w.ring())))
    throw ValidationError("blocks and potential live in different rings");
  check_composite("d1*d0", d1 * d0, w);
  check_composite("d0*d1", d0 * d1, w);
}

PolyMatrix MatrixFactorization::delta() const {
  const std::size_t r0 = even_rank(), r1 = odd_rank();
  PolyMatrix m(ring(), r0 + r1, r0 + r1);
  m.set_block(0, r0, d1_);
  m.set_block(r0, 0, d0_);
  return m;
}

MatrixFactorization MatrixFactorization::embed(const RingPtr &target) const {
  auto f = [&](const Polynomial &p) { return mflef::embed(p, target); };
  PolyMatrix d0(target, d0_.rows(), d0_.cols()), d1(target, d1_.rows(), d1_.cols());
  for (std::size_t i = 0; i < d0.rows(); ++i)
    for (std::size_t j = 0; j < d0.cols(); ++j)
      d0(i, j) = f(d0_(i, j));
  for (std::size_t i = 0; i < d1.rows(); ++i)
    for (std::size_t j = 0; j < d1.cols(); ++j)
      d1(i, j) = f(d1_(i, j));
  return MatrixFactorization(f(w_), d0, d1);
}

std::string MatrixFactorization::str() const {
  std::ostringstream os;
  os << "MF of " << w_.str() << ", ranks (" << even_rank() << ", " << odd_rank() << "), d0 = " << d0_.str()
     << ", d1 = " << d1_.str();
  return os.str();
}

bool operator==(const MatrixFactorization &a, const MatrixFactorization &b) {
  return a.w_ == b.w_ && a.d0_ == b.d0_ && a.d1_ == b.d1_;
}

RingPtr union_ring(const RingPtr &a, const RingPtr &b) {
  std::vector<std::string> names = a->names();
  for (const auto &n : b->names())
    if (!a->index_of(n))
      names.push_back(n);
  return make_ring(names);
}

Polynomial embed(const Polynomial &f, const RingPtr &target) {
  if (!f.ring())
    return Polynomial(target);
  if (same_ring(f.ring(), target))
    return f;
  return f.map_variables(target, name_map(f.ring(), target));
}

MatrixFactorization koszul_mf(const RingPtr &ring, const Vec &a, const Vec &b) {
  if (a.size() != b.size())
    throw InputError("Koszul sequences have lengths " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  const std::size_t r = a.size();
  if (r > 12)
    throw InputError("Koszul factorization of length " + std::to_string(r) + " is too large");
  const std::size_t n = std::size_t(1) << r;
  std::vector<std::size_t> order, pos(n);
  for (int parity = 0; parity < 2; ++parity)
    for (std::size_t s = 0; s < n; ++s)
      if (std::popcount(s) % 2 == parity) {
        pos[s] = order.size();
        order.push_back(s);
      }
  Polynomial w(ring);
  for (std::size_t i = 0; i < r; ++i)
    w += embed(a[i], ring) * embed(b[i], ring);
  PolyMatrix full(ring, n, n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t bit = std::size_t(1) << i;
      const int sign = std::popcount(s & (bit - 1)) % 2 ? -1 : 1;
      if (s & bit)
        full(pos[s ^ bit], pos[s]) += embed(b[i], ring) * Scalar(sign);
      else
        full(pos[s | bit], pos[s]) += embed(a[i], ring) * Scalar(sign);
    }
  return from_full(w, full, n / 2 + (r == 0 ? 1 : 0));
}

MatrixFactorization tensor_mf(const MatrixFactorization &e1, const MatrixFactorization &e2) {
  const RingPtr ring = union_ring(e1.ring(), e2.ring());
  const MatrixFactorization a = e1.embed(ring), b = e2.embed(ring);
  const PolyMatrix da = a.delta(), db = b.delta();
  const std::size_t na = a.rank(), nb = b.rank();
  std::vector<std::size_t> pos(na * nb);
  std::size_t r0 = 0, next = 0;
  for (int parity = 0; parity < 2; ++parity) {
    for (std::size_t u = 0; u < na; ++u)
      for (std::size_t v = 0; v < nb; ++v)
        if ((a.parity_of(u) + b.parity_of(v)) % 2 == parity)
          pos[u * nb + v] = next++;
    if (parity == 0)
      r0 = next;
  }
  PolyMatrix full(ring, na * nb, na * nb);
  for (std::size_t u = 0; u < na; ++u)
    for (std::size_t v = 0; v < nb; ++v) {
      const std::size_t src = pos[u * nb + v];
      for (std::size_t i = 0; i < na; ++i)
        if (!da(i, u).is_zero())
          full(pos[i * nb + v], src) += da(i, u);
      const Scalar sign(a.parity_of(u) ? -1 : 1);
      for (std::size_t j = 0; j < nb; ++j)
        if (!db(j, v).is_zero())
          full(pos[u * nb + j], src) += db(j, v) * sign;
    }
  return from_full(a.potential() + b.potential(), full, r0);
}

MatrixFactorization pullback(const Symmetry &t, const MatrixFactorization &e) {
  if (t.size() != e.ring()->size())
    throw InputError("symmetry has " + std::to_string(t.size()) + " entries for " +
                     std::to_string(e.ring()->size()) + " variables");
  if (!check_symmetry(e.potential(), t))
    throw InputError("pullback by a symmetry that does not preserve " + e.potential().str());
  return MatrixFactorization(e.potential(), e.d0().scale_substitute(t), e.d1().scale_substitute(t));
}

MatrixFactorization shift(const MatrixFactorization &e) {
  return MatrixFactorization(e.potential(), Scalar(-1) * e.d1(), Scalar(-1) * e.d0());
}

MatrixFactorization stabilized_diagonal(const Polynomial &w) {
  const RingPtr d = doubled_ring(w.ring());
  const std::size_t n = w.nvars();
  const Vec q = difference_quotients(w, d);
  Vec diff;
  for (std::size_t i = 0; i < n; ++i)
    diff.push_back(Polynomial::variable(d, n + i) - Polynomial::variable(d, i));
  return koszul_mf(d, q, diff);
}

MFMorphism::MFMorphism(MatrixFactorization src, MatrixFactorization tgt, int par, PolyMatrix m)
    : source(std::move(src)), target(std::move(tgt)), parity(par & 1), map(std::move(m)) {
  if (map.rows() != target.rank() || map.cols() != source.rank())
    throw InputError("morphism matrix is " + std::to_string(map.rows()) + "x" + std::to_string(map.cols()) +
                     ", expected " + std::to_string(target.rank()) + "x" + std::to_string(source.rank()));
  if (source.potential() != target.potential())
    throw InputError("morphism between factorizations of different potentials");
  for (std::size_t i = 0; i < map.rows(); ++i)
    for (std::size_t j = 0; j < map.cols(); ++j)
      if (!map(i, j).is_zero() && (target.parity_of(i) + source.parity_of(j)) % 2 != parity)
        throw InputError("morphism entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") has the wrong parity");
}

MFMorphism identity_morphism(const MatrixFactorization &e) {
  return MFMorphism(e, e, 0, PolyMatrix::identity(e.ring(), e.rank()));
}

MFMorphism compose(const MFMorphism &g, const MFMorphism &f) {
  if (!(g.source == f.target))
    throw InputError("composed morphisms do not match");
  return MFMorphism(f.source, g.target, f.parity + g.parity, g.map * f.map);
}

PolyMatrix morphism_differential(const MatrixFactorization &a, const MatrixFactorization &b, int parity,
                                 const PolyMatrix &phi) {
  const PolyMatrix left = b.delta() * phi, right = phi * a.delta();
  return parity % 2 ? left + right : left - right;
}

bool morphism_closed(const MFMorphism &phi) {
  return morphism_differential(phi.source, phi.target, phi.parity, phi.map).is_zero();
}

MFMorphism inverse_morphism(const MFMorphism &phi) {
  if (phi.parity != 0 || !phi.map.is_constant())
    throw InputError("only even morphisms with constant matrices are inverted");
  auto inv = inverse(phi.map.to_scalars());
  if (!inv)
    throw InputError("morphism matrix is singular");
  return MFMorphism(phi.target, phi.source, 0, PolyMatrix::from_scalars(phi.map.ring(), *inv));
}

MFMorphism pullback(const Symmetry &t, const MFMorphism &phi) {
  return MFMorphism(pullback(t, phi.source), pullback(t, phi.target), phi.parity, phi.map.scale_substitute(t));
}

MFMorphism diagonal_equivariant_structure(const MatrixFactorization &e, const Symmetry &t,
                                          const Scalar &scale) {
  const MatrixFactorization te = pullback(t, e);
  const PolyMatrix d = e.delta(), td = te.delta();
  const std::size_t n = e.rank();
  std::vector<std::optional<Scalar>> c(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (c[root])
      continue;
    c[root] = scale;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t g = queue.front();
      queue.pop_front();
      for (std::size_t h = 0; h < n; ++h) {
        // entry (i, j) forces c_i = chi * c_j with t^*d_ij = chi d_ij
        for (int dir = 0; dir < 2; ++dir) {
          const std::size_t i = dir ? g : h, j = dir ? h : g;
          const Polynomial &x = d(i, j);
          if (x.is_zero())
            continue;
          const Scalar chi = td(i, j).leading_term().coeff / x.leading_term().coeff;
          if (td(i, j) != x * chi)
            throw InputError("entry " + x.str() + " is not an eigenvector of the symmetry");
          const Scalar want = dir ? *c[g] / chi : chi * *c[g];
          if (!c[h]) {
            c[h] = want;
            queue.push_back(h);
          } else if (*c[h] != want) {
            throw InputError("no diagonal equivariant structure exists");
          }
        }
      }
    }
  }
  PolyMatrix m(e.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = Polynomial(e.ring(), *c[i]);
  MFMorphism alpha(e, te, 0, m);
  if (!morphism_closed(alpha))
    throw InternalError("diagonal structure is not closed");
  return alpha;
}

bool equivariance_power_check(const MFMorphism &alpha, const Symmetry &t, long p) {
  if (p < 1 || !is_identity([&] {
        Symmetry s(t.size());
        for (long k = 0; k < p; ++k)
          s = compose(s, t);
        return s;
      }()))
    return false;
  MFMorphism total = alpha;
  Symmetry tj = t;
  for (long j = 1; j < p; ++j) {
    total = compose(pullback(tj, alpha), total);
    tj = compose(tj, t);
  }
  return total.map == PolyMatrix::identity(alpha.source.ring(), alpha.source.rank());
}

OriginComplex restrict_to_origin(const MatrixFactorization &e) {
  return {e.even_rank(), e.odd_rank(), e.delta().at_origin()};
}

Polynomial supertrace(const PolyMatrix &m, std::size_t even_rank) {
  Polynomial s(m.ring());
  for (std::size_t i = 0; i < m.rows(); ++i)
    s += i < even_rank ? m(i, i) : -m(i, i);
  return s;
}

Scalar supertrace_at_origin(const MFMorphism &phi) {
  if (phi.parity)
    return Scalar(0);
  return supertrace(phi.map, phi.source.even_rank()).constant_term();
}

std::optional<std::vector<long>> infer_grading(const MatrixFactorization &e) {
  if (e.potential().is_zero())
    return std::nullopt;
  auto ws = detect_weights(e.potential());
  if (!ws)
    return std::nullopt;
  const PolyMatrix d = e.delta();
  const std::size_t n = e.rank();
  std::vector<std::optional<long>> deg(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (deg[root])
      continue;
    deg[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t g = queue.front();
      queue.pop_front();
      for (std::size_t h = 0; h < n; ++h)
        for (int dir = 0; dir < 2; ++dir) {
          const std::size_t i = dir ? g : h, j = dir ? h : g;
          if (d(i, j).is_zero())
            continue;
          auto wd = d(i, j).weighted_degree(ws->weights);
          if (!wd)
            return std::nullopt;
          // deg_i = deg_j + D - 2 wdeg
          const long step = ws->degree - 2 * *wd;
          const long want = dir ? *deg[g] - step : *deg[g] + step;
          if (!deg[h]) {
            deg[h] = want;
            queue.push_back(h);
          } else if (*deg[h] != want) {
            return std::nullopt;
          }
        }
    }
  }
  std::vector<long> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = *deg[i];
  return out;
}

StabilizedModule stabilize_module(const GradedModulePresentation &m, const Polynomial &w) {
  if (!same_ring(m.ring, w.ring()))
    throw InputError("module and potential live in different rings");
  const std::size_t g = m.degrees.size();
  const Lifter rel(m.relations);
  for (std::size_t j = 0; j < g; ++j) {
    Vec v(g, Polynomial(m.ring));
    v[j] = w;
    if (!rel.contains(v))
      throw InputError("potential " + w.str() + " does not annihilate the module");
  }
  const long dw = w.total_degree();
  for (const auto &t : w.terms())
    if (t.mono.degree() != dw)
      throw InputError("stabilization needs a homogeneous potential");

  StabilizedModule out;
  out.resolution = free_resolution(m);
  const FreeResolution &res = out.resolution;
  const std::size_t len = res.length();
  auto rk = [&](std::size_t i) { return res.degrees[i].size(); };
  auto d = [&](std::size_t i) { return res.maps[i - 1]; }; // F_i -> F_{i-1}

  // s[j][i] : F_i -> F_{i+2j+1}
  std::vector<std::vector<PolyMatrix>> s;
  for (std::size_t j = 0; 2 * j + 1 <= len; ++j) {
    s.emplace_back();
    for (std::size_t i = 0; i + 2 * j + 1 <= len; ++i) {
      PolyMatrix r = j == 0 ? scalar_identity(m.ring, rk(i), w) : PolyMatrix(m.ring, rk(i + 2 * j), rk(i));
      if (i >= 1)
        r = r - s[j][i - 1] * d(i);
      for (std::size_t b = 0; b < j; ++b) {
        const std::size_t a = j - 1 - b;
        r = r - s[a][i + 2 * b + 1] * s[b][i];
      }
      PolyMatrix sol;
      try {
        sol = lift_through(r, d(i + 2 * j + 1));
      } catch (const NotMemberError &) {
        throw InternalError("homotopy equation has no solution");
      }
      // keep the homogeneous component: degree of entry (p, q) is
      // deg q + (j + 1) deg w - deg p
      const auto &src = res.degrees[i], &tgt = res.degrees[i + 2 * j + 1];
      for (std::size_t p = 0; p < sol.rows(); ++p)
        for (std::size_t q = 0; q < sol.cols(); ++q)
          sol(p, q) = homogeneous_part(sol(p, q), src[q] + static_cast<long>(j + 1) * dw - tgt[p]);
      s[j].push_back(std::move(sol));
    }
  }

  // even generators: F_0, F_2, ...; odd: F_1, F_3, ...
  std::vector<std::size_t> offset(len + 1);
  std::size_t r0 = 0, r1 = 0;
  for (std::size_t i = 0; i <= len; i += 2) {
    offset[i] = r0;
    r0 += rk(i);
  }
  for (std::size_t i = 1; i <= len; i += 2) {
    offset[i] = r0 + r1;
    r1 += rk(i);
  }
  PolyMatrix full(m.ring, r0 + r1, r0 + r1);
  for (std::size_t i = 1; i <= len; ++i)
    full.set_block(offset[i - 1], offset[i], d(i));
  for (std::size_t j = 0; j < s.size(); ++j)
    for (std::size_t i = 0; i < s[j].size(); ++i)
      full.set_block(offset[i + 2 * j + 1], offset[i], s[j][i]);
  out.degrees.resize(r0 + r1);
  for (std::size_t i = 0; i <= len; ++i)
    for (std::size_t k = 0; k < rk(i); ++k)
      out.degrees[offset[i] + k] = res.degrees[i][k];
  try {
    out.mf = from_full(w, full, r0);
  } catch (const ValidationError &e) {
    throw InternalError(std::string("stabilized operator is not a factorization: ") + e.what());
  }

  if (dw % 2 == 0) {
    const Symmetry minus(w.nvars(), RootOfUnity(2, 1));
    PolyMatrix a(m.ring, r0 + r1, r0 + r1);
    for (std::size_t k = 0; k < r0 + r1; ++k)
      a(k, k) = Polynomial(m.ring, Scalar(out.degrees[k] % 2 ? -1 : 1));
    MFMorphism inv(out.mf, pullback(minus, out.mf), 0, a);
    if (!morphism_closed(inv))
      throw InternalError("degree parity does not commute with the stabilized operator");
    out.involution = std::move(inv);
  }
  return out;
}

} // namespace mflef
