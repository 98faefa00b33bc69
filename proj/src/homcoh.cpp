#include "mflef/homcoh.hpp"

#include "mflef/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace mflef {

namespace {

PolyMatrix as_column(const RingPtr &ring, const Vec &v) {
  PolyMatrix m(ring, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    m(i, 0) = v[i];
  return m;
}

void check_even_closed(const MFMorphism &m, const char *name) {
  if (m.parity != 0)
    throw InputError(std::string(name) + " must be even");
  if (!morphism_closed(m))
    throw InputError(std::string(name) + " is not closed");
}

void check_structure(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                     const MFMorphism &alpha, const MFMorphism &beta) {
  check_even_closed(alpha, "alpha");
  check_even_closed(beta, "beta");
  if (!(alpha.source == a) || !(alpha.target == pullback(t, a)))
    throw InputError("alpha must map A to its pullback");
  if (!(beta.source == pullback(t, b)) || !(beta.target == b))
    throw InputError("beta must map the pullback of B to B");
}

Scalar monomial_character(const Symmetry &t, const Monomial &m) {
  Scalar c(1);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (m[i])
      c *= Scalar::zeta(t[i].order, t[i].exponent * m[i]);
  return c;
}

void monomials_of_weight(std::span<const long> w, long k, std::size_t i, Monomial &cur,
                         std::vector<Monomial> &out) {
  if (i + 1 == w.size()) {
    if (k % w[i] == 0) {
      cur[i] = static_cast<std::uint16_t>(k / w[i]);
      out.push_back(cur);
      cur[i] = 0;
    }
    return;
  }
  for (long e = 0; e * w[i] <= k; ++e) {
    cur[i] = static_cast<std::uint16_t>(e);
    monomials_of_weight(w, k - e * w[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

// Trace of T on ker D, using the free-column normal form of the kernel basis.
Scalar kernel_trace(const Kernel &k, const ScalarMatrix &t) {
  Scalar s;
  for (std::size_t q = 0; q < k.free.size(); ++q) {
    const std::size_t f = k.free[q];
    for (std::size_t i = 0; i < t.cols(); ++i)
      if (!t(f, i).is_zero() && !k.basis(i, q).is_zero())
        s += t(f, i) * k.basis(i, q);
  }
  return s;
}

// Degree-e, parity-p piece of the Hom complex as (slot, monomial) pairs.
struct Piece {
  std::vector<std::pair<std::size_t, Monomial>> elems;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
};

class GradedHom {
public:
  GradedHom(const MatrixFactorization &a, const MatrixFactorization &b)
      : hx_(hom_complex(a, b)), da_(a.delta()), db_(b.delta()) {
    auto ws = detect_weights(a.potential());
    auto ga = infer_grading(a), gb = infer_grading(b);
    if (!ws || !ga || !gb)
      throw InputError("graded engine needs a quasi-homogeneous potential and graded factorizations");
    weights_ = ws->weights;
    dw_ = ws->degree;
    ga_ = *ga;
    gb_ = *gb;
    for (int p = 0; p < 2; ++p)
      for (std::size_t k = 0; k < hx_.slots[p].size(); ++k)
        slot_[p][hx_.slots[p][k]] = k;
  }

  long delta_degree() const { return dw_; }
  const std::vector<long> &weights() const { return weights_; }
  const std::vector<long> &source_degrees() const { return ga_; }
  const std::vector<long> &target_degrees() const { return gb_; }

  const Piece &piece(long e, int p) {
    auto key = std::make_pair(e, p);
    auto it = cache_.find(key);
    if (it != cache_.end())
      return it->second;
    Piece pc;
    for (std::size_t k = 0; k < hx_.slots[p].size(); ++k) {
      const auto [i, j] = hx_.slots[p][k];
      const long twice = ga_[j] + e - gb_[i];
      if (twice < 0 || twice % 2)
        continue;
      std::vector<Monomial> ms;
      Monomial cur;
      if (weights_.empty()) {
        if (twice == 0)
          ms.push_back(cur);
      } else {
        monomials_of_weight(weights_, twice / 2, 0, cur, ms);
      }
      for (const auto &m : ms) {
        pc.index[{k, m}] = pc.elems.size();
        pc.elems.emplace_back(k, m);
      }
    }
    return cache_.emplace(key, std::move(pc)).first->second;
  }

  // D from the (e, p) piece into the (e + D, 1 - p) piece.
  ScalarMatrix differential(long e, int p) {
    const Piece &src = piece(e, p);
    const Piece &dst = piece(e + dw_, 1 - p);
    ScalarMatrix m(dst.elems.size(), src.elems.size());
    const Scalar sign(p ? 1 : -1);
    for (std::size_t c = 0; c < src.elems.size(); ++c) {
      const auto [k, mono] = src.elems[c];
      const auto [i, j] = hx_.slots[p][k];
      for (std::size_t r = 0; r < db_.rows(); ++r)
        add(m, dst, c, 1 - p, r, j, db_(r, i).mul_term(mono, Scalar(1)));
      for (std::size_t q = 0; q < da_.cols(); ++q)
        add(m, dst, c, 1 - p, i, q, da_(j, q).mul_term(mono, sign));
    }
    return m;
  }

  // phi -> beta t^*(phi) alpha on the (e, p) piece.
  ScalarMatrix action(long e, int p, const Symmetry &t, const PolyMatrix &alpha, const PolyMatrix &beta) {
    const Piece &pc = piece(e, p);
    ScalarMatrix m(pc.elems.size(), pc.elems.size());
    for (std::size_t c = 0; c < pc.elems.size(); ++c) {
      const auto [k, mono] = pc.elems[c];
      const auto [i, j] = hx_.slots[p][k];
      const Scalar chi = monomial_character(t, mono);
      for (std::size_t r = 0; r < beta.rows(); ++r) {
        if (beta(r, i).is_zero())
          continue;
        const Polynomial left = beta(r, i).mul_term(mono, chi);
        for (std::size_t s = 0; s < alpha.cols(); ++s)
          if (!alpha(j, s).is_zero())
            add(m, pc, c, p, r, s, left * alpha(j, s));
      }
    }
    return m;
  }

private:
  void add(ScalarMatrix &m, const Piece &dst, std::size_t col, int p, std::size_t i, std::size_t j,
           const Polynomial &f) {
    if (f.is_zero())
      return;
    const std::size_t k = slot_[p].at({i, j});
    for (const auto &term : f.terms()) {
      auto it = dst.index.find({k, term.mono});
      if (it == dst.index.end())
        throw InputError("map is not homogeneous for the internal grading");
      m(it->second, col) += term.coeff;
    }
  }

  HomComplex hx_;
  PolyMatrix da_, db_;
  std::vector<long> weights_, ga_, gb_;
  long dw_ = 0;
  std::array<std::map<std::pair<std::size_t, std::size_t>, std::size_t>, 2> slot_;
  std::map<std::pair<long, int>, Piece> cache_;
};

} // namespace

Vec HomComplex::flatten(const PolyMatrix &phi, int p) const {
  if (phi.rows() != target.rank() || phi.cols() != source.rank())
    throw InputError("Hom element has the wrong shape");
  Vec v;
  for (const auto &[i, j] : slots[p])
    v.push_back(phi(i, j));
  return v;
}

PolyMatrix HomComplex::unflatten(const Vec &v, int p) const {
  PolyMatrix m(source.ring(), target.rank(), source.rank());
  for (std::size_t k = 0; k < slots[p].size(); ++k)
    m(slots[p][k].first, slots[p][k].second) = v[k];
  return m;
}

HomComplex hom_complex(const MatrixFactorization &a, const MatrixFactorization &b) {
  if (a.potential() != b.potential())
    throw InputError("Hom complex of factorizations of different potentials " + a.potential().str() +
                     " and " + b.potential().str());
  HomComplex hx{a, b, {}, {}};
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos[2];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const int p = (b.parity_of(i) + a.parity_of(j)) % 2;
      pos[p][{i, j}] = hx.slots[p].size();
      hx.slots[p].emplace_back(i, j);
    }
  const PolyMatrix da = a.delta(), db = b.delta();
  const RingPtr &ring = a.ring();
  for (int p = 0; p < 2; ++p) {
    PolyMatrix d(ring, hx.slots[1 - p].size(), hx.slots[p].size());
    const Scalar sign(p ? 1 : -1);
    for (std::size_t k = 0; k < hx.slots[p].size(); ++k) {
      const auto [i, j] = hx.slots[p][k];
      for (std::size_t r = 0; r < b.rank(); ++r)
        if (!db(r, i).is_zero())
          d(pos[1 - p].at({r, j}), k) += db(r, i);
      for (std::size_t c = 0; c < a.rank(); ++c)
        if (!da(j, c).is_zero())
          d(pos[1 - p].at({i, c}), k) += da(j, c) * sign;
    }
    hx.d[p] = std::move(d);
  }
  if (!(hx.d[1] * hx.d[0]).is_zero() || !(hx.d[0] * hx.d[1]).is_zero())
    throw InternalError("Hom differential does not square to zero");
  return hx;
}

CohomologyBasis::CohomologyBasis(HomComplex hx) : hx_(std::move(hx)) {
  const RingPtr &ring = hx_.source.ring();
  for (int p = 0; p < 2; ++p) {
    const PolyMatrix &d = hx_.d[p];
    kernel_[p] = d.rows() == 0 ? PolyMatrix::identity(ring, d.cols()) : syzygy_basis(d);
    const std::size_t c = kernel_[p].cols();
    if (c == 0)
      continue;
    lifter_[p] = std::make_unique<Lifter>(kernel_[p]);
    std::vector<Vec> gens;
    const PolyMatrix &image = hx_.d[1 - p];
    if (image.cols() > 0) {
      const PolyMatrix lifted = lifter_[p]->lift_columns(image);
      for (std::size_t q = 0; q < lifted.cols(); ++q)
        gens.push_back(lifted.column(q));
    }
    const PolyMatrix syz = lifter_[p]->syzygies();
    for (std::size_t q = 0; q < syz.cols(); ++q)
      gens.push_back(syz.column(q));
    relations_[p] = GroebnerBasis(ring, c, gens);
    auto std_monos = relations_[p].standard_monomials();
    if (!std_monos)
      throw NonIsolatedError("Hom cohomology is infinite-dimensional");
    basis_[p] = *std_monos;
    for (std::size_t k = 0; k < basis_[p].size(); ++k) {
      const auto &s = basis_[p][k];
      index_[p][{s.comp, s.mono}] = k;
      Vec v = kernel_[p].column(s.comp);
      for (auto &x : v)
        x = x.mul_term(s.mono, Scalar(1));
      reps_[p].push_back(hx_.unflatten(v, p));
    }
  }
}

std::vector<Scalar> CohomologyBasis::coordinates(const PolyMatrix &cocycle, int p) const {
  const Vec v = hx_.flatten(cocycle, p);
  const RingPtr &ring = hx_.source.ring();
  if (hx_.d[p].rows() > 0 && !(hx_.d[p] * as_column(ring, v)).is_zero())
    throw InputError("element is not closed");
  std::vector<Scalar> out(basis_[p].size());
  if (basis_[p].empty())
    return out;
  const Vec y = relations_[p].normal_form(lifter_[p]->lift(v));
  for (std::size_t comp = 0; comp < y.size(); ++comp)
    for (const auto &t : y[comp].terms()) {
      auto it = index_[p].find({comp, t.mono});
      if (it == index_[p].end())
        throw InternalError("normal form left the standard basis");
      out[it->second] = t.coeff;
    }
  return out;
}

CohomologyBasis cohomology(const HomComplex &hx) { return CohomologyBasis(hx); }

InducedMap induced_endomorphism(const CohomologyBasis &h, const Symmetry &t, const MFMorphism &alpha,
                                const MFMorphism &beta) {
  const HomComplex &hx = h.complex();
  check_structure(hx.source, hx.target, t, alpha, beta);
  InducedMap out;
  for (int p = 0; p < 2; ++p) {
    const auto &reps = h.representatives(p);
    ScalarMatrix m(reps.size(), reps.size());
    for (std::size_t q = 0; q < reps.size(); ++q) {
      const PolyMatrix image = beta.map * reps[q].scale_substitute(t) * alpha.map;
      const auto c = h.coordinates(image, p);
      for (std::size_t r = 0; r < c.size(); ++r)
        m(r, q) = c[r];
    }
    out.blocks[p] = std::move(m);
  }
  return out;
}

Scalar supertrace_on_cohomology(const InducedMap &m) { return m.blocks[0].trace() - m.blocks[1].trace(); }

long default_window(const MatrixFactorization &a, const MatrixFactorization &b) {
  auto ws = detect_weights(a.potential());
  auto ga = infer_grading(a), gb = infer_grading(b);
  if (!ws || !ga || !gb)
    throw InputError("graded engine needs a quasi-homogeneous potential and graded factorizations");
  long socle = 0;
  for (auto q : ws->weights)
    socle += 2 * (ws->degree - 2 * q);
  long spread = 0;
  for (auto x : *ga)
    for (auto y : *gb)
      spread = std::max(spread, std::labs(x - y));
  return socle + spread + 2 * ws->degree;
}

Scalar graded_euler_supertrace(const MatrixFactorization &a, const MatrixFactorization &b, const Symmetry &t,
                               const MFMorphism &alpha, const MFMorphism &beta, long window) {
  check_structure(a, b, t, alpha, beta);
  GradedHom g(a, b);
  const long dw = g.delta_degree();
  // T commutes with D, so on the image of the previous piece
  // tr(T | im) = tr(T | C_prev) - tr(T | ker_prev).
  std::map<std::pair<long, int>, std::pair<Scalar, Scalar>> traces; // (tr C, tr ker)
  auto piece_traces = [&](long e, int p) -> const std::pair<Scalar, Scalar> & {
    auto it = traces.find({e, p});
    if (it != traces.end())
      return it->second;
    std::pair<Scalar, Scalar> tr;
    if (!g.piece(e, p).elems.empty()) {
      const ScalarMatrix act = g.action(e, p, t, alpha.map, beta.map);
      tr.first = act.trace();
      const ScalarMatrix dout = g.differential(e, p);
      if (dout.rows() == 0)
        tr.second = tr.first;
      else
        tr.second = kernel_trace(kernel(dout), act);
    }
    return traces.emplace(std::make_pair(e, p), tr).first->second;
  };
  Scalar total;
  for (long e = -window; e <= window; ++e)
    for (int p = 0; p < 2; ++p) {
      if (g.piece(e, p).elems.empty())
        continue;
      const auto &here = piece_traces(e, p);
      const auto &prev = piece_traces(e - dw, 1 - p);
      const Scalar h = here.second - (prev.first - prev.second);
      total += p ? -h : h;
    }
  return total;
}

} // namespace mflef
