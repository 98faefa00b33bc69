#include "mflef/groebner.hpp"

#include "mflef/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mflef {

bool pot_greater(std::uint32_t ca, const Monomial &ma, std::uint32_t cb, const Monomial &mb) {
  if (ca != cb)
    return ca < cb;
  return ma > mb;
}

namespace {

bool term_greater(const ModuleTerm &a, const ModuleTerm &b) {
  return pot_greater(a.comp, a.mono, b.comp, b.mono);
}

// terms[pos..] -= c * m * g, merging in place of a fresh vector.
void sub_multiple_from(std::vector<ModuleTerm> &terms, std::size_t pos, const Scalar &c,
                       const Monomial &m, const std::vector<ModuleTerm> &g) {
  std::vector<ModuleTerm> out;
  out.reserve(terms.size() + g.size());
  for (std::size_t i = 0; i < pos; ++i)
    out.push_back(std::move(terms[i]));
  std::size_t i = pos, j = 0;
  while (i < terms.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(std::move(terms[i++]));
      continue;
    }
    ModuleTerm scaled{g[j].comp, g[j].mono * m, Scalar()};
    if (i < terms.size() && term_greater(terms[i], scaled)) {
      out.push_back(std::move(terms[i++]));
      continue;
    }
    if (i < terms.size() && terms[i].comp == scaled.comp && terms[i].mono == scaled.mono) {
      Scalar v = terms[i].coeff - c * g[j].coeff;
      if (!v.is_zero())
        out.push_back({scaled.comp, scaled.mono, std::move(v)});
      ++i;
      ++j;
      continue;
    }
    scaled.coeff = -(c * g[j].coeff);
    out.push_back(std::move(scaled));
    ++j;
  }
  terms = std::move(out);
}

} // namespace

ModuleElement ModuleElement::from_vec(const Vec &v) {
  ModuleElement e;
  for (std::size_t c = 0; c < v.size(); ++c)
    for (const auto &t : v[c].terms())
      e.terms_.push_back({static_cast<std::uint32_t>(c), t.mono, t.coeff});
  return e;
}

Vec ModuleElement::to_vec(const RingPtr &ring, std::size_t rank) const {
  std::vector<std::vector<Term>> parts(rank);
  for (const auto &t : terms_) {
    if (t.comp >= rank)
      throw InternalError("module element component out of range");
    parts[t.comp].push_back({t.mono, t.coeff});
  }
  Vec v;
  v.reserve(rank);
  for (auto &p : parts)
    v.push_back(Polynomial::from_sorted_terms(ring, std::move(p)));
  return v;
}

void ModuleElement::make_monic() {
  if (terms_.empty() || terms_.front().coeff.is_one())
    return;
  const Scalar inv = terms_.front().coeff.inverse();
  for (auto &t : terms_)
    t.coeff *= inv;
}

void ModuleElement::sub_multiple(const Scalar &c, const Monomial &m, const ModuleElement &g) {
  sub_multiple_from(terms_, 0, c, m, g.terms_);
}

namespace {

struct Pair {
  std::size_t i, j;
  std::uint32_t comp;
  Monomial lcm;
};

bool pair_before(const Pair &a, const Pair &b) {
  const auto da = a.lcm.degree(), db = b.lcm.degree();
  if (da != db)
    return da < db;
  if (a.comp != b.comp || a.lcm != b.lcm)
    return pot_greater(b.comp, b.lcm, a.comp, a.lcm);
  if (a.j != b.j)
    return a.j < b.j;
  return a.i < b.i;
}

class Buchberger {
public:
  Buchberger(std::size_t rank, bool ideal) : ideal_(ideal), by_comp_(rank) {}

  void add_input(ModuleElement f) {
    f = reduce(std::move(f));
    if (!f.is_zero())
      insert(std::move(f));
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), pair_before);
      const Pair p = *best;
      pairs_.erase(best);
      ModuleElement s = polys_[p.i];
      const auto &gi = polys_[p.i].lead(), &gj = polys_[p.j].lead();
      // Both operands are monic.
      ModuleElement a;
      a.terms() = s.terms();
      for (auto &t : a.terms())
        t.mono = t.mono * (p.lcm / gi.mono);
      a.sub_multiple(Scalar(1), p.lcm / gj.mono, polys_[p.j]);
      a = reduce(std::move(a));
      if (!a.is_zero())
        insert(std::move(a));
    }
  }

  std::vector<ModuleElement> result() {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i])
        keep.push_back(i);
    std::vector<ModuleElement> out;
    for (auto i : keep) {
      active_[i] = false;
      out.push_back(reduce(polys_[i]));
      active_[i] = true;
    }
    for (auto &e : out)
      e.make_monic();
    std::sort(out.begin(), out.end(), [](const ModuleElement &a, const ModuleElement &b) {
      return pot_greater(b.lead().comp, b.lead().mono, a.lead().comp, a.lead().mono);
    });
    return out;
  }

private:
  const ModuleElement *divisor(const ModuleTerm &t) const {
    for (auto k : by_comp_[t.comp])
      if (active_[k] && polys_[k].lead().mono.divides(t.mono))
        return &polys_[k];
    return nullptr;
  }

  ModuleElement reduce(ModuleElement f) const {
    auto &terms = f.terms();
    std::size_t pos = 0;
    while (pos < terms.size()) {
      const ModuleTerm &t = terms[pos];
      const ModuleElement *g = divisor(t);
      if (!g) {
        ++pos;
        continue;
      }
      const Scalar c = t.coeff / g->lead().coeff;
      const Monomial q = t.mono / g->lead().mono;
      sub_multiple_from(terms, pos, c, q, g->terms());
    }
    f.make_monic();
    return f;
  }

  void insert(ModuleElement h) {
    const std::size_t hi = polys_.size();
    const auto comp = h.lead().comp;
    const Monomial lh = h.lead().mono;
    polys_.push_back(std::move(h));
    active_.push_back(true);

    // Gebauer-Moeller update. The coprime-lead shortcut is valid for ideals only.
    std::vector<Pair> fresh;
    for (auto g : by_comp_[comp])
      if (active_[g])
        fresh.push_back({g, hi, comp, lcm(polys_[g].lead().mono, lh)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const Pair &p = fresh[a];
      const bool coprime = ideal_ && polys_[p.i].lead().mono.coprime(lh);
      bool dominated = false;
      for (std::size_t b = a + 1; b < fresh.size() && !dominated; ++b)
        dominated = fresh[b].lcm.divides(p.lcm);
      for (std::size_t b = 0; b < kept.size() && !dominated; ++b)
        dominated = kept[b].lcm.divides(p.lcm);
      if (coprime || !dominated)
        kept.push_back(p);
    }
    std::erase_if(pairs_, [&](const Pair &p) {
      if (p.comp != comp || !lh.divides(p.lcm))
        return false;
      return lcm(polys_[p.i].lead().mono, lh) != p.lcm && lcm(polys_[p.j].lead().mono, lh) != p.lcm;
    });
    for (auto &p : kept)
      if (!(ideal_ && polys_[p.i].lead().mono.coprime(lh)))
        pairs_.push_back(p);

    for (auto g : by_comp_[comp])
      if (active_[g] && lh.divides(polys_[g].lead().mono))
        active_[g] = false;
    by_comp_[comp].push_back(hi);
  }

  bool ideal_;
  std::vector<ModuleElement> polys_;
  std::vector<bool> active_;
  std::vector<std::vector<std::size_t>> by_comp_;
  std::vector<Pair> pairs_;
};

} // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::size_t rank, const std::vector<Vec> &generators)
    : ring_(std::move(ring)), rank_(rank), by_comp_(rank) {
  if (!ring_)
    throw InputError("Groebner basis needs a ring");
  Buchberger b(rank, rank == 1);
  std::vector<ModuleElement> input;
  for (const auto &g : generators) {
    if (g.size() != rank)
      throw InputError("generator has the wrong number of components");
    auto e = ModuleElement::from_vec(g);
    if (!e.is_zero())
      input.push_back(std::move(e));
  }
  std::sort(input.begin(), input.end(), [](const ModuleElement &a, const ModuleElement &b) {
    return pot_greater(b.lead().comp, b.lead().mono, a.lead().comp, a.lead().mono);
  });
  for (auto &e : input)
    b.add_input(std::move(e));
  b.run();
  basis_ = b.result();
  for (std::size_t i = 0; i < basis_.size(); ++i)
    by_comp_[basis_[i].lead().comp].push_back(i);
}

GroebnerBasis GroebnerBasis::ideal(RingPtr ring, const std::vector<Polynomial> &generators) {
  std::vector<Vec> g;
  for (const auto &p : generators)
    g.push_back({p});
  return GroebnerBasis(std::move(ring), 1, g);
}

std::vector<Vec> GroebnerBasis::generators() const {
  std::vector<Vec> out;
  for (const auto &e : basis_)
    out.push_back(e.to_vec(ring_, rank_));
  return out;
}

ModuleElement GroebnerBasis::reduce(ModuleElement f) const {
  auto &terms = f.terms();
  std::size_t pos = 0;
  while (pos < terms.size()) {
    const ModuleTerm &t = terms[pos];
    const ModuleElement *g = nullptr;
    for (auto k : by_comp_[t.comp])
      if (basis_[k].lead().mono.divides(t.mono)) {
        g = &basis_[k];
        break;
      }
    if (!g) {
      ++pos;
      continue;
    }
    const Scalar c = t.coeff; // basis elements are monic
    const Monomial q = t.mono / g->lead().mono;
    sub_multiple_from(terms, pos, c, q, g->terms());
  }
  return f;
}

Vec GroebnerBasis::normal_form(const Vec &f) const {
  if (f.size() != rank_)
    throw InputError("element has the wrong number of components");
  return reduce(ModuleElement::from_vec(f)).to_vec(ring_, rank_);
}

Polynomial GroebnerBasis::normal_form(const Polynomial &f) const {
  if (rank_ != 1)
    throw InputError("polynomial normal form needs an ideal basis");
  return normal_form(Vec{f})[0];
}

bool GroebnerBasis::contains(const Vec &f) const {
  return reduce(ModuleElement::from_vec(f)).is_zero();
}

std::optional<std::vector<StandardMonomial>> GroebnerBasis::standard_monomials() const {
  const std::size_t n = ring_->size();
  std::vector<StandardMonomial> out;
  for (std::size_t c = 0; c < rank_; ++c) {
    std::vector<Monomial> leads;
    bool has_unit = false;
    for (auto k : by_comp_[c]) {
      leads.push_back(basis_[k].lead().mono);
      has_unit = has_unit || leads.back().is_one();
    }
    if (has_unit)
      continue;
    std::vector<unsigned> bound(n, 0);
    for (const auto &m : leads)
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] && m.degree() == m[i] && (bound[i] == 0 || m[i] < bound[i]))
          bound[i] = m[i];
    for (std::size_t i = 0; i < n; ++i)
      if (bound[i] == 0)
        return std::nullopt;

    std::vector<Monomial> found;
    Monomial cur;
    auto divisible = [&](const Monomial &m) {
      return std::any_of(leads.begin(), leads.end(), [&](const Monomial &l) { return l.divides(m); });
    };
    auto dfs = [&](auto &&self, std::size_t var) -> void {
      if (var == n) {
        found.push_back(cur);
        return;
      }
      for (unsigned e = 0; e < bound[var]; ++e) {
        cur[var] = static_cast<std::uint16_t>(e);
        if (divisible(cur))
          break;
        self(self, var + 1);
      }
      cur[var] = 0;
    };
    dfs(dfs, 0);
    std::sort(found.begin(), found.end());
    for (auto &m : found)
      out.push_back({c, m});
  }
  return out;
}

std::vector<StandardMonomial> GroebnerBasis::finite_standard_monomials() const {
  auto s = standard_monomials();
  if (!s)
    throw NonIsolatedError("quotient is infinite-dimensional");
  return std::move(*s);
}

namespace {

std::vector<Vec> stacked_with_identity(const PolyMatrix &m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < c; ++j) {
    Vec v(r + c, Polynomial(m.ring()));
    for (std::size_t i = 0; i < r; ++i)
      v[i] = m(i, j);
    v[r + j] = Polynomial(m.ring(), Scalar(1));
    gens.push_back(std::move(v));
  }
  return gens;
}

PolyMatrix bottom_syzygies(const GroebnerBasis &gb, std::size_t r, std::size_t c) {
  std::vector<std::vector<Polynomial>> cols;
  for (const auto &e : gb.elements()) {
    if (e.lead().comp < r)
      continue;
    Vec v = e.to_vec(gb.ring(), r + c);
    cols.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
  }
  return PolyMatrix::from_columns(gb.ring(), c, cols);
}

} // namespace

PolyMatrix syzygy_basis(const PolyMatrix &m) {
  if (m.cols() == 0)
    return PolyMatrix(m.ring(), 0, 0);
  GroebnerBasis gb(m.ring(), m.rows() + m.cols(), stacked_with_identity(m));
  return bottom_syzygies(gb, m.rows(), m.cols());
}

Lifter::Lifter(const PolyMatrix &gens)
    : ring_(gens.ring()), rows_(gens.rows()), cols_(gens.cols()),
      gb_(gens.ring(), gens.rows() + gens.cols(), stacked_with_identity(gens)) {}

std::optional<Vec> Lifter::try_lift(const Vec &target) const {
  if (target.size() != rows_)
    throw InputError("lift target has the wrong length");
  Vec ext(rows_ + cols_, Polynomial(ring_));
  std::copy(target.begin(), target.end(), ext.begin());
  ModuleElement rem = gb_.reduce(ModuleElement::from_vec(ext));
  if (!rem.is_zero() && rem.lead().comp < rows_)
    return std::nullopt;
  Vec full = rem.to_vec(ring_, rows_ + cols_);
  Vec coeffs(full.begin() + static_cast<std::ptrdiff_t>(rows_), full.end());
  for (auto &p : coeffs)
    p = -p;
  return coeffs;
}

Vec Lifter::lift(const Vec &target) const {
  auto r = try_lift(target);
  if (!r)
    throw NotMemberError("element is not in the submodule");
  return std::move(*r);
}

PolyMatrix Lifter::lift_columns(const PolyMatrix &targets) const {
  std::vector<std::vector<Polynomial>> cols;
  for (std::size_t j = 0; j < targets.cols(); ++j)
    cols.push_back(lift(targets.column(j)));
  return PolyMatrix::from_columns(ring_, cols_, cols);
}

PolyMatrix Lifter::syzygies() const { return bottom_syzygies(gb_, rows_, cols_); }

PolyMatrix lift_through(const PolyMatrix &targets, const PolyMatrix &gens) {
  if (targets.rows() != gens.rows())
    throw InputError("lift targets and generators have different row counts");
  return Lifter(gens).lift_columns(targets);
}

std::vector<std::size_t> FreeResolution::ranks() const {
  std::vector<std::size_t> r;
  for (const auto &d : degrees)
    r.push_back(d.size());
  return r;
}

namespace {

std::optional<long> homogeneous_degree(const Polynomial &p) {
  if (p.is_zero())
    return std::nullopt;
  const long d = p.total_degree();
  for (const auto &t : p.terms())
    if (static_cast<long>(t.mono.degree()) != d)
      throw InputError("relation entry " + p.str() + " is not homogeneous");
  return d;
}

PolyMatrix select_columns(const PolyMatrix &m, const std::vector<std::size_t> &keep) {
  std::vector<std::vector<Polynomial>> cols;
  for (auto j : keep)
    cols.push_back(m.column(j));
  return PolyMatrix::from_columns(m.ring(), m.rows(), cols);
}

// Irredundant homogeneous generators of the column module, lowest degree first.
std::pair<PolyMatrix, std::vector<long>> minimal_columns(const PolyMatrix &m,
                                                         const std::vector<long> &row_degrees) {
  const auto deg = column_degrees(m, row_degrees);
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i)
      zero = m(i, j).is_zero();
    if (!zero)
      order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
  std::vector<std::size_t> keep;
  std::optional<GroebnerBasis> gb;
  for (auto j : order) {
    if (!keep.empty()) {
      if (!gb) {
        std::vector<Vec> gens;
        for (auto k : keep)
          gens.push_back(m.column(k));
        gb.emplace(m.ring(), m.rows(), gens);
      }
      if (gb->contains(m.column(j)))
        continue;
    }
    keep.push_back(j);
    gb.reset();
  }
  std::vector<long> kd;
  for (auto j : keep)
    kd.push_back(deg[j]);
  return {select_columns(m, keep), kd};
}

} // namespace

std::vector<long> column_degrees(const PolyMatrix &m, const std::vector<long> &row_degrees) {
  if (row_degrees.size() != m.rows())
    throw InputError("row degree count does not match the matrix");
  std::vector<long> out(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::optional<long> d;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto e = homogeneous_degree(m(i, j));
      if (!e)
        continue;
      const long v = *e + row_degrees[i];
      if (d && *d != v)
        throw InputError("column " + std::to_string(j) + " is not homogeneous");
      d = v;
    }
    out[j] = d.value_or(0);
  }
  return out;
}

GradedModulePresentation minimize_presentation(const GradedModulePresentation &m) {
  if (m.relations.rows() != m.degrees.size())
    throw InputError("relation matrix rows do not match the generator count");
  column_degrees(m.relations, m.degrees);
  PolyMatrix rel = m.relations;
  std::vector<long> deg = m.degrees;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t j = 0; j < rel.cols() && !unit; ++j)
      for (std::size_t i = 0; i < rel.rows() && !unit; ++i)
        if (!rel(i, j).is_zero() && rel(i, j).is_constant())
          unit = {i, j};
    if (!unit)
      break;
    const auto [g, col] = *unit;
    const Scalar inv = rel(g, col).constant_term().inverse();
    PolyMatrix next(rel.ring(), rel.rows() - 1, rel.cols() - 1);
    for (std::size_t j = 0, nj = 0; j < rel.cols(); ++j) {
      if (j == col)
        continue;
      const Polynomial f = rel(g, j) * inv;
      for (std::size_t i = 0, ni = 0; i < rel.rows(); ++i) {
        if (i == g)
          continue;
        next(ni++, nj) = rel(i, j) - f * rel(i, col);
      }
      ++nj;
    }
    rel = std::move(next);
    deg.erase(deg.begin() + static_cast<std::ptrdiff_t>(g));
  }
  auto [cols, cdeg] = minimal_columns(rel, deg);
  return {m.ring, deg, cols};
}

FreeResolution free_resolution(const GradedModulePresentation &m) {
  const auto p = minimize_presentation(m);
  FreeResolution res{p.ring, {p.degrees}, {}};
  PolyMatrix current = p.relations;
  std::vector<long> row_deg = p.degrees;
  while (current.cols() > 0) {
    const auto cdeg = column_degrees(current, row_deg);
    res.maps.push_back(current);
    res.degrees.push_back(cdeg);
    if (res.maps.size() > p.ring->size() + 1)
      throw InternalError("resolution longer than the variable count allows");
    auto [next, ndeg] = minimal_columns(syzygy_basis(current), cdeg);
    current = std::move(next);
    row_deg = cdeg;
  }
  return res;
}

} // namespace mflef
