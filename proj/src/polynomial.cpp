#include "mflef/polynomial.hpp"

#include "mflef/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mflef {

Monomial::Monomial(std::span<const int> e) {
  if (e.size() > kMaxVariables)
    throw InputError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= (1 << 15))
      throw InputError("exponent out of range");
    exps[i] = static_cast<std::uint16_t>(e[i]);
  }
}

Monomial Monomial::variable(std::size_t i, unsigned power) {
  Monomial m;
  m.exps.at(i) = static_cast<std::uint16_t>(power);
  return m;
}

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw InputError("at most " + std::to_string(kMaxVariables) + " variables are supported");
}

std::optional<std::size_t> Ring::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr &a, const RingPtr &b) {
  if (a == b)
    return true;
  if (!a || !b)
    return false;
  return *a == *b;
}

namespace {

struct Descending {
  bool operator()(const Monomial &a, const Monomial &b) const { return a > b; }
};

} // namespace

Polynomial::Polynomial(RingPtr ring, const Scalar &c) : ring_(std::move(ring)) {
  if (!c.is_zero())
    terms_.push_back({Monomial{}, c});
}

Polynomial::Polynomial(RingPtr ring, const Monomial &m, const Scalar &c) : ring_(std::move(ring)) {
  if (!c.is_zero())
    terms_.push_back({m, c});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (!ring || i >= ring->size())
    throw InputError("variable index out of range");
  return Polynomial(std::move(ring), Monomial::variable(i));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

void Polynomial::normalize() {
  std::map<Monomial, Scalar, Descending> acc;
  for (auto &t : terms_) {
    auto [it, inserted] = acc.try_emplace(t.mono, t.coeff);
    if (!inserted)
      it->second += t.coeff;
  }
  terms_.clear();
  for (auto &[m, c] : acc)
    if (!c.is_zero())
      terms_.push_back({m, std::move(c)});
}

void Polynomial::check_ring(const Polynomial &o) {
  if (!o.ring_)
    return;
  if (!ring_) {
    ring_ = o.ring_;
    return;
  }
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
    throw InputError("polynomials live in different rings");
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one())
    return terms_.back().coeff;
  return Scalar(0);
}

Scalar Polynomial::coefficient(const Monomial &m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term &t, const Monomial &x) { return t.mono > x; });
  if (it != terms_.end() && it->mono == m)
    return it->coeff;
  return Scalar(0);
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto &t : terms_)
    d = std::max<long>(d, t.mono.degree());
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto &t : r.terms_)
    t.coeff = -t.coeff;
  return r;
}

Polynomial &Polynomial::operator+=(const Polynomial &o) {
  check_ring(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->mono > b->mono)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->mono > a->mono) {
      out.push_back(*b++);
    } else {
      Scalar c = a->coeff + b->coeff;
      if (!c.is_zero())
        out.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o) { return *this += -o; }

Polynomial &Polynomial::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &t : terms_)
    t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  Polynomial r(a.ring_ ? a.ring_ : b.ring_);
  if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_))
    throw InputError("polynomials live in different rings");
  if (a.is_zero() || b.is_zero())
    return r;
  if (b.terms_.size() == 1)
    return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
  if (a.terms_.size() == 1)
    return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
  std::map<Monomial, Scalar, Descending> acc;
  for (const auto &x : a.terms_)
    for (const auto &y : b.terms_) {
      const Monomial m = x.mono * y.mono;
      auto [it, inserted] = acc.try_emplace(m, x.coeff * y.coeff);
      if (!inserted)
        it->second += x.coeff * y.coeff;
    }
  for (auto &[m, c] : acc)
    if (!c.is_zero())
      r.terms_.push_back({m, std::move(c)});
  return r;
}

bool operator==(const Polynomial &a, const Polynomial &b) {
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Polynomial Polynomial::mul_term(const Monomial &m, const Scalar &c) const {
  Polynomial r(ring_);
  if (c.is_zero())
    return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order, so no re-sort is needed.
  for (const auto &t : terms_)
    r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ring_, Scalar(1)), base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  if (i >= nvars())
    throw InputError("derivative variable out of range");
  std::vector<Term> out;
  for (const auto &t : terms_) {
    if (t.mono[i] == 0)
      continue;
    Monomial m = t.mono;
    const long e = m[i];
    m[i] = static_cast<std::uint16_t>(e - 1);
    out.push_back({m, t.coeff * Scalar(e)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::scale_substitute(std::span<const Scalar> t) const {
  if (t.size() != nvars())
    throw InputError("substitution length does not match the variable count");
  std::vector<Term> out;
  for (const auto &term : terms_) {
    Scalar c = term.coeff;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (term.mono[i])
        c *= t[i].pow(term.mono[i]);
    out.push_back({term.mono, std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::scale_substitute(const Symmetry &t) const {
  if (t.size() != nvars())
    throw InputError("symmetry length does not match the variable count");
  std::vector<Term> out;
  for (const auto &term : terms_) {
    // Accumulate the exponent of each root of unity instead of multiplying scalars.
    long order = 1;
    for (const auto &z : t)
      order = std::lcm(order, z.order);
    long e = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      e += static_cast<long>(term.mono[i]) * t[i].exponent * (order / t[i].order);
    out.push_back({term.mono, term.coeff * Scalar::zeta(order, e % order)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::set_zero(const std::vector<bool> &vanish) const {
  Polynomial r(ring_);
  for (const auto &t : terms_) {
    bool keep = true;
    for (std::size_t i = 0; i < vanish.size() && keep; ++i)
      keep = !(vanish[i] && t.mono[i] > 0);
    if (keep)
      r.terms_.push_back(t);
  }
  return r;
}

Polynomial Polynomial::map_variables(RingPtr target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != nvars())
    throw InputError("variable map has the wrong length");
  std::vector<Term> out;
  for (const auto &t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < index_map.size(); ++i)
      if (t.mono[i]) {
        if (index_map[i] >= target->size())
          throw InputError("variable map target out of range");
        m[index_map[i]] = static_cast<std::uint16_t>(m[index_map[i]] + t.mono[i]);
      }
    out.push_back({m, t.coeff});
  }
  return from_terms(std::move(target), std::move(out));
}

std::optional<long> Polynomial::weighted_degree(std::span<const long> weights) const {
  if (terms_.empty())
    return std::nullopt;
  const long d = terms_.front().mono.weighted_degree(weights);
  for (const auto &t : terms_)
    if (t.mono.weighted_degree(weights) != d)
      return std::nullopt;
  return d;
}

namespace {

std::string monomial_str(const Monomial &m, const RingPtr &ring) {
  std::string s;
  for (std::size_t i = 0; i < (ring ? ring->size() : 0); ++i) {
    if (!m[i])
      continue;
    if (!s.empty())
      s += "*";
    s += ring->names()[i];
    if (m[i] > 1)
      s += "^" + std::to_string(m[i]);
  }
  return s;
}

} // namespace

std::string Polynomial::str() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &t : terms_) {
    const std::string mono = monomial_str(t.mono, ring_);
    const bool single = t.coeff.is_monomial_literal();
    std::string cs = t.coeff.str();
    bool negative = false;
    if (single && cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (mono.empty()) {
      out += single ? cs : "(" + cs + ")";
    } else if (single && cs == "1") {
      out += mono;
    } else {
      out += (single ? cs : "(" + cs + ")") + "*" + mono;
    }
  }
  return out;
}

std::ostream &operator<<(std::ostream &os, const Polynomial &p) { return os << p.str(); }

Polynomial partial_derivative(const Polynomial &f, std::size_t i) { return f.derivative(i); }

RingPtr doubled_ring(const RingPtr &ring) {
  std::vector<std::string> names = ring->names();
  for (const auto &n : ring->names())
    names.push_back(n + "'");
  return make_ring(std::move(names));
}

std::vector<Polynomial> difference_quotients(const Polynomial &w, const RingPtr &doubled) {
  const std::size_t n = w.nvars();
  if (doubled->size() != 2 * n)
    throw InputError("difference quotients need the doubled ring");
  std::vector<std::vector<Term>> out(n);
  // Term c * prod x_l^{a_l} contributes
  // c * prod_{l<i} y_l^{a_l} * (y_i^{a_i} - x_i^{a_i})/(y_i - x_i) * prod_{l>i} x_l^{a_l}.
  for (const auto &t : w.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned a = t.mono[i];
      if (a == 0)
        continue;
      Monomial base;
      for (std::size_t l = 0; l < i; ++l)
        base[n + l] = t.mono[l];
      for (std::size_t l = i + 1; l < n; ++l)
        base[l] = t.mono[l];
      for (unsigned j = 0; j < a; ++j) {
        Monomial m = base;
        m[n + i] = static_cast<std::uint16_t>(j);
        m[i] = static_cast<std::uint16_t>(a - 1 - j);
        out[i].push_back({m, t.coeff});
      }
    }
  }
  std::vector<Polynomial> result;
  for (auto &terms : out)
    result.push_back(Polynomial::from_terms(doubled, std::move(terms)));
  return result;
}

namespace {

// Laplace expansion along the first row with memoised column subsets.
Polynomial det_rec(const std::vector<std::vector<Polynomial>> &a, std::size_t row, unsigned cols,
                   std::map<unsigned, Polynomial> &memo, const RingPtr &ring) {
  const std::size_t n = a.size();
  if (row == n)
    return Polynomial(ring, Scalar(1));
  if (auto it = memo.find(cols); it != memo.end())
    return it->second;
  Polynomial sum(ring);
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (!(cols & (1u << c)))
      continue;
    if (!a[row][c].is_zero()) {
      Polynomial minor = det_rec(a, row + 1, cols & ~(1u << c), memo, ring);
      Polynomial term = a[row][c] * minor;
      if (sign < 0)
        sum -= term;
      else
        sum += term;
    }
    sign = -sign;
  }
  memo.emplace(cols, sum);
  return sum;
}

} // namespace

Polynomial hessian_determinant(const Polynomial &w) {
  const std::size_t n = w.nvars();
  std::vector<std::vector<Polynomial>> h(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial di = w.derivative(i);
    for (std::size_t j = 0; j < n; ++j)
      h[i][j] = di.derivative(j);
  }
  std::map<unsigned, Polynomial> memo;
  return det_rec(h, 0, (1u << n) - 1, memo, w.ring());
}

bool check_symmetry(const Polynomial &w, const Symmetry &t) {
  return w.scale_substitute(t) == w;
}

std::optional<WeightSystem> detect_weights(const Polynomial &w) {
  const std::size_t n = w.nvars();
  if (n == 0)
    return WeightSystem{{}, 1};
  if (w.is_zero())
    return std::nullopt;
  using Row = std::vector<mpq_class>;
  std::vector<Row> rows;
  for (const auto &t : w.terms()) {
    Row r(n);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = t.mono[i];
    rows.push_back(std::move(r));
  }
  // Independent subset of the exponent rows.
  std::vector<Row> basis, echelon;
  std::vector<std::size_t> pivots;
  for (const auto &r : rows) {
    Row v = r;
    for (std::size_t k = 0; k < echelon.size(); ++k)
      if (v[pivots[k]] != 0) {
        const mpq_class f = v[pivots[k]] / echelon[k][pivots[k]];
        for (std::size_t i = 0; i < n; ++i)
          v[i] -= f * echelon[k][i];
      }
    auto it = std::find_if(v.begin(), v.end(), [](const mpq_class &x) { return x != 0; });
    if (it == v.end())
      continue;
    pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    echelon.push_back(v);
    basis.push_back(r);
  }
  // Minimum-norm solution q = B^T y with (B B^T) y = 1.
  const std::size_t k = basis.size();
  std::vector<Row> g(k, Row(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      mpq_class s = 0;
      for (std::size_t l = 0; l < n; ++l)
        s += basis[i][l] * basis[j][l];
      g[i][j] = s;
    }
    g[i][k] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (g[p][c] == 0)
      ++p;
    std::swap(g[p], g[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || g[r][c] == 0)
        continue;
      const mpq_class f = g[r][c] / g[c][c];
      for (std::size_t j = c; j <= k; ++j)
        g[r][j] -= f * g[c][j];
    }
  }
  Row q(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const mpq_class y = g[i][k] / g[i][i];
    for (std::size_t l = 0; l < n; ++l)
      q[l] += y * basis[i][l];
  }
  for (const auto &r : rows) {
    mpq_class s = 0;
    for (std::size_t l = 0; l < n; ++l)
      s += r[l] * q[l];
    if (s != 1)
      return std::nullopt;
  }
  mpz_class den = 1;
  for (const auto &x : q) {
    if (x <= 0)
      return std::nullopt;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  }
  WeightSystem ws;
  mpz_class g_all = den;
  std::vector<mpz_class> ints;
  for (const auto &x : q) {
    mpz_class v = x.get_num() * (den / x.get_den());
    ints.push_back(v);
    mpz_gcd(g_all.get_mpz_t(), g_all.get_mpz_t(), v.get_mpz_t());
  }
  for (const auto &v : ints)
    ws.weights.push_back(mpz_class(v / g_all).get_si());
  ws.degree = mpz_class(den / g_all).get_si();
  return ws;
}

} // namespace mflef
