#include "mflef/scalar.hpp"

#include "mflef/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mflef {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly &p) {
  while (p.size() > 1 && p.back() == 0)
    p.pop_back();
}

// Remainder of p modulo the monic integer polynomial f, padded to deg f.
QPoly reduce_mod(QPoly p, const std::vector<mpz_class> &f) {
  const std::size_t d = f.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    if (p[i] == 0)
      continue;
    const mpq_class c = p[i];
    mpq_class t;
    for (std::size_t j = 0; j <= d; ++j) {
      if (f[j] == 0)
        continue;
      mpz_mul(mpq_numref(t.get_mpq_t()), mpq_numref(c.get_mpq_t()), f[j].get_mpz_t());
      mpz_set(mpq_denref(t.get_mpq_t()), mpq_denref(c.get_mpq_t()));
      mpq_canonicalize(t.get_mpq_t());
      auto &dst = p[i - d + j];
      mpq_sub(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
    }
  }
  p.resize(d);
  return p;
}

// Quotient and remainder in Q[x]; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly &b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db || (a.size() == 1 && a[0] == 0))
    return {QPoly{0}, a};
  QPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i] == 0)
      continue;
    const mpq_class c = a[i] / b[db];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      a[i - db + j] -= c * b[j];
  }
  a.resize(db == 0 ? 1 : db);
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly &a, const QPoly &b) {
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

QPoly sub(QPoly a, const QPoly &b) {
  if (a.size() < b.size())
    a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  trim(a);
  return a;
}

std::vector<long> divisors(long m) {
  std::vector<long> ds;
  for (long d = 1; d <= m; ++d)
    if (m % d == 0)
      ds.push_back(d);
  return ds;
}

// Gaussian elimination: solve cols * x = rhs over Q; nullopt if inconsistent.
std::optional<QPoly> solve_columns(const std::vector<QPoly> &cols, const QPoly &rhs) {
  const std::size_t rows = rhs.size(), n = cols.size();
  std::vector<QPoly> a(rows, QPoly(n + 1, 0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      a[r][c] = cols[c][r];
    a[r][n] = rhs[r];
  }
  std::vector<long> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && a[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(a[p], a[row]);
    const mpq_class inv = 1 / a[row][c];
    for (auto &v : a[row])
      v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0)
        continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = c; k <= n; ++k)
        a[r][k] -= f * a[row][k];
    }
    pivot_of_col[c] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][n] != 0)
      return std::nullopt;
  QPoly x(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_of_col[c] >= 0)
      x[c] = a[pivot_of_col[c]][n];
  return x;
}

std::string rational_str(const mpq_class &q) { return q.get_str(); }

} // namespace

long euler_phi(long m) {
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    while (n % p == 0)
      n /= p;
    result -= result / p;
  }
  if (n > 1)
    result -= result / n;
  return result;
}

bool is_prime(long p) {
  if (p < 2)
    return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

namespace {

const std::vector<mpz_class> &phi_cached(long m, std::map<long, std::vector<mpz_class>> &cache) {
  if (auto it = cache.find(m); it != cache.end())
    return it->second;
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, each division exact.
  QPoly num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d : divisors(m)) {
    if (d == m)
      continue;
    const auto &pd = phi_cached(d, cache);
    num = divmod(num, QPoly(pd.begin(), pd.end())).first;
  }
  std::vector<mpz_class> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i)
    out[i] = num[i].get_num();
  return cache.emplace(m, std::move(out)).first->second;
}

} // namespace

const std::vector<mpz_class> &cyclotomic_polynomial(long m) {
  if (m < 1)
    throw InputError("cyclotomic order must be positive, got " + std::to_string(m));
  static std::mutex mutex;
  static std::map<long, std::vector<mpz_class>> cache;
  std::lock_guard lock(mutex);
  // std::map nodes are stable, so the reference outlives the lock.
  return phi_cached(m, cache);
}

Scalar::Scalar(long num, long den) : order_(1), coeffs_{mpq_class(num, den)} {
  if (den == 0)
    throw InputError("division by zero in rational literal");
  coeffs_[0].canonicalize();
}

Scalar Scalar::zeta(long m, long k) {
  if (m < 1)
    throw InputError("zeta order must be positive");
  QPoly p(static_cast<std::size_t>(m), 0);
  p[static_cast<std::size_t>(((k % m) + m) % m)] = 1;
  return from_powers(p, m);
}

Scalar Scalar::from_powers(std::span<const mpq_class> powers, long m) {
  if (m < 1)
    throw InputError("cyclotomic order must be positive");
  // Fold modulo x^m - 1 first, then reduce modulo Phi_m.
  QPoly folded(static_cast<std::size_t>(m), 0);
  for (std::size_t i = 0; i < powers.size(); ++i) {
    mpq_class c = powers[i];
    c.canonicalize();
    folded[i % static_cast<std::size_t>(m)] += c;
  }
  const auto &phi = cyclotomic_polynomial(m);
  if (phi.size() == 1)
    return Scalar(m, QPoly{folded[0]});
  return Scalar(m, reduce_mod(std::move(folded), phi));
}

bool Scalar::is_zero() const {
  for (const auto &c : coeffs_)
    if (c != 0)
      return false;
  return true;
}

bool Scalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      return false;
  return true;
}

bool Scalar::is_one() const { return is_rational() && coeffs_[0] == 1; }

mpq_class Scalar::to_rational() const {
  if (!is_rational())
    throw InputError("scalar " + str() + " is not rational");
  return coeffs_[0];
}

bool Scalar::is_integral() const {
  for (const auto &c : coeffs_)
    if (c.get_den() != 1)
      return false;
  return true;
}

Scalar Scalar::embed(long target) const {
  if (target == order_)
    return *this;
  if (target % order_ != 0)
    throw InputError("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                     std::to_string(target) + ")");
  const long step = target / order_;
  QPoly p(static_cast<std::size_t>(target), 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    p[(j * step) % target] += coeffs_[j];
  return from_powers(p, target);
}

Scalar Scalar::descend() const {
  for (long d : divisors(order_)) {
    if (d == order_)
      return *this;
    const long phid = euler_phi(d);
    std::vector<QPoly> cols;
    for (long j = 0; j < phid; ++j)
      cols.push_back(zeta(d, j).embed(order_).coeffs_);
    if (auto x = solve_columns(cols, coeffs_))
      return Scalar(d, std::move(*x));
  }
  return *this;
}

Scalar Scalar::galois(long k) const {
  const long m = order_;
  const long kk = ((k % m) + m) % m;
  if (m > 1 && std::gcd(kk, m) != 1)
    throw InputError("galois exponent must be a unit modulo the order");
  QPoly p(static_cast<std::size_t>(m), 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    p[(j * kk) % m] += coeffs_[j];
  return from_powers(p, m);
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw InputError("division by zero scalar");
  if (coeffs_.size() == 1)
    return Scalar(order_, QPoly{1 / coeffs_[0]});
  // Extended Euclid in Q[x]: s * a = r mod Phi_m; stop when r is a constant.
  const auto &phi = cyclotomic_polynomial(order_);
  QPoly r0(phi.begin(), phi.end()), r1 = coeffs_;
  trim(r1);
  QPoly s0{0}, s1{1};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const mpq_class c = r1[0];
  for (auto &v : s1)
    v /= c;
  return from_powers(s1, order_);
}

void Scalar::promote_pair(Scalar &o) {
  if (order_ == o.order_)
    return;
  const long l = std::lcm(order_, o.order_);
  if (order_ != l)
    *this = embed(l);
  if (o.order_ != l)
    o = o.embed(l);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

Scalar &Scalar::operator+=(const Scalar &o) {
  if (order_ == o.order_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Scalar b = o;
  promote_pair(b);
  return *this += b;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const Scalar &o) {
  if (order_ != o.order_) {
    if (o.coeffs_.size() == 1 && o.order_ <= 2) {
      for (auto &c : coeffs_)
        c *= o.coeffs_[0];
      return *this;
    }
    if (coeffs_.size() == 1 && order_ <= 2) {
      const mpq_class f = coeffs_[0];
      *this = o;
      for (auto &c : coeffs_)
        c *= f;
      return *this;
    }
    Scalar b = o;
    promote_pair(b);
    return *this *= b;
  }
  if (coeffs_.size() == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  // Fold into x^m - 1 while multiplying, skipping zeros; then reduce by Phi_m.
  const std::size_t m = static_cast<std::size_t>(order_);
  QPoly folded(m, 0);
  mpq_class t;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j] == 0)
        continue;
      mpq_mul(t.get_mpq_t(), coeffs_[i].get_mpq_t(), o.coeffs_[j].get_mpq_t());
      auto &dst = folded[(i + j) % m];
      mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
    }
  }
  coeffs_ = reduce_mod(std::move(folded), cyclotomic_polynomial(order_));
  return *this;
}

bool operator==(const Scalar &a, const Scalar &b) {
  if (a.order_ == b.order_)
    return a.coeffs_ == b.coeffs_;
  if (a.is_rational() && b.is_rational())
    return a.coeffs_[0] == b.coeffs_[0];
  const long l = std::lcm(a.order_, b.order_);
  return a.embed(l).coeffs_ == b.embed(l).coeffs_;
}

Scalar Scalar::pow(long e) const {
  if (e < 0)
    return inverse().pow(-e);
  Scalar result(1), base = *this;
  while (e) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

bool Scalar::is_monomial_literal() const {
  int nonzero = 0;
  for (const auto &c : coeffs_)
    nonzero += c != 0;
  if (nonzero > 1)
    return false;
  // "1/2" is fine, but a negative leading sign is a separate unary term.
  return true;
}

std::string Scalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const mpq_class &c = coeffs_[j];
    if (c == 0)
      continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0)
        os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << rational_str(mag);
      continue;
    }
    if (mag != 1)
      os << rational_str(mag) << "*";
    os << "zeta(" << order_ << ")";
    if (j > 1)
      os << "^" << j;
  }
  if (first)
    return "0";
  return os.str();
}

std::pair<double, double> Scalar::to_complex(long k) const {
  double re = 0, im = 0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const double angle = 2.0 * M_PI * static_cast<double>(j * k) / static_cast<double>(order_);
    const double c = coeffs_[j].get_d();
    re += c * std::cos(angle);
    im += c * std::sin(angle);
  }
  return {re, im};
}

std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.str(); }

mpq_class norm_to_rational(const Scalar &a) {
  const long m = a.order();
  Scalar prod(1);
  for (long k = 1; k <= std::max<long>(m, 1); ++k)
    if (std::gcd(k, m) == 1)
      prod *= a.galois(k);
  return prod.to_rational();
}

long padic_valuation(const mpz_class &n, long p) {
  mpz_class v = abs(n);
  long e = 0;
  while (v != 0 && v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

std::optional<long> one_minus_zeta_valuation(const Scalar &a, long p) {
  if (!is_prime(p))
    throw InputError("valuation requires a prime, got " + std::to_string(p));
  if (a.is_zero())
    return std::nullopt;
  Scalar b = a;
  if (p % b.order() != 0)
    b = b.descend();
  if (p % b.order() != 0)
    throw InputError("scalar " + a.str() + " does not lie in Q(zeta_" + std::to_string(p) + ")");
  b = b.embed(p);
  if (!b.is_integral())
    throw InputError("divisibility query on non-integral scalar " + a.str());
  // (1 - zeta_p) is the unique prime over p and has norm p.
  const mpq_class n = norm_to_rational(b);
  return padic_valuation(n.get_num(), p);
}

RootOfUnity::RootOfUnity(long m, long k) : order(m), exponent(((k % m) + m) % m) {
  if (m < 1)
    throw InputError("root of unity order must be positive");
}

long RootOfUnity::element_order() const { return order / std::gcd(order, exponent); }

RootOfUnity operator*(const RootOfUnity &a, const RootOfUnity &b) {
  const long l = std::lcm(a.order, b.order);
  return {l, a.exponent * (l / a.order) + b.exponent * (l / b.order)};
}

bool operator==(const RootOfUnity &a, const RootOfUnity &b) {
  const long l = std::lcm(a.order, b.order);
  return (a.exponent * (l / a.order)) % l == (b.exponent * (l / b.order)) % l;
}

Symmetry inverse(const Symmetry &t) {
  Symmetry r;
  for (const auto &z : t)
    r.push_back(z.inverse());
  return r;
}

Symmetry compose(const Symmetry &s, const Symmetry &t) {
  if (s.size() != t.size())
    throw InputError("symmetries of different lengths");
  Symmetry r;
  for (std::size_t i = 0; i < s.size(); ++i)
    r.push_back(s[i] * t[i]);
  return r;
}

bool is_identity(const Symmetry &t) {
  for (const auto &z : t)
    if (!z.is_one())
      return false;
  return true;
}

long symmetry_order(const Symmetry &t) {
  long l = 1;
  for (const auto &z : t)
    l = std::lcm(l, z.element_order());
  return l;
}

long common_order(const Symmetry &t) { return symmetry_order(t); }

} // namespace mflef
