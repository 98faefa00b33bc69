#include "mflef/linalg.hpp"

#include "mflef/errors.hpp"

namespace mflef {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = Scalar(1);
  return m;
}

std::vector<Scalar> ScalarMatrix::column(std::size_t j) const {
  std::vector<Scalar> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

Scalar ScalarMatrix::trace() const {
  Scalar t(0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
    t += (*this)(i, i);
  return t;
}

bool ScalarMatrix::is_zero() const {
  for (const auto &x : a_)
    if (!x.is_zero())
      return false;
  return true;
}

ScalarMatrix operator*(const ScalarMatrix &a, const ScalarMatrix &b) {
  if (a.cols_ != b.rows_)
    throw InputError("matrix dimension mismatch in product");
  ScalarMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar &x = a(i, k);
      if (x.is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero())
          r(i, j) += x * b(k, j);
    }
  return r;
}

ScalarMatrix operator+(const ScalarMatrix &a, const ScalarMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InputError("matrix dimension mismatch in sum");
  ScalarMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i)
    r.a_[i] += b.a_[i];
  return r;
}

ScalarMatrix operator-(const ScalarMatrix &a, const ScalarMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InputError("matrix dimension mismatch in difference");
  ScalarMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i)
    r.a_[i] -= b.a_[i];
  return r;
}

bool operator==(const ScalarMatrix &a, const ScalarMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i])
      return false;
  return true;
}

std::string ScalarMatrix::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i)
      s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j)
        s += ", ";
      s += (*this)(i, j).str();
    }
  }
  return s + "}";
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(ScalarMatrix &a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c).is_zero())
      ++p;
    if (p == a.rows())
      continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a(p, j), a(row, j));
    const Scalar inv = a(row, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a(row, j).is_zero())
        a(row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c).is_zero())
        continue;
      const Scalar f = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(row, j).is_zero())
          a(r, j) -= f * a(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

} // namespace

std::size_t rank(const ScalarMatrix &a) {
  ScalarMatrix m = a;
  return rref(m).size();
}

Kernel kernel(const ScalarMatrix &a) {
  ScalarMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots)
    is_pivot[p] = true;
  Kernel k{ScalarMatrix(a.cols(), a.cols() - pivots.size()), {}};
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f])
      continue;
    const std::size_t q = k.free.size();
    k.basis(f, q) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      k.basis(pivots[r], q) = -m(r, f);
    k.free.push_back(f);
  }
  return k;
}

ScalarMatrix nullspace(const ScalarMatrix &a) { return kernel(a).basis; }

std::optional<std::vector<Scalar>> solve(const ScalarMatrix &a, const std::vector<Scalar> &b) {
  ScalarMatrix m(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(i, j) = a(i, j);
    m(i, a.cols()) = b[i];
  }
  const auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == a.cols())
    return std::nullopt;
  std::vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = m(r, a.cols());
  return x;
}

std::optional<ScalarMatrix> inverse(const ScalarMatrix &a) {
  if (a.rows() != a.cols())
    return std::nullopt;
  const std::size_t n = a.rows();
  ScalarMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = a(i, j);
    m(i, n + i) = Scalar(1);
  }
  const auto pivots = rref(m);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    return std::nullopt;
  ScalarMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = m(i, n + j);
  return inv;
}

Scalar determinant(ScalarMatrix a) {
  if (a.rows() != a.cols())
    throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero())
      ++p;
    if (p == n)
      return Scalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero())
        continue;
      const Scalar f = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = Polynomial(ring, Scalar(1));
  return m;
}

PolyMatrix PolyMatrix::from_scalars(RingPtr ring, const ScalarMatrix &s) {
  PolyMatrix m(ring, s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      m(i, j) = Polynomial(ring, s(i, j));
  return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, std::size_t rows,
                                    const std::vector<std::vector<Polynomial>> &cols) {
  PolyMatrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Polynomial> PolyMatrix::column(std::size_t j) const {
  std::vector<Polynomial> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

bool PolyMatrix::is_zero() const {
  for (const auto &p : a_)
    if (!p.is_zero())
      return false;
  return true;
}

bool PolyMatrix::is_constant() const {
  for (const auto &p : a_)
    if (!p.is_constant())
      return false;
  return true;
}

PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
  if (a.cols_ != b.rows_)
    throw InputError("matrix dimension mismatch in product (" + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_) + ")");
  PolyMatrix r(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial &x = a(i, k);
      if (x.is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero())
          r(i, j) += x * b(k, j);
    }
  return r;
}

PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InputError("matrix dimension mismatch in sum");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i)
    r.a_[i] += b.a_[i];
  return r;
}

PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InputError("matrix dimension mismatch in difference");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i)
    r.a_[i] -= b.a_[i];
  return r;
}

PolyMatrix operator*(const Scalar &c, const PolyMatrix &a) {
  PolyMatrix r = a;
  for (auto &p : r.a_)
    p *= c;
  return r;
}

PolyMatrix operator*(const Polynomial &c, const PolyMatrix &a) {
  PolyMatrix r = a;
  for (auto &p : r.a_)
    p = c * p;
  return r;
}

bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

PolyMatrix PolyMatrix::map(const std::function<Polynomial(const Polynomial &)> &f) const {
  PolyMatrix r = *this;
  for (auto &p : r.a_)
    p = f(p);
  return r;
}

PolyMatrix PolyMatrix::scale_substitute(const Symmetry &t) const {
  return map([&](const Polynomial &p) { return p.scale_substitute(t); });
}

PolyMatrix PolyMatrix::derivative(std::size_t var) const {
  return map([&](const Polynomial &p) { return p.derivative(var); });
}

PolyMatrix PolyMatrix::set_zero(const std::vector<bool> &vanish) const {
  return map([&](const Polynomial &p) { return p.set_zero(vanish); });
}

ScalarMatrix PolyMatrix::at_origin() const {
  ScalarMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(i, j) = (*this)(i, j).constant_term();
  return m;
}

ScalarMatrix PolyMatrix::to_scalars() const {
  if (!is_constant())
    throw InputError("matrix has non-constant entries");
  return at_origin();
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
  PolyMatrix b(ring_, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void PolyMatrix::set_block(std::size_t r0, std::size_t c0, const PolyMatrix &b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string PolyMatrix::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i)
      s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j)
        s += ", ";
      s += (*this)(i, j).str();
    }
  }
  return s + "}";
}

} // namespace mflef
