#pragma once

#include "mflef/polynomial.hpp"
#include "mflef/scalar.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mflef {

// Dense matrix over the cyclotomic scalars.
class ScalarMatrix {
public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static ScalarMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Scalar> column(std::size_t j) const;
  Scalar trace() const;
  bool is_zero() const;

  friend ScalarMatrix operator*(const ScalarMatrix &a, const ScalarMatrix &b);
  friend ScalarMatrix operator+(const ScalarMatrix &a, const ScalarMatrix &b);
  friend ScalarMatrix operator-(const ScalarMatrix &a, const ScalarMatrix &b);
  friend bool operator==(const ScalarMatrix &a, const ScalarMatrix &b);

  std::string str() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

std::size_t rank(const ScalarMatrix &a);
// Columns form a basis of {v : a v = 0}.
ScalarMatrix nullspace(const ScalarMatrix &a);
// Same basis with the free columns: basis column q is 1 at free[q] and 0 at
// the other free positions.
struct Kernel {
  ScalarMatrix basis;
  std::vector<std::size_t> free;
};
Kernel kernel(const ScalarMatrix &a);
std::optional<std::vector<Scalar>> solve(const ScalarMatrix &a, const std::vector<Scalar> &b);
std::optional<ScalarMatrix> inverse(const ScalarMatrix &a);
Scalar determinant(ScalarMatrix a);

// Dense matrix over a polynomial ring.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(RingPtr ring, std::size_t n);
  static PolyMatrix from_scalars(RingPtr ring, const ScalarMatrix &m);
  // Column-major list of column vectors.
  static PolyMatrix from_columns(RingPtr ring, std::size_t rows,
                                 const std::vector<std::vector<Polynomial>> &cols);

  const RingPtr &ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Polynomial &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Polynomial> column(std::size_t j) const;
  bool is_zero() const;
  bool is_constant() const;

  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b);
  friend PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b);
  friend PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b);
  friend PolyMatrix operator*(const Scalar &c, const PolyMatrix &a);
  friend PolyMatrix operator*(const Polynomial &c, const PolyMatrix &a);
  friend bool operator==(const PolyMatrix &a, const PolyMatrix &b);
  friend bool operator!=(const PolyMatrix &a, const PolyMatrix &b) { return !(a == b); }

  PolyMatrix map(const std::function<Polynomial(const Polynomial &)> &f) const;
  PolyMatrix scale_substitute(const Symmetry &t) const;
  PolyMatrix derivative(std::size_t var) const;
  PolyMatrix set_zero(const std::vector<bool> &vanish) const;
  ScalarMatrix at_origin() const;
  ScalarMatrix to_scalars() const; // requires is_constant()

  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const;
  void set_block(std::size_t r0, std::size_t c0, const PolyMatrix &b);

  // "{a, b; c, d}" with rows separated by ';'.
  std::string str() const;

private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> a_;
};

} // namespace mflef
