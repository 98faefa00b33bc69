#pragma once

#include "mflef/errors.hpp"
#include "mflef/linalg.hpp"
#include "mflef/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mflef {

// Input error carrying a 1-based column inside the parsed text.
class SyntaxError : public InputError {
public:
  SyntaxError(const std::string &msg, std::size_t column)
      : InputError(msg + " at column " + std::to_string(column)), message_(msg), column_(column) {}
  std::size_t column() const { return column_; }
  const std::string &message() const { return message_; }

private:
  std::string message_;
  std::size_t column_;
};

// Grammar: sums and products of integers, variables, zeta(m), parentheses,
// '^' with a non-negative integer (negative only on constants), '/' by
// nonzero constants.
Polynomial parse_polynomial(const RingPtr &ring, std::string_view text);
Scalar parse_scalar(std::string_view text);

// Variable identifiers in order of first appearance (zeta excluded).
std::vector<std::string> collect_identifiers(std::string_view text);

// "{a, b; c, d}": rows separated by ';', entries by ','. "{}" is 0 x 0; an
// explicit shape "{} : 2x0" is allowed for empty blocks.
PolyMatrix parse_matrix(const RingPtr &ring, std::string_view text);
// Inverse of parse_matrix, adding the shape suffix for empty matrices.
std::string matrix_str(const PolyMatrix &m);

// "zeta(m)^[k1, ..., kn]"
Symmetry parse_symmetry(std::string_view text);
std::string symmetry_str(const Symmetry &t);

} // namespace mflef
