#include "mflef/parse.hpp"

#include <cctype>
#include <numeric>

namespace mflef {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class ExprParser {
public:
  ExprParser(const RingPtr &ring, std::string_view s) : ring_(ring), s_(s) {}

  Polynomial parse() {
    Polynomial p = sum();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(msg, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected an integer");
    if (pos_ - start > 9)
      fail("integer too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial sum() {
    Polynomial acc = product();
    for (;;) {
      if (accept('+'))
        acc += product();
      else if (accept('-'))
        acc -= product();
      else
        return acc;
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^'))
      return base;
    const bool negative = accept('-');
    const long e = integer();
    if (!negative)
      return base.pow(static_cast<unsigned>(e));
    if (!base.is_constant() || base.is_zero())
      fail("negative exponent on a non-constant");
    return Polynomial(ring_, base.constant_term().inverse().pow(e));
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = sum();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return Polynomial(ring_, Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))))));
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_]))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "zeta") {
        expect('(');
        const long m = integer();
        if (m < 1)
          fail("zeta order must be positive");
        expect(')');
        return Polynomial(ring_, Scalar::zeta(m));
      }
      auto idx = ring_ ? ring_->index_of(name) : std::nullopt;
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  RingPtr ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Polynomial parse_polynomial(const RingPtr &ring, std::string_view text) {
  return ExprParser(ring, text).parse();
}

Scalar parse_scalar(std::string_view text) {
  static const RingPtr empty = make_ring({});
  Polynomial p = parse_polynomial(empty, text);
  return p.constant_term();
}

std::vector<std::string> collect_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i])))
        ++i;
      continue;
    }
    if (!ident_start(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && ident_char(text[i]))
      ++i;
    std::string name(text.substr(start, i - start));
    if (name != "zeta" && std::find(out.begin(), out.end(), name) == out.end())
      out.push_back(std::move(name));
  }
  return out;
}

PolyMatrix parse_matrix(const RingPtr &ring, std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty() || s.front() != '{')
    throw SyntaxError("matrix must start with '{'", 1);
  const std::size_t close = s.rfind('}');
  if (close == std::string_view::npos)
    throw SyntaxError("matrix is missing '}'", s.size());
  std::string_view body = trim(s.substr(1, close - 1));
  std::string_view rest = trim(s.substr(close + 1));

  if (body.empty()) {
    std::size_t rows = 0, cols = 0;
    if (!rest.empty()) {
      if (rest.front() != ':')
        throw SyntaxError("expected ':' before the matrix shape", close + 2);
      std::string shape(trim(rest.substr(1)));
      const auto x = shape.find('x');
      try {
        if (x == std::string::npos)
          throw std::invalid_argument("shape");
        rows = std::stoul(shape.substr(0, x));
        cols = std::stoul(shape.substr(x + 1));
      } catch (const std::logic_error &) {
        throw SyntaxError("bad matrix shape '" + shape + "'", close + 2);
      }
      if (rows != 0 && cols != 0)
        throw SyntaxError("empty matrix with a nonzero shape", close + 2);
    }
    return PolyMatrix(ring, rows, cols);
  }
  if (!rest.empty())
    throw SyntaxError("trailing text after matrix", close + 2);

  std::vector<std::vector<Polynomial>> rows;
  std::size_t offset = static_cast<std::size_t>(body.data() - text.data());
  std::size_t start = 0;
  std::vector<Polynomial> row;
  int depth = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    const char c = i < body.size() ? body[i] : ';';
    if (c == '(')
      ++depth;
    else if (c == ')')
      --depth;
    if (depth != 0 || (c != ',' && c != ';'))
      continue;
    std::string_view cell = body.substr(start, i - start);
    try {
      row.push_back(parse_polynomial(ring, cell));
    } catch (const SyntaxError &e) {
      throw SyntaxError("bad matrix entry '" + std::string(trim(cell)) + "'",
                        offset + start + e.column());
    }
    if (c == ';') {
      if (!rows.empty() && rows.front().size() != row.size())
        throw SyntaxError("ragged matrix rows", offset + i + 1);
      rows.push_back(std::move(row));
      row.clear();
    }
    start = i + 1;
  }
  PolyMatrix m(ring, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = rows[i][j];
  return m;
}

std::string matrix_str(const PolyMatrix &m) {
  if (m.rows() == 0 || m.cols() == 0)
    return "{} : " + std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  return m.str();
}

Symmetry parse_symmetry(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (s.rfind("zeta(", 0) != 0)
    throw SyntaxError("symmetry must look like zeta(m)^[k1, ..., kn]", 1);
  const auto close = s.find(')');
  if (close == std::string::npos || s.compare(close, 3, ")^[") != 0 || s.back() != ']')
    throw SyntaxError("symmetry must look like zeta(m)^[k1, ..., kn]", 1);
  long m = 0;
  try {
    m = std::stol(s.substr(5, close - 5));
  } catch (const std::logic_error &) {
    throw SyntaxError("bad root-of-unity order", 6);
  }
  if (m < 1)
    throw SyntaxError("root-of-unity order must be positive", 6);
  Symmetry t;
  std::string list = s.substr(close + 3, s.size() - close - 4);
  std::size_t p = 0;
  while (p <= list.size() && !list.empty()) {
    const auto q = std::min(list.find(',', p), list.size());
    try {
      std::size_t used = 0;
      const long k = std::stol(list.substr(p, q - p), &used);
      if (used != q - p)
        throw std::invalid_argument("exponent");
      t.emplace_back(m, k);
    } catch (const std::logic_error &) {
      throw SyntaxError("bad exponent '" + list.substr(p, q - p) + "'", close + 4 + p);
    }
    p = q + 1;
  }
  return t;
}

std::string symmetry_str(const Symmetry &t) {
  const long m = common_order(t);
  std::string s = "zeta(" + std::to_string(m) + ")^[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i)
      s += ", ";
    s += std::to_string(t[i].exponent * m / t[i].order);
  }
  return s + "]";
}

} // namespace mflef
