#include "doctest.h"

#include "mflef/parse.hpp"
#include "mflef/polynomial.hpp"

#include <random>

using namespace mflef;

namespace {

RingPtr R(std::vector<std::string> names) { return make_ring(std::move(names)); }

Polynomial random_poly(std::mt19937 &rng, const RingPtr &ring, int max_deg, int nterms) {
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<Term> terms;
  for (int k = 0; k < nterms; ++k) {
    std::vector<int> e(ring->size());
    int left = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
    for (auto &x : e) {
      x = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      left -= x;
    }
    terms.push_back({Monomial(e), Scalar(c(rng))});
  }
  return Polynomial::from_terms(ring, terms);
}

} // namespace

TEST_CASE("partial derivatives") {
  auto r = R({"x", "y"});
  CHECK(partial_derivative(parse_polynomial(r, "x^3"), 0) == parse_polynomial(r, "3*x^2"));
  CHECK(partial_derivative(parse_polynomial(r, "x^2"), 1).is_zero());
  CHECK(partial_derivative(parse_polynomial(r, "x*y"), 0) == parse_polynomial(r, "y"));
}

TEST_CASE("diagonal substitution") {
  auto r1 = R({"x"});
  CHECK(parse_polynomial(r1, "x^3").scale_substitute(Symmetry{RootOfUnity(3, 1)}) ==
        parse_polynomial(r1, "x^3"));
  CHECK(parse_polynomial(r1, "x").scale_substitute(Symmetry{RootOfUnity(2, 1)}) ==
        parse_polynomial(r1, "-x"));
  auto r2 = R({"x", "y"});
  CHECK(parse_polynomial(r2, "x*y").scale_substitute(Symmetry{RootOfUnity(5, 1), RootOfUnity(5, 4)}) ==
        parse_polynomial(r2, "x*y"));
  CHECK(parse_polynomial(r2, "x^2*y").scale_substitute(Symmetry{RootOfUnity(3, 1), RootOfUnity(1, 0)}) ==
        parse_polynomial(r2, "zeta(3)^2*x^2*y"));
}

TEST_CASE("difference quotients") {
  auto r1 = R({"x"});
  auto d1 = doubled_ring(r1);
  auto q = difference_quotients(parse_polynomial(r1, "x^2"), d1);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == parse_polynomial(d1, "x + x'"));
  q = difference_quotients(parse_polynomial(r1, "x^3"), d1);
  CHECK(q[0] == parse_polynomial(d1, "x^2 + x*x' + x'^2"));
  auto r2 = R({"a", "b"});
  auto d2 = doubled_ring(r2);
  q = difference_quotients(parse_polynomial(r2, "a*b"), d2);
  CHECK(q[0] == parse_polynomial(d2, "b"));
  CHECK(q[1] == parse_polynomial(d2, "a'"));
}

TEST_CASE("difference quotients reconstruct w(y) - w(x)") {
  std::mt19937 rng(17);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      names.push_back("x" + std::to_string(i));
    auto r = R(names);
    auto d = doubled_ring(r);
    std::vector<std::size_t> to_x(n), to_y(n);
    for (std::size_t i = 0; i < n; ++i) {
      to_x[i] = i;
      to_y[i] = n + i;
    }
    for (int it = 0; it < 8; ++it) {
      const Polynomial w = random_poly(rng, r, 6, 5);
      const auto q = difference_quotients(w, d);
      Polynomial sum(d);
      for (std::size_t i = 0; i < n; ++i)
        sum += q[i] * (Polynomial::variable(d, n + i) - Polynomial::variable(d, i));
      CHECK(sum == w.map_variables(d, to_y) - w.map_variables(d, to_x));
    }
  }
}

TEST_CASE("hessian determinant") {
  auto r1 = R({"x"});
  CHECK(hessian_determinant(parse_polynomial(r1, "x^2")) == parse_polynomial(r1, "2"));
  CHECK(hessian_determinant(parse_polynomial(r1, "x^3")) == parse_polynomial(r1, "6*x"));
  auto r2 = R({"x", "y"});
  CHECK(hessian_determinant(parse_polynomial(r2, "x^3 + y^3")) == parse_polynomial(r2, "36*x*y"));
  // Direct 2x2 expansion for a mixed potential.
  const Polynomial w = parse_polynomial(r2, "x^2*y + y^4");
  const Polynomial hxx = w.derivative(0).derivative(0), hxy = w.derivative(0).derivative(1),
                   hyy = w.derivative(1).derivative(1);
  CHECK(hessian_determinant(w) == hxx * hyy - hxy * hxy);
}

TEST_CASE("symmetry check") {
  auto r = R({"x"});
  CHECK(check_symmetry(parse_polynomial(r, "x^3"), {RootOfUnity(3, 1)}));
  CHECK(check_symmetry(parse_polynomial(r, "x^2"), {RootOfUnity(2, 1)}));
  CHECK_FALSE(check_symmetry(parse_polynomial(r, "x^3"), {RootOfUnity(2, 1)}));
}

TEST_CASE("substitution is multiplicative and composes") {
  std::mt19937 rng(23);
  auto r = R({"x", "y", "z"});
  const Symmetry s{RootOfUnity(3, 1), RootOfUnity(4, 1), RootOfUnity(2, 1)};
  const Symmetry t{RootOfUnity(6, 5), RootOfUnity(4, 2), RootOfUnity(1, 0)};
  for (int it = 0; it < 10; ++it) {
    const Polynomial f = random_poly(rng, r, 4, 4), g = random_poly(rng, r, 4, 4);
    CHECK((f * g).scale_substitute(s) == f.scale_substitute(s) * g.scale_substitute(s));
    CHECK(f.scale_substitute(t).scale_substitute(s) == f.scale_substitute(compose(s, t)));
    CHECK(f.derivative(0).derivative(2) == f.derivative(2).derivative(0));
  }
}

TEST_CASE("weights of quasi-homogeneous potentials") {
  auto r = R({"x", "y"});
  auto ws = detect_weights(parse_polynomial(r, "x^2*y + y^3"));
  REQUIRE(ws);
  CHECK(ws->weights == std::vector<long>{1, 1});
  CHECK(ws->degree == 3);
  ws = detect_weights(parse_polynomial(r, "x^2*y + y^4"));
  REQUIRE(ws);
  CHECK(ws->weights == std::vector<long>{3, 2});
  CHECK(ws->degree == 8);
  CHECK_FALSE(detect_weights(parse_polynomial(r, "x^2 + x^3 + y^2")));
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(29);
  auto r = R({"x", "y'"});
  for (int it = 0; it < 20; ++it) {
    Polynomial f = random_poly(rng, r, 5, 4);
    f = f * Polynomial(r, Scalar(1) + Scalar::zeta(3)) + Polynomial(r, Scalar(2, 7) * Scalar::zeta(4));
    CHECK(parse_polynomial(r, f.str()) == f);
  }
  CHECK(collect_identifiers("x^2*y' + zeta(3)*z1 + x") == std::vector<std::string>{"x", "y'", "z1"});
  CHECK_THROWS_AS(parse_polynomial(r, "x + q"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial(r, "x / y'"), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial(r, "(x + 1"), SyntaxError);
}
