#include "doctest.h"

#include "mflef/errors.hpp"
#include "mflef/hilbert.hpp"
#include "mflef/parse.hpp"
#include "oracles.hpp"

#include <random>

using namespace mflef;
using namespace oracle;

namespace {

RingPtr R(std::vector<std::string> names) { return make_ring(std::move(names)); }

GradedModulePresentation cyclic(const RingPtr &r, const char *rels) { return {r, {0}, parse_matrix(r, rels)}; }

IntPoly times_one_minus_t(IntPoly p, std::size_t k) {
  for (std::size_t s = 0; s < k; ++s) {
    p.push_back(0);
    for (std::size_t i = p.size() - 1; i >= 1; --i)
      p[i] -= p[i - 1];
  }
  while (!p.empty() && p.back() == 0)
    p.pop_back();
  return p;
}

} // namespace

TEST_CASE("chi polynomials") {
  auto r2 = R({"x", "y"});
  CHECK(chi_polynomial(cyclic(r2, "{x, y}")) == IntPoly{1, -2, 1});
  CHECK(chi_polynomial({r2, {0}, PolyMatrix(r2, 1, 0)}) == IntPoly{1});
  CHECK(chi_polynomial(cyclic(r2, "{x^3 + y^3}")) == IntPoly{1, 0, 0, -1});
  // shifted free module R(-2)
  CHECK(chi_polynomial({r2, {2}, PolyMatrix(r2, 1, 0)}) == IntPoly{0, 0, 1});
  CHECK_THROWS_AS(chi_polynomial({r2, {-1}, PolyMatrix(r2, 1, 0)}), InputError);
  CHECK(int_poly_str({1, -2, 1}) == "1 - 2*t + t^2");
  CHECK(int_poly_str({0, -1, 0, 3}) == "-t + 3*t^3");
  CHECK(evaluate({1, -2, 1}, -1) == 4);
}

TEST_CASE("multiplicity data") {
  auto h = multiplicity_data({1, 0, -1}, 2);
  CHECK(h.krull_dim == 1);
  CHECK(h.multiplicity == IntPoly{1, 1});
  h = multiplicity_data({1, -2, 1}, 2);
  CHECK(h.krull_dim == 0);
  CHECK(h.multiplicity == IntPoly{1});
  h = multiplicity_data({1}, 2);
  CHECK(h.krull_dim == 2);
  CHECK(h.multiplicity == IntPoly{1});
  CHECK_THROWS_AS(multiplicity_data({}, 2), InputError);
  CHECK_THROWS_AS(multiplicity_data({1, -2, 1}, 1), InputError);
}

TEST_CASE("random monomial quotients") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      names.push_back("x" + std::to_string(i));
    auto r = R(names);
    const std::size_t k = 1 + rng() % 4;
    std::vector<std::vector<int>> gens;
    PolyMatrix rel(r, 1, k);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<int> e(n);
      int deg = 0;
      while (deg == 0) {
        deg = 0;
        for (auto &a : e)
          deg += a = static_cast<int>(rng() % 4);
      }
      gens.push_back(e);
      rel(0, c) = Polynomial(r, Monomial(e), Scalar(1));
    }
    const IntPoly chi = chi_polynomial({r, {0}, rel});
    const long cap = 30;
    REQUIRE(static_cast<long>(chi.size()) <= cap - 3);
    IntPoly counted = counted_chi(n, gens, cap);
    while (!counted.empty() && counted.back() == 0)
      counted.pop_back();
    CHECK(chi == counted);
    const HilbertData h = multiplicity_data(chi, n);
    CHECK(h.krull_dim == monomial_krull_dim(n, gens));
    CHECK(evaluate(h.multiplicity, 1) != 0);
    CHECK(times_one_minus_t(h.multiplicity, n - h.krull_dim) == chi);
  }
}

TEST_CASE("even multiplicity divisibility") {
  auto r2 = R({"x", "y"});
  const Polynomial q = parse_polynomial(r2, "x^2 + y^2");
  auto rep = verify_even_multiplicity_divisibility(cyclic(r2, "{x^2 + y^2}"), q);
  CHECK(rep.data.multiplicity == IntPoly{1, 1});
  CHECK(rep.e_at_minus_one == 0);
  CHECK(rep.pass);
  rep = verify_even_multiplicity_divisibility(cyclic(r2, "{x - zeta(4)*y}"), q);
  CHECK(rep.e_at_minus_one == 1);
  CHECK(rep.bound == 0);
  CHECK(rep.pass);
  CHECK_THROWS_AS(verify_even_multiplicity_divisibility(cyclic(r2, "{x^3 + y^3}"), parse_polynomial(r2, "x^3 + y^3")),
                  InputError);
  CHECK_THROWS_AS(verify_even_multiplicity_divisibility(cyclic(r2, "{x}"), q), InputError);
  CHECK_THROWS_AS(verify_even_multiplicity_divisibility(cyclic(r2, "{x^2}"), parse_polynomial(r2, "x^2")),
                  NonIsolatedError);
  // R / (w) for even-degree Fermat potentials: e = 1 + t + ... + t^{d-1}, e(-1) = 0
  for (std::size_t n = 1; n <= 4; ++n)
    for (long d = 2; d <= 6; d += 2) {
      std::vector<std::string> names;
      std::string w;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back("x" + std::to_string(i));
        w += (i ? " + x" : "x") + std::to_string(i) + "^" + std::to_string(d);
      }
      auto r = R(names);
      const Polynomial wp = parse_polynomial(r, w);
      auto e = verify_even_multiplicity_divisibility({r, {0}, PolyMatrix(r, 1, 1) + wp * PolyMatrix::identity(r, 1)}, wp);
      CHECK(e.data.krull_dim == n - 1);
      CHECK(e.data.multiplicity == IntPoly(static_cast<std::size_t>(d), 1));
      CHECK(e.pass);
    }
}

TEST_CASE("stabilization matches chi at -1") {
  auto r1 = R({"x"});
  auto rep = chi_stabilization_consistency(cyclic(r1, "{x}"), parse_polynomial(r1, "x^2"));
  CHECK(rep.lhs == Scalar(2));
  CHECK(rep.equal);
  auto r2 = R({"x", "y"});
  const Polynomial q = parse_polynomial(r2, "x^2 + y^2");
  rep = chi_stabilization_consistency(cyclic(r2, "{x^2 + y^2}"), q);
  CHECK(rep.lhs.is_zero());
  CHECK(rep.equal);
  rep = chi_stabilization_consistency(cyclic(r2, "{x, y}"), q);
  CHECK(rep.lhs == Scalar(4));
  CHECK(rep.equal);
  CHECK(chi_stabilization_consistency(cyclic(r2, "{x, y^2}"), q).equal);
  CHECK(chi_stabilization_consistency(cyclic(r2, "{x - zeta(4)*y}"), q).equal);
  auto r3 = R({"x", "y", "z"});
  const Polynomial q3 = parse_polynomial(r3, "x^2 + y^2 + z^2");
  rep = chi_stabilization_consistency(cyclic(r3, "{x, y, z}"), q3);
  CHECK(rep.lhs == Scalar(8));
  CHECK(rep.equal);
  // two generators of degrees 0 and 1
  CHECK(chi_stabilization_consistency({r2, {0, 1}, parse_matrix(r2, "{x, y, 0; 0, 0, x}")}, parse_polynomial(r2, "x*y")).equal);
  CHECK_THROWS_AS(chi_stabilization_consistency(cyclic(r1, "{x}"), parse_polynomial(r1, "x^3")), InputError);
}
