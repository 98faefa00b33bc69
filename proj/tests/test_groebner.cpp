#include "doctest.h"

#include "mflef/errors.hpp"
#include "mflef/groebner.hpp"
#include "mflef/parse.hpp"

#include <map>
#include <random>

using namespace mflef;

namespace {

RingPtr R(std::vector<std::string> names) { return make_ring(std::move(names)); }

std::vector<Polynomial> P(const RingPtr &r, std::initializer_list<const char *> xs) {
  std::vector<Polynomial> out;
  for (auto s : xs)
    out.push_back(parse_polynomial(r, s));
  return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t n, long d) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto &&self, std::size_t i, long left) -> void {
    if (i + 1 == n) {
      cur[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (long e = 0; e <= left; ++e) {
      cur[i] = static_cast<std::uint16_t>(e);
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  if (n == 0) {
    if (d == 0)
      out.push_back(cur);
    return out;
  }
  rec(rec, 0, d);
  return out;
}

// dim_k (R/I)_d by linear algebra on the spanning set {m f}.
std::size_t brute_quotient_dim(const RingPtr &r, const std::vector<Polynomial> &gens, long d) {
  const auto basis = monomials_of_degree(r->size(), d);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = i;
  std::vector<std::vector<Scalar>> rows;
  for (const auto &f : gens) {
    const long df = f.total_degree();
    if (df > d)
      continue;
    for (const auto &m : monomials_of_degree(r->size(), d - df)) {
      std::vector<Scalar> row(basis.size());
      const Polynomial mf = f.mul_term(m, Scalar(1));
      for (const auto &t : mf.terms())
        row[index.at(t.mono)] = t.coeff;
      rows.push_back(std::move(row));
    }
  }
  ScalarMatrix a(rows.size(), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      a(i, j) = rows[i][j];
  return basis.size() - rank(a);
}

void check_against_brute_force(const RingPtr &r, const std::vector<Polynomial> &gens) {
  const auto gb = GroebnerBasis::ideal(r, gens);
  const auto std_monos = gb.finite_standard_monomials();
  long top = 0;
  std::map<long, std::size_t> count;
  for (const auto &s : std_monos) {
    ++count[s.mono.degree()];
    top = std::max<long>(top, s.mono.degree());
  }
  for (long d = 0; d <= top + 1; ++d)
    CHECK(count[d] == brute_quotient_dim(r, gens, d));
}

Vec column(const PolyMatrix &m, std::size_t j) { return m.column(j); }

} // namespace

TEST_CASE("reduced bases of small ideals") {
  auto r1 = R({"x"});
  auto gb = GroebnerBasis::ideal(r1, P(r1, {"2*x"}));
  REQUIRE(gb.size() == 1);
  CHECK(gb.generators()[0][0] == parse_polynomial(r1, "x"));

  auto r2 = R({"x", "y"});
  gb = GroebnerBasis::ideal(r2, P(r2, {"x^2", "x*y"}));
  CHECK(gb.size() == 2);
  gb = GroebnerBasis::ideal(r2, P(r2, {"3*x^2", "3*y^2"}));
  REQUIRE(gb.size() == 2);
  for (const auto &g : gb.generators())
    CHECK(g[0].leading_term().coeff.is_one());
}

TEST_CASE("normal forms") {
  auto r = R({"x"});
  auto gb = GroebnerBasis::ideal(r, P(r, {"x^2"}));
  CHECK(gb.normal_form(parse_polynomial(r, "x^2")).is_zero());
  CHECK(gb.normal_form(parse_polynomial(r, "x + 1")) == parse_polynomial(r, "x + 1"));
  CHECK(gb.normal_form(parse_polynomial(r, "x^3 + x")) == parse_polynomial(r, "x"));
}

TEST_CASE("normal form is linear and idempotent") {
  auto r = R({"x", "y", "z"});
  auto gb = GroebnerBasis::ideal(r, P(r, {"x^2 + y*z", "y^2 + x*z", "z^2 + x*y"}));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-3, 3);
  auto rnd = [&] {
    Polynomial f(r);
    for (int k = 0; k < 6; ++k) {
      const int e[] = {static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
      f += Polynomial(r, Monomial(e), Scalar(c(rng)));
    }
    return f;
  };
  for (int it = 0; it < 20; ++it) {
    const Polynomial f = rnd(), g = rnd();
    const Polynomial nf = gb.normal_form(f);
    CHECK(gb.normal_form(nf) == nf);
    CHECK(gb.normal_form(f + g) == nf + gb.normal_form(g));
    CHECK(gb.normal_form(f * Scalar(5, 3)) == nf * Scalar(5, 3));
  }
}

TEST_CASE("standard monomials") {
  auto r1 = R({"x"});
  auto s = GroebnerBasis::ideal(r1, P(r1, {"x^2"})).finite_standard_monomials();
  REQUIRE(s.size() == 2);
  CHECK(s[0].mono.is_one());
  CHECK(s[1].mono == Monomial::variable(0));

  auto r2 = R({"x", "y"});
  s = GroebnerBasis::ideal(r2, P(r2, {"x^2", "y^2"})).finite_standard_monomials();
  CHECK(s.size() == 4);
  CHECK_FALSE(GroebnerBasis::ideal(r2, P(r2, {"x"})).standard_monomials().has_value());
  CHECK_THROWS_AS(GroebnerBasis::ideal(r2, P(r2, {"x"})).finite_standard_monomials(), NonIsolatedError);
}

TEST_CASE("standard monomial counts match graded linear algebra") {
  auto r2 = R({"x", "y"});
  check_against_brute_force(r2, P(r2, {"3*x^2", "3*y^2"}));
  check_against_brute_force(r2, P(r2, {"2*x*y", "x^2 + 3*y^2"}));
  check_against_brute_force(r2, P(r2, {"x^3 + y^3", "x*y^2", "x^2*y"}));
  auto r3 = R({"x", "y", "z"});
  check_against_brute_force(r3, P(r3, {"x^2 + y*z", "y^2 + x*z", "z^2 + x*y"}));
  check_against_brute_force(r3, P(r3, {"x^3", "y^2 - x*z", "z^2 + zeta(3)*x*y"}));
}

TEST_CASE("syzygies") {
  auto r = R({"x", "y"});
  PolyMatrix row = parse_matrix(r, "{x, y}");
  PolyMatrix s = syzygy_basis(row);
  REQUIRE(s.cols() == 1);
  CHECK((row * s).is_zero());
  CHECK((s(0, 0) == parse_polynomial(r, "y") || s(0, 0) == parse_polynomial(r, "-y")));

  CHECK(syzygy_basis(PolyMatrix::identity(r, 3)).cols() == 0);
  PolyMatrix zero(r, 1, 2);
  CHECK(syzygy_basis(zero).cols() == 2);

  PolyMatrix m = parse_matrix(r, "{x^2, x*y, y^2; y, 0, x}");
  s = syzygy_basis(m);
  CHECK((m * s).is_zero());
  // Composites along iterated syzygies vanish.
  PolyMatrix s2 = syzygy_basis(s);
  CHECK((s * s2).is_zero());
}

TEST_CASE("lift through a submodule") {
  auto r1 = R({"x"});
  PolyMatrix c = lift_through(parse_matrix(r1, "{x^3}"), parse_matrix(r1, "{x^2}"));
  CHECK(c(0, 0) == parse_polynomial(r1, "x"));
  c = lift_through(PolyMatrix(r1, 1, 1), parse_matrix(r1, "{x^2}"));
  CHECK(c.is_zero());

  auto r2 = R({"x", "y"});
  PolyMatrix gens = parse_matrix(r2, "{x^2, x*y}");
  PolyMatrix target = parse_matrix(r2, "{x^2*y}");
  c = lift_through(target, gens);
  CHECK(gens * c == target);

  Lifter lifter(gens);
  CHECK_FALSE(lifter.contains(column(parse_matrix(r2, "{y^2}"), 0)));
  CHECK_THROWS_AS(lifter.lift(column(parse_matrix(r2, "{x}"), 0)), NotMemberError);
  PolyMatrix syz = lifter.syzygies();
  CHECK((gens * syz).is_zero());
  CHECK(syz.cols() == 1);
}

TEST_CASE("minimal graded free resolutions") {
  auto r1 = R({"x"});
  auto res = free_resolution({r1, {0}, parse_matrix(r1, "{x}")});
  CHECK(res.ranks() == std::vector<std::size_t>{1, 1});

  auto r2 = R({"x", "y"});
  res = free_resolution({r2, {0}, parse_matrix(r2, "{x, y}")});
  CHECK(res.ranks() == std::vector<std::size_t>{1, 2, 1});
  CHECK((res.maps[0] * res.maps[1]).is_zero());
  CHECK(res.degrees[2] == std::vector<long>{2});

  res = free_resolution({r2, {0, 0}, PolyMatrix(r2, 2, 0)});
  CHECK(res.length() == 0);

  // Redundant relations and a unit entry are minimised away.
  res = free_resolution({r2, {0, 1}, parse_matrix(r2, "{x, y, x^2, 0; -1, 0, x, y}")});
  CHECK(res.ranks() == std::vector<std::size_t>{1, 2, 1});

  auto r3 = R({"x", "y", "z"});
  res = free_resolution({r3, {0}, parse_matrix(r3, "{x, y, z}")});
  CHECK(res.ranks() == std::vector<std::size_t>{1, 3, 3, 1});
  for (std::size_t i = 0; i + 1 < res.maps.size(); ++i)
    CHECK((res.maps[i] * res.maps[i + 1]).is_zero());
  CHECK_THROWS_AS(free_resolution({r2, {0}, parse_matrix(r2, "{x + y^2}")}), InputError);
}
