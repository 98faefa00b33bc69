#include "doctest.h"

#include "mflef/errors.hpp"
#include "mflef/mfcore.hpp"
#include "mflef/parse.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace mflef;

namespace {

RingPtr R(std::vector<std::string> names) { return make_ring(std::move(names)); }

MatrixFactorization mf(const RingPtr &r, const char *w, const char *d0, const char *d1) {
  return MatrixFactorization(parse_polynomial(r, w), parse_matrix(r, d0), parse_matrix(r, d1));
}

PolyMatrix diag(const RingPtr &r, std::vector<Scalar> c) {
  PolyMatrix m(r, c.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    m(i, i) = Polynomial(r, c[i]);
  return m;
}

// True when b = P a P^{-1} for a signed permutation P preserving parity.
bool equal_up_to_signed_permutation(const MatrixFactorization &a, const MatrixFactorization &b) {
  if (a.even_rank() != b.even_rank() || a.odd_rank() != b.odd_rank())
    return false;
  const std::size_t n = a.rank(), r0 = a.even_rank();
  std::vector<std::size_t> pe(r0), po(n - r0);
  std::iota(pe.begin(), pe.end(), 0);
  std::iota(po.begin(), po.end(), r0);
  const PolyMatrix da = a.delta(), db = b.delta();
  do {
    do {
      std::vector<std::size_t> p(pe);
      p.insert(p.end(), po.begin(), po.end());
      for (std::size_t signs = 0; signs < (std::size_t(1) << n); ++signs) {
        PolyMatrix m(a.ring(), n, n);
        for (std::size_t j = 0; j < n; ++j)
          m(p[j], j) = Polynomial(a.ring(), Scalar(signs >> j & 1 ? -1 : 1));
        if (m * da == db * m)
          return true;
      }
    } while (std::next_permutation(po.begin(), po.end()));
  } while (std::next_permutation(pe.begin(), pe.end()));
  return false;
}

Polynomial random_poly(std::mt19937 &rng, const RingPtr &r, int maxdeg) {
  Polynomial f(r);
  for (int k = 0; k < 3; ++k) {
    std::vector<int> e(r->size());
    for (auto &x : e)
      x = static_cast<int>(rng() % static_cast<unsigned>(maxdeg + 1));
    f += Polynomial(r, Monomial(e), Scalar(static_cast<long>(rng() % 5) - 2));
  }
  return f;
}

} // namespace

TEST_CASE("validation of factorizations") {
  auto r = R({"x", "y"});
  CHECK_NOTHROW(mf(r, "x^2", "{x}", "{x}"));
  CHECK_NOTHROW(mf(r, "x^3", "{x}", "{x^2}"));
  CHECK_THROWS_AS(mf(r, "x^2", "{x}", "{y}"), ValidationError);
  CHECK_THROWS_AS(mf(r, "x^2", "{x, 0}", "{x}"), ValidationError);
}

TEST_CASE("Koszul factorizations") {
  auto r = R({"x", "y"});
  const Polynomial x = parse_polynomial(r, "x"), y = parse_polynomial(r, "y");
  auto k = koszul_mf(r, {x}, {x});
  CHECK(k.d0() == parse_matrix(r, "{x}"));
  CHECK(k.d1() == parse_matrix(r, "{x}"));
  k = koszul_mf(r, {x}, {y});
  CHECK(k.potential() == parse_polynomial(r, "x*y"));
  k = koszul_mf(r, {x, y}, {x, y});
  CHECK(k.even_rank() == 2);
  CHECK(k.odd_rank() == 2);
  CHECK(k.potential() == parse_polynomial(r, "x^2 + y^2"));
  // (sum a e + b iota)^2 = sum a b on every basis vector
  const PolyMatrix d = k.delta();
  CHECK(d * d == k.potential() * PolyMatrix::identity(r, 4));

  auto r3 = R({"x", "y", "z"});
  Vec a, b;
  for (const char *s : {"x", "y^2", "x*z"})
    a.push_back(parse_polynomial(r3, s));
  for (const char *s : {"y", "z", "x + y"})
    b.push_back(parse_polynomial(r3, s));
  k = koszul_mf(r3, a, b);
  CHECK(k.even_rank() == 4);
  CHECK(k.potential() == parse_polynomial(r3, "x*y + y^2*z + x^2*z + x*y*z"));
}

TEST_CASE("tensor products") {
  auto rx = R({"x"}), ry = R({"y"});
  auto a = mf(rx, "x^2", "{x}", "{x}"), b = mf(ry, "y^2", "{y}", "{y}");
  auto t = tensor_mf(a, b);
  auto rxy = R({"x", "y"});
  auto k = koszul_mf(rxy, {parse_polynomial(rxy, "x"), parse_polynomial(rxy, "y")},
                     {parse_polynomial(rxy, "x"), parse_polynomial(rxy, "y")});
  CHECK(t.ring()->names() == rxy->names());
  CHECK(equal_up_to_signed_permutation(k.embed(t.ring()), t));

  auto unit = koszul_mf(rx, {}, {});
  CHECK(unit.even_rank() == 1);
  CHECK(unit.odd_rank() == 0);
  CHECK(tensor_mf(a, unit) == a);

  auto c = tensor_mf(mf(rx, "x^3", "{x}", "{x^2}"), mf(ry, "y^3", "{y^2}", "{y}"));
  CHECK(c.potential() == parse_polynomial(c.ring(), "x^3 + y^3"));
}

TEST_CASE("pullback by symmetries") {
  auto r = R({"x"});
  auto a = mf(r, "x^2", "{x}", "{x}");
  auto p = pullback(parse_symmetry("zeta(2)^[1]"), a);
  CHECK(p.d0() == parse_matrix(r, "{-x}"));
  CHECK(p.d1() == parse_matrix(r, "{-x}"));
  auto b = mf(r, "x^3", "{x}", "{x^2}");
  const Symmetry t = parse_symmetry("zeta(3)^[1]");
  p = pullback(t, b);
  CHECK(p.d0() == parse_matrix(r, "{zeta(3)*x}"));
  CHECK(p.d1() == parse_matrix(r, "{zeta(3)^2*x^2}"));
  CHECK(pullback(inverse(t), p) == b);
  CHECK(pullback(t, pullback(t, b)) == pullback(compose(t, t), b));
  CHECK_THROWS_AS(pullback(parse_symmetry("zeta(2)^[1]"), b), InputError);
}

TEST_CASE("stabilized diagonal") {
  auto r = R({"x"});
  auto d = stabilized_diagonal(parse_polynomial(r, "x^2"));
  CHECK(d.d0() == parse_matrix(d.ring(), "{x + x'}"));
  CHECK(d.d1() == parse_matrix(d.ring(), "{x' - x}"));
  d = stabilized_diagonal(parse_polynomial(r, "x^3"));
  CHECK(d.d0() == parse_matrix(d.ring(), "{x^2 + x*x' + x'^2}"));
  auto r2 = R({"a", "b"});
  d = stabilized_diagonal(parse_polynomial(r2, "a*b"));
  CHECK(d.even_rank() == 2);
  CHECK(d.potential() == parse_polynomial(d.ring(), "a'*b' - a*b"));
}

TEST_CASE("closed morphisms and equivariance") {
  auto r = R({"x"});
  auto a = mf(r, "x^2", "{x}", "{x}");
  CHECK(morphism_closed(identity_morphism(a)));
  auto b = mf(r, "x^3", "{x}", "{x^2}");
  const Symmetry t3 = parse_symmetry("zeta(3)^[1]");
  const Scalar z = Scalar::zeta(3);
  MFMorphism alpha(b, pullback(t3, b), 0, diag(r, {Scalar(1), z}));
  CHECK(morphism_closed(alpha));
  const Symmetry t2 = parse_symmetry("zeta(2)^[1]");
  CHECK_FALSE(morphism_closed(MFMorphism(a, pullback(t2, a), 0, diag(r, {Scalar(1), Scalar(1)}))));

  MFMorphism sign(a, pullback(t2, a), 0, diag(r, {Scalar(1), Scalar(-1)}));
  CHECK(morphism_closed(sign));
  CHECK(equivariance_power_check(sign, t2, 2));
  CHECK(equivariance_power_check(alpha, t3, 3));
  MFMorphism bad(b, pullback(t3, b), 0, diag(r, {Scalar(1), -z}));
  CHECK_FALSE(equivariance_power_check(bad, t3, 3));

  auto nat = diagonal_equivariant_structure(b, t3);
  CHECK(nat.map == alpha.map);
  CHECK(inverse_morphism(alpha).map == diag(r, {Scalar(1), z.inverse()}));
}

TEST_CASE("supertraces at the origin") {
  auto r = R({"x"});
  auto a = mf(r, "x^2", "{x}", "{x}");
  CHECK(supertrace_at_origin(identity_morphism(a)).is_zero());
  const Symmetry t2 = parse_symmetry("zeta(2)^[1]");
  CHECK(supertrace_at_origin(MFMorphism(a, pullback(t2, a), 0, diag(r, {Scalar(1), Scalar(-1)}))) == Scalar(2));
  auto b = mf(r, "x^3", "{x}", "{x^2}");
  const Symmetry t3 = parse_symmetry("zeta(3)^[1]");
  CHECK(supertrace_at_origin(MFMorphism(b, pullback(t3, b), 0, diag(r, {Scalar(1), Scalar::zeta(3)}))) ==
        Scalar(1) - Scalar::zeta(3));
  const OriginComplex o = restrict_to_origin(b);
  CHECK((o.delta * o.delta).is_zero());
}

TEST_CASE("supertrace kills coboundaries at the origin") {
  auto r = R({"x", "y"});
  auto k = koszul_mf(r, {parse_polynomial(r, "x^2"), parse_polynomial(r, "y")},
                     {parse_polynomial(r, "x"), parse_polynomial(r, "y^2")});
  std::mt19937 rng(11);
  for (int it = 0; it < 10; ++it) {
    PolyMatrix psi(r, k.rank(), k.rank());
    for (std::size_t i = 0; i < k.rank(); ++i)
      for (std::size_t j = 0; j < k.rank(); ++j)
        if (k.parity_of(i) != k.parity_of(j))
          psi(i, j) = random_poly(rng, r, 2);
    const PolyMatrix dpsi = morphism_differential(k, k, 1, psi);
    CHECK(supertrace(dpsi, k.even_rank()).is_zero());
  }
}

TEST_CASE("grading inference") {
  auto r = R({"x"});
  auto g = infer_grading(mf(r, "x^3", "{x}", "{x^2}"));
  REQUIRE(g);
  CHECK(*g == std::vector<long>{0, 1});
  CHECK_FALSE(infer_grading(mf(r, "x^2 + x^3", "{x}", "{x + x^2}")));
}

TEST_CASE("stabilization of graded modules") {
  auto r1 = R({"x"});
  auto s = stabilize_module({r1, {0}, parse_matrix(r1, "{x}")}, parse_polynomial(r1, "x^2"));
  CHECK(s.mf.d0() == parse_matrix(r1, "{x}"));
  CHECK(s.mf.d1() == parse_matrix(r1, "{x}"));
  REQUIRE(s.involution);
  CHECK(supertrace_at_origin(*s.involution) == Scalar(2));

  auto r2 = R({"x", "y"});
  const Polynomial q = parse_polynomial(r2, "x^2 + y^2");
  s = stabilize_module({r2, {0}, PolyMatrix(r2, 1, 1) + q * PolyMatrix::identity(r2, 1)}, q);
  CHECK(s.mf.d0() == parse_matrix(r2, "{1}"));
  CHECK(s.mf.d1() == parse_matrix(r2, "{x^2 + y^2}"));
  REQUIRE(s.involution);
  CHECK(supertrace_at_origin(*s.involution).is_zero());

  s = stabilize_module({r2, {0}, parse_matrix(r2, "{x, y}")}, q);
  CHECK(s.mf.even_rank() == 2);
  CHECK(s.mf.odd_rank() == 2);
  REQUIRE(s.involution);
  CHECK(supertrace_at_origin(*s.involution) == Scalar(4));

  CHECK_THROWS_AS(stabilize_module({r2, {0}, parse_matrix(r2, "{x}")}, q), InputError);
}
