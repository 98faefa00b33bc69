#include "doctest.h"

#include "mflef/errors.hpp"
#include "mflef/milnor.hpp"
#include "mflef/parse.hpp"

#include <random>

using namespace mflef;

namespace {

RingPtr R(std::vector<std::string> names) { return make_ring(std::move(names)); }

Scalar trace(const ScalarMatrix &m) {
  Scalar s;
  for (std::size_t i = 0; i < m.rows(); ++i)
    s += m(i, i);
  return s;
}

} // namespace

TEST_CASE("residues of one-variable and Fermat potentials") {
  auto r1 = R({"x"});
  MilnorAlgebra a1(parse_polynomial(r1, "x^2"));
  CHECK(a1.milnor_number() == 1);
  CHECK(a1.residue(parse_polynomial(r1, "1")) == Scalar(1, 2));

  MilnorAlgebra a2(parse_polynomial(r1, "x^3"));
  CHECK(a2.milnor_number() == 2);
  CHECK(a2.residue(parse_polynomial(r1, "x")) == Scalar(1, 3));
  CHECK(a2.residue(parse_polynomial(r1, "1")).is_zero());

  auto r2 = R({"x", "y"});
  MilnorAlgebra f(parse_polynomial(r2, "x^3 + y^3"));
  CHECK(f.milnor_number() == 4);
  CHECK(f.residue(parse_polynomial(r2, "x*y")) == Scalar(1, 9));
  CHECK(f.residue(parse_polynomial(r2, "x^2")).is_zero());

  MilnorAlgebra h(parse_polynomial(r2, "x*y"));
  CHECK(h.milnor_number() == 1);
  CHECK(h.residue(parse_polynomial(r2, "1")) == Scalar(-1));
}

TEST_CASE("empty ring and non-isolated potentials") {
  auto r0 = R({});
  MilnorAlgebra z{Polynomial(r0)};
  CHECK(z.milnor_number() == 1);
  CHECK(z.residue(Polynomial(r0, Scalar(7, 2))) == Scalar(7, 2));

  auto r2 = R({"x", "y"});
  CHECK_THROWS_AS(MilnorAlgebra(parse_polynomial(r2, "x^2")), NonIsolatedError);
  CHECK_THROWS_AS(MilnorAlgebra(parse_polynomial(r2, "x^2*y")), NonIsolatedError);
}

TEST_CASE("residue of hessian times f is the trace of multiplication by f") {
  auto r2 = R({"x", "y"});
  auto r3 = R({"x", "y", "z"});
  const std::vector<Polynomial> ws = {
      parse_polynomial(r2, "x^3 + y^3"), parse_polynomial(r2, "x^2*y + y^4"),
      parse_polynomial(r2, "x^3*y + y^3"), parse_polynomial(r3, "x^2 + y^3 + z^4"),
      parse_polynomial(r3, "x^3 + y^3 + z^3")};
  std::mt19937 rng(5);
  for (const auto &w : ws) {
    MilnorAlgebra a(w);
    const Polynomial hess = hessian_determinant(w);
    CHECK(a.residue(hess) == Scalar(static_cast<long>(a.milnor_number())));
    for (int it = 0; it < 4; ++it) {
      Polynomial f(w.ring());
      for (const auto &m : a.basis())
        if (rng() % 2)
          f += Polynomial(w.ring(), m, Scalar(static_cast<long>(rng() % 7) - 3));
      CHECK(a.residue(hess * f) == trace(a.multiplication_matrix(f)));
    }
    // Gram matrix is symmetric and non-degenerate.
    const ScalarMatrix g = a.gram_matrix();
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        CHECK(g(i, j) == g(j, i));
    CHECK(rank(g) == a.milnor_number());
  }
}

TEST_CASE("non quasi-homogeneous residues are refused") {
  auto r1 = R({"x"});
  MilnorAlgebra a(parse_polynomial(r1, "x^3 + x^4"));
  // global quotient: the critical point at -3/4 counts too
  CHECK(a.milnor_number() == 3);
  CHECK_THROWS_AS(a.residue(parse_polynomial(r1, "x")), InputError);
}

TEST_CASE("pairing signs") {
  CHECK(pairing_sign(0) == 1);
  CHECK(pairing_sign(1) == 1);
  CHECK(pairing_sign(2) == -1);
  CHECK(pairing_sign(3) == -1);
  CHECK(pairing_sign(4) == 1);
}

TEST_CASE("trace spaces") {
  auto r2 = R({"x", "y"});
  const Polynomial w = parse_polynomial(r2, "x^3 + y^3");
  auto s = trace_space(w, parse_symmetry("zeta(3)^[1,0]"));
  CHECK(s.fixed == std::vector<std::size_t>{1});
  CHECK(s.restricted.str() == "y^3");
  CHECK(s.parity() == 1);
  CHECK(s.algebra->milnor_number() == 2);
  CHECK_THROWS_AS(trace_space(w, parse_symmetry("zeta(2)^[1,0]")), InputError);

  auto r1 = R({"x"});
  const Polynomial q = parse_polynomial(r1, "x^2");
  auto sp = std::make_shared<const TraceSpace>(trace_space(q, parse_symmetry("zeta(2)^[1]")));
  CHECK(sp->parity() == 0);
  TraceSpaceElement one{sp, Polynomial(sp->fixed_ring, Scalar(1))};
  CHECK(canonical_pairing(one, one) == Scalar(1, 2));

  auto id = std::make_shared<const TraceSpace>(trace_space(q, parse_symmetry("zeta(1)^[0]")));
  TraceSpaceElement e{id, Polynomial(id->fixed_ring, Scalar(1))};
  CHECK(canonical_pairing(e, e) == Scalar(1, 2));
}
