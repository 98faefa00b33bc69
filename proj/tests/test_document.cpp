#include "doctest.h"

#include "mflef/document.hpp"
#include "mflef/errors.hpp"
#include "mflef/parse.hpp"

#include <fstream>
#include <sstream>

using namespace mflef;

namespace {

std::string fixture(const std::string &name) {
  std::ifstream in(std::string(MFLEF_FIXTURES) + "/" + name);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("minimal documents") {
  auto ws = parse_document("[potential] \n w = x^2\n");
  CHECK(ws.potentials.size() == 1);
  CHECK(ws.potential("w") == parse_polynomial(make_ring({"x"}), "x^2"));
  ws = parse_document("# nothing\n\n");
  CHECK(ws.potentials.empty());
  CHECK_THROWS_AS(ws.potential("w"), InputError);
}

TEST_CASE("variable order") {
  auto ws = parse_document("[potential]\nw = y^3 + x^3\nvars = x, y\nv = y^3 + x^3\n");
  CHECK(ws.potential("w").ring()->names() == std::vector<std::string>{"y", "x"});
  CHECK(ws.potential("v").ring()->names() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_document("[potential]\nw = x^2\nv = x + * y\n");
    FAIL("no error");
  } catch (const SyntaxError &e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_document("[nonsense]\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("w = x\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\nw x\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\n2w = x\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x\n[mf]\nA = mf(w, {1}, {x}\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x\n[mf]\nA = frob(w)\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^2\n[case]\nc = frob w\n"), SyntaxError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^2\n[case]\nc = milnor v\n"), SyntaxError);
}

TEST_CASE("validation at load time") {
  const std::string head = "[potential]\nw = x^3\n[symmetry]\nt = zeta(3)^[1] for w\n[mf]\nB = mf(w, {x}, {x^2})\n";
  CHECK_NOTHROW(parse_document(head));
  // delta^2 != w
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^3\n[mf]\nB = mf(w, {x}, {x})\n"), ValidationError);
  // not closed: x times the identity on the even generator only
  CHECK_THROWS_AS(parse_document(head + "[morphism]\nf = morphism(B -> B, even, {x, 0; 0, 0})\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^3\n[symmetry]\nt = zeta(2)^[1] for w\n"), ValidationError);
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^3\n[symmetry]\nt = zeta(3)^[1, 0] for w\n"), ValidationError);
  CHECK_THROWS_AS(parse_document(head + "[morphism]\nf = morphism(B -> u*B, even, {1, 0; 0, 1})\n"), InputError);
  CHECK_THROWS_AS(parse_document(head + "[morphism]\nf = identity(C)\n"), InputError);
  CHECK_THROWS_AS(parse_document(head + "[potential]\nB = x\n"), InputError);
  // not homogeneous
  CHECK_THROWS_AS(parse_document("[module]\nM = module({0}, {x + x^2})\n"), InputError);
  CHECK_THROWS_AS(parse_document("[module]\nM = module({0, 1}, {x})\n"), ValidationError);
  // koszul potential mismatch
  CHECK_THROWS_AS(parse_document("[potential]\nw = x^2 + y^2\n[mf]\nK = koszul(w, {x, y}, {x, y^2})\n"),
                  ValidationError);
}

TEST_CASE("derived entries expand") {
  auto ws = parse_document("[potential]\nw = x^3\n[symmetry]\nt = zeta(3)^[1] for w\n[mf]\nB = mf(w, {x}, {x^2})\n"
                           "[morphism]\nn = natural(B, t, 2)\nm = inverse(n)\ni = identity(t*B)\n");
  const auto &n = ws.morphism("n");
  CHECK(n.map(0, 0) == Polynomial(n.map.ring(), Scalar(2)));
  CHECK(ws.morphisms.at("m").source == MFRef{"t", "B"});
  CHECK(ws.morphisms.at("i").target == MFRef{"t", "B"});
  CHECK(ws.morphism("m").map(0, 0) == Polynomial(n.map.ring(), Scalar(1, 2)));
}

TEST_CASE("multi-line values and cases") {
  auto ws = parse_document("[potential]\nvars = x, y\nq = x^2 + y^2\n[mf]\nK = mf(q, {x, y;\n  -y, x},\n"
                           "  {x, -y; y, x})\n[case]\nm = milnor q expect 1\n");
  CHECK(ws.mf("K").even_rank() == 2);
  CHECK(ws.case_entry("m").command == "milnor");
  CHECK(ws.case_entry("m").args == std::vector<std::string>{"q"});
  CHECK(*ws.case_entry("m").expect == Scalar(1));
}

TEST_CASE("serialize round trip") {
  for (const char *name : {"a2.mfd", "corpus.mfd", "exit1.mfd", "exit2.mfd"}) {
    const Workspace ws = parse_document(fixture(name));
    const std::string text = serialize(ws);
    const Workspace again = parse_document(text);
    CHECK(again == ws);
    CHECK(serialize(again) == text);
  }
  const Workspace a = parse_document(fixture("a2.mfd"));
  Workspace b = a;
  b.cases.begin()->second.expect = Scalar(7);
  CHECK_FALSE(a == b);
}
