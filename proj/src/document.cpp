#include "mflef/document.hpp"

#include "mflef/errors.hpp"
#include "mflef/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mflef {

namespace {

const std::vector<std::string> kKinds = {"potential", "symmetry", "mf", "morphism", "module", "case"};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

bool is_identifier(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// piece of a value with its 0-based offset in the value text
struct Piece {
  std::string text;
  std::size_t offset;
};

Piece trimmed(std::string_view s, std::size_t offset) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  return {trim(s), offset + a};
}

struct Entry {
  std::size_t line;
  std::string kind, name;
  std::string value;
  std::size_t value_column; // 1-based column of value[0]
  std::vector<std::string> vars;
  bool has_vars = false;

  [[noreturn]] void fail(const std::string &msg, std::size_t offset) const {
    throw SyntaxError("line " + std::to_string(line) + ": " + msg, value_column + offset);
  }

  // Runs f, re-throwing library errors with the line and entity prepended.
  template <class F> auto guard(std::size_t offset, F &&f) const -> decltype(f()) {
    const std::string where = "line " + std::to_string(line) + ": " + kind + " " + name + ": ";
    try {
      return f();
    } catch (const SyntaxError &e) {
      throw SyntaxError("line " + std::to_string(line) + ": " + e.message(), value_column + offset + e.column() - 1);
    } catch (const ValidationError &e) {
      throw ValidationError(where + e.what());
    } catch (const NonIsolatedError &e) {
      throw NonIsolatedError(where + e.what());
    } catch (const Error &e) {
      throw InputError(where + e.what());
    }
  }
};

// Top-level comma split, ignoring commas inside (), {} and [].
std::vector<Piece> split_args(const Entry &en, const Piece &p) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    const char c = i < p.text.size() ? p.text[i] : ',';
    if (c == '(' || c == '{' || c == '[')
      ++depth;
    else if (c == ')' || c == '}' || c == ']')
      --depth;
    if (depth < 0)
      en.fail("unbalanced '" + std::string(1, c) + "'", p.offset + i);
    if (c == ',' && depth == 0) {
      out.push_back(trimmed(std::string_view(p.text).substr(start, i - start), p.offset + start));
      start = i + 1;
    }
  }
  if (out.size() == 1 && out[0].text.empty())
    out.clear();
  return out;
}

// head(args) -> head and argument pieces
std::pair<std::string, std::vector<Piece>> call(const Entry &en) {
  const std::string &v = en.value;
  const auto open = v.find('(');
  if (open == std::string::npos || v.back() != ')')
    en.fail("expected a call like mf(...)", 0);
  const std::string head = trim(std::string_view(v).substr(0, open));
  if (!is_identifier(head))
    en.fail("bad constructor name '" + head + "'", 0);
  return {head, split_args(en, {v.substr(open + 1, v.size() - open - 2), open + 1})};
}

void arity(const Entry &en, const std::string &head, const std::vector<Piece> &args, std::size_t lo,
           std::size_t hi) {
  if (args.size() < lo || args.size() > hi)
    en.fail(head + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                " arguments, got " + std::to_string(args.size()),
            0);
}

RingPtr entry_ring(const Entry &en, std::string_view text) {
  return make_ring(en.has_vars ? en.vars : collect_identifiers(text));
}

Vec flatten(const PolyMatrix &m) {
  Vec v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      v.push_back(m(i, j));
  return v;
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

class Loader {
public:
  Workspace ws;

  void add(const Entry &en) {
    if (ws.kind_of(en.name))
      throw InputError("line " + std::to_string(en.line) + ": " + en.name + " is already defined");
    if (en.kind == "potential")
      potential(en);
    else if (en.kind == "symmetry")
      symmetry(en);
    else if (en.kind == "mf")
      mf(en);
    else if (en.kind == "morphism")
      morphism(en);
    else if (en.kind == "module")
      module(en);
    else
      case_entry(en);
  }

private:
  void potential(const Entry &en) {
    const RingPtr r = en.guard(0, [&] { return entry_ring(en, en.value); });
    ws.potentials.emplace(en.name, en.guard(0, [&] { return parse_polynomial(r, en.value); }));
  }

  void symmetry(const Entry &en) {
    std::string text = en.value, bound;
    const auto close = text.rfind(']');
    if (close != std::string::npos) {
      const std::string rest = trim(std::string_view(text).substr(close + 1));
      if (!rest.empty()) {
        if (rest.rfind("for", 0) != 0 || rest.size() < 4 || !std::isspace(static_cast<unsigned char>(rest[3])))
          en.fail("expected 'for <potential>' after the symmetry", close + 1);
        bound = trim(std::string_view(rest).substr(3));
        text = text.substr(0, close + 1);
      }
    }
    SymmetryEntry s{en.guard(0, [&] { return parse_symmetry(text); }), bound};
    if (!bound.empty()) {
      en.guard(0, [&] {
        const Polynomial &w = ws.potential(bound);
        if (s.t.size() != w.nvars())
          throw ValidationError("symmetry has " + std::to_string(s.t.size()) + " entries for " +
                                std::to_string(w.nvars()) + " variables");
        if (!check_symmetry(w, s.t))
          throw ValidationError(symmetry_str(s.t) + " is not a symmetry of " + w.str());
      });
    }
    ws.symmetries.emplace(en.name, std::move(s));
  }

  void mf(const Entry &en) {
    auto [head, args] = call(en);
    if (args.empty())
      en.fail(head + " needs a potential", 0);
    const std::string pot = args[0].text;
    const Polynomial &w = en.guard(args[0].offset, [&]() -> const Polynomial & { return ws.potential(pot); });
    const RingPtr &r = w.ring();
    auto matrix = [&](const Piece &p) { return en.guard(p.offset, [&] { return parse_matrix(r, p.text); }); };
    MatrixFactorization e;
    if (head == "mf") {
      arity(en, head, args, 3, 3);
      const PolyMatrix d0 = matrix(args[1]), d1 = matrix(args[2]);
      e = en.guard(0, [&] { return MatrixFactorization(w, d0, d1); });
    } else if (head == "koszul") {
      arity(en, head, args, 3, 3);
      const Vec a = flatten(matrix(args[1])), b = flatten(matrix(args[2]));
      e = en.guard(0, [&] { return koszul_mf(r, a, b); });
    } else if (head == "tensor") {
      arity(en, head, args, 3, 3);
      const auto &a = en.guard(args[1].offset, [&]() -> const MatrixFactorization & { return ws.mf(args[1].text); });
      const auto &b = en.guard(args[2].offset, [&]() -> const MatrixFactorization & { return ws.mf(args[2].text); });
      e = en.guard(0, [&] { return tensor_mf(a, b).embed(r); });
    } else {
      en.fail("unknown factorization constructor '" + head + "'", 0);
    }
    en.guard(0, [&] {
      if (e.potential() != w)
        throw ValidationError("factorization of " + e.potential().str() + ", not of " + pot + " = " + w.str());
    });
    ws.mfs.emplace(en.name, MFEntry{pot, std::move(e)});
  }

  MFRef ref(const Entry &en, const Piece &p) {
    MFRef out;
    const auto star = p.text.find('*');
    if (star == std::string::npos) {
      out.mf = p.text;
    } else {
      out.symmetry = trim(std::string_view(p.text).substr(0, star));
      out.mf = trim(std::string_view(p.text).substr(star + 1));
    }
    if (!is_identifier(out.mf) || (star != std::string::npos && !is_identifier(out.symmetry)))
      en.fail("expected 'B' or 't*B', got '" + p.text + "'", p.offset);
    en.guard(p.offset, [&] { ws.resolve(out); });
    return out;
  }

  void morphism(const Entry &en) {
    auto [head, args] = call(en);
    std::optional<MorphismEntry> m;
    if (head == "morphism") {
      arity(en, head, args, 3, 3);
      const auto arrow = args[0].text.find("->");
      if (arrow == std::string::npos)
        en.fail("expected 'source -> target'", args[0].offset);
      const MFRef src = ref(en, trimmed(std::string_view(args[0].text).substr(0, arrow), args[0].offset));
      const MFRef tgt = ref(en, trimmed(std::string_view(args[0].text).substr(arrow + 2), args[0].offset + arrow + 2));
      int parity = 0;
      if (args[1].text == "odd" || args[1].text == "1")
        parity = 1;
      else if (args[1].text != "even" && args[1].text != "0")
        en.fail("parity must be even or odd", args[1].offset);
      const MatrixFactorization a = ws.resolve(src), b = ws.resolve(tgt);
      const PolyMatrix map = en.guard(args[2].offset, [&] { return parse_matrix(a.ring(), args[2].text); });
      m.emplace(MorphismEntry{src, tgt, en.guard(0, [&] { return MFMorphism(a, b, parity, map); })});
    } else if (head == "inverse") {
      arity(en, head, args, 1, 1);
      const auto it = ws.morphisms.find(args[0].text);
      if (it == ws.morphisms.end())
        en.fail("unknown morphism '" + args[0].text + "'", args[0].offset);
      m.emplace(MorphismEntry{it->second.target, it->second.source,
                              en.guard(0, [&] { return inverse_morphism(it->second.morphism); })});
    } else if (head == "natural") {
      arity(en, head, args, 2, 3);
      const MFRef src = ref(en, args[0]);
      if (!src.symmetry.empty())
        en.fail("natural takes a plain factorization", args[0].offset);
      const MFRef tgt{args[1].text, src.mf};
      en.guard(args[1].offset, [&] { ws.resolve(tgt); });
      const Scalar scale = args.size() == 3 ? en.guard(args[2].offset, [&] { return parse_scalar(args[2].text); })
                                            : Scalar(1);
      m.emplace(MorphismEntry{src, tgt, en.guard(0, [&] {
                                return diagonal_equivariant_structure(ws.mf(src.mf), ws.symmetry(tgt.symmetry), scale);
                              })});
    } else if (head == "identity") {
      arity(en, head, args, 1, 1);
      const MFRef src = ref(en, args[0]);
      m.emplace(MorphismEntry{src, src, identity_morphism(ws.resolve(src))});
    } else {
      en.fail("unknown morphism constructor '" + head + "'", 0);
    }
    en.guard(0, [&] {
      if (!morphism_closed(m->morphism))
        throw ValidationError("morphism is not closed under the differential");
    });
    ws.morphisms.emplace(en.name, std::move(*m));
  }

  void module(const Entry &en) {
    auto [head, args] = call(en);
    if (head != "module")
      en.fail("expected module(...)", 0);
    arity(en, head, args, 2, 2);
    const Piece &dp = args[0];
    if (dp.text.size() < 2 || dp.text.front() != '{' || dp.text.back() != '}')
      en.fail("generator degrees must be written {d1, d2, ...}", dp.offset);
    std::vector<long> degrees;
    for (const auto &d : split_args(en, {dp.text.substr(1, dp.text.size() - 2), dp.offset + 1})) {
      try {
        std::size_t used = 0;
        degrees.push_back(std::stol(d.text, &used));
        if (used != d.text.size())
          throw std::invalid_argument(d.text);
      } catch (const std::logic_error &) {
        en.fail("bad degree '" + d.text + "'", d.offset);
      }
    }
    const RingPtr r = en.guard(0, [&] { return entry_ring(en, args[1].text); });
    GradedModulePresentation m{r, degrees, en.guard(args[1].offset, [&] { return parse_matrix(r, args[1].text); })};
    en.guard(0, [&] {
      if (m.relations.rows() != degrees.size() && !(m.relations.rows() == 0 && m.relations.cols() == 0))
        throw ValidationError("relation matrix has " + std::to_string(m.relations.rows()) + " rows for " +
                              std::to_string(degrees.size()) + " generators");
      if (m.relations.rows() == 0)
        m.relations = PolyMatrix(r, degrees.size(), 0);
      column_degrees(m.relations, degrees);
    });
    ws.modules.emplace(en.name, std::move(m));
  }

  void case_entry(const Entry &en) {
    std::string body = en.value;
    CaseEntry c;
    const auto ex = body.find(" expect ");
    if (ex != std::string::npos) {
      const std::string v = trim(std::string_view(body).substr(ex + 8));
      c.expect = en.guard(ex + 8, [&] { return parse_scalar(v); });
      body = body.substr(0, ex);
    }
    std::istringstream in(body);
    in >> c.command;
    const auto &names = command_names();
    if (std::find(names.begin(), names.end(), c.command) == names.end())
      en.fail("unknown command '" + c.command + "'", 0);
    for (std::string a; in >> a;) {
      const bool number = std::all_of(a.begin(), a.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      if (!number && !ws.kind_of(a))
        en.fail("unknown entity '" + a + "'", en.value.find(a));
      c.args.push_back(a);
    }
    ws.cases.emplace(en.name, std::move(c));
  }
};

} // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = {"milnor", "bb", "pair", "hlf-verify", "isolated-verify",
                                                 "lunts", "zero-check", "trace-identity", "divisibility",
                                                 "stabilize", "hilbert", "corpus"};
  return names;
}

namespace {

template <class M> const typename M::mapped_type &lookup(const M &m, const std::string &name, const char *kind) {
  const auto it = m.find(name);
  if (it == m.end())
    throw InputError(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

} // namespace

const Polynomial &Workspace::potential(const std::string &name) const { return lookup(potentials, name, "potential"); }
const Symmetry &Workspace::symmetry(const std::string &name) const { return lookup(symmetries, name, "symmetry").t; }
const MatrixFactorization &Workspace::mf(const std::string &name) const { return lookup(mfs, name, "factorization").mf; }
const MFMorphism &Workspace::morphism(const std::string &name) const {
  return lookup(morphisms, name, "morphism").morphism;
}
const GradedModulePresentation &Workspace::module(const std::string &name) const {
  return lookup(modules, name, "module");
}
const CaseEntry &Workspace::case_entry(const std::string &name) const { return lookup(cases, name, "case"); }

MatrixFactorization Workspace::resolve(const MFRef &ref) const {
  const MatrixFactorization &e = mf(ref.mf);
  return ref.symmetry.empty() ? e : pullback(symmetry(ref.symmetry), e);
}

std::optional<std::string> Workspace::kind_of(const std::string &name) const {
  if (potentials.count(name))
    return "potential";
  if (symmetries.count(name))
    return "symmetry";
  if (mfs.count(name))
    return "mf";
  if (morphisms.count(name))
    return "morphism";
  if (modules.count(name))
    return "module";
  if (cases.count(name))
    return "case";
  return std::nullopt;
}

namespace {

bool same_poly(const Polynomial &a, const Polynomial &b) {
  return a.ring() && b.ring() ? same_ring(a.ring(), b.ring()) && a == b : a == b;
}

} // namespace

bool operator==(const Workspace &a, const Workspace &b) {
  auto eq_maps = [](const auto &x, const auto &y, auto eq) {
    if (x.size() != y.size())
      return false;
    for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
      if (i->first != j->first || !eq(i->second, j->second))
        return false;
    return true;
  };
  return eq_maps(a.potentials, b.potentials, same_poly) &&
         eq_maps(a.symmetries, b.symmetries,
                 [](const SymmetryEntry &x, const SymmetryEntry &y) { return x.t == y.t && x.potential == y.potential; }) &&
         eq_maps(a.mfs, b.mfs,
                 [](const MFEntry &x, const MFEntry &y) {
                   return x.potential == y.potential && x.mf == y.mf && same_ring(x.mf.ring(), y.mf.ring());
                 }) &&
         eq_maps(a.morphisms, b.morphisms,
                 [](const MorphismEntry &x, const MorphismEntry &y) {
                   return x.source == y.source && x.target == y.target && x.morphism.parity == y.morphism.parity &&
                          x.morphism.map == y.morphism.map && x.morphism.source == y.morphism.source &&
                          x.morphism.target == y.morphism.target;
                 }) &&
         eq_maps(a.modules, b.modules,
                 [](const GradedModulePresentation &x, const GradedModulePresentation &y) {
                   return same_ring(x.ring, y.ring) && x.degrees == y.degrees && x.relations == y.relations;
                 }) &&
         a.cases == b.cases;
}

Workspace parse_document(std::string_view text) {
  Loader loader;
  std::string kind;
  std::vector<std::string> vars;
  bool has_vars = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto strip = [](std::string &s) {
      const auto hash = s.find('#');
      if (hash != std::string::npos)
        s.erase(hash);
    };
    strip(raw);
    const std::string line = trim(raw);
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw SyntaxError("line " + std::to_string(lineno) + ": section header missing ']'", raw.size());
      kind = trim(std::string_view(line).substr(1, line.size() - 2));
      if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end())
        throw SyntaxError("line " + std::to_string(lineno) + ": unknown section [" + kind + "]", raw.find('[') + 1);
      vars.clear();
      has_vars = false;
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("line " + std::to_string(lineno) + ": expected 'name = value'", raw.find_first_not_of(" \t") + 1);
    if (kind.empty())
      throw SyntaxError("line " + std::to_string(lineno) + ": entry outside of a section", 1);
    Entry en;
    en.line = lineno;
    en.kind = kind;
    en.name = trim(std::string_view(raw).substr(0, eq));
    std::size_t vstart = eq + 1;
    while (vstart < raw.size() && std::isspace(static_cast<unsigned char>(raw[vstart])))
      ++vstart;
    en.value_column = vstart + 1;
    en.value = trim(std::string_view(raw).substr(vstart));
    // continuation while braces or parentheses are open
    auto open_braces = [](const std::string &s) {
      long d = 0;
      for (char c : s)
        d += c == '{' || c == '(' ? 1 : c == '}' || c == ')' ? -1 : 0;
      return d;
    };
    while (open_braces(en.value) > 0) {
      std::string more;
      if (!std::getline(in, more))
        throw SyntaxError("line " + std::to_string(en.line) + ": unclosed bracket", en.value_column);
      ++lineno;
      strip(more);
      en.value += " " + trim(more);
    }
    if (!is_identifier(en.name))
      throw SyntaxError("line " + std::to_string(lineno) + ": bad name '" + en.name + "'", raw.find_first_not_of(" \t") + 1);
    if (en.value.empty())
      en.fail("empty value", 0);
    if (en.name == "vars") {
      vars.clear();
      for (const auto &p : split_args(en, {en.value, 0})) {
        if (!is_identifier(p.text) || p.text == "zeta")
          en.fail("bad variable name '" + p.text + "'", p.offset);
        vars.push_back(p.text);
      }
      has_vars = true;
      continue;
    }
    en.vars = vars;
    en.has_vars = has_vars;
    loader.add(en);
  }
  return std::move(loader.ws);
}

std::string serialize(const Workspace &ws) {
  std::ostringstream out;
  auto ringed = [&](const char *kind, const auto &entries, auto ring_of, auto value_of) {
    if (entries.empty())
      return;
    out << "[" << kind << "]\n";
    std::optional<std::vector<std::string>> last;
    for (const auto &[name, e] : entries) {
      const auto v = ring_of(e)->names();
      if (!last || *last != v)
        out << "vars = " << join(v, ", ") << "\n";
      last = v;
      out << name << " = " << value_of(e) << "\n";
    }
    out << "\n";
  };
  ringed("potential", ws.potentials, [](const Polynomial &w) { return w.ring(); },
         [](const Polynomial &w) { return w.str(); });
  if (!ws.symmetries.empty()) {
    out << "[symmetry]\n";
    for (const auto &[name, s] : ws.symmetries)
      out << name << " = " << symmetry_str(s.t) << (s.potential.empty() ? "" : " for " + s.potential) << "\n";
    out << "\n";
  }
  if (!ws.mfs.empty()) {
    out << "[mf]\n";
    for (const auto &[name, e] : ws.mfs)
      out << name << " = mf(" << e.potential << ", " << matrix_str(e.mf.d0()) << ", " << matrix_str(e.mf.d1())
          << ")\n";
    out << "\n";
  }
  if (!ws.morphisms.empty()) {
    out << "[morphism]\n";
    for (const auto &[name, m] : ws.morphisms)
      out << name << " = morphism(" << m.source.str() << " -> " << m.target.str() << ", "
          << (m.morphism.parity ? "odd" : "even") << ", " << matrix_str(m.morphism.map) << ")\n";
    out << "\n";
  }
  ringed("module", ws.modules, [](const GradedModulePresentation &m) { return m.ring; },
         [](const GradedModulePresentation &m) {
           std::vector<std::string> d;
           for (long x : m.degrees)
             d.push_back(std::to_string(x));
           return "module({" + join(d, ", ") + "}, " + matrix_str(m.relations) + ")";
         });
  if (!ws.cases.empty()) {
    out << "[case]\n";
    for (const auto &[name, c] : ws.cases)
      out << name << " = " << c.command << (c.args.empty() ? "" : " " + join(c.args, " "))
          << (c.expect ? " expect " + c.expect->str() : "") << "\n";
    out << "\n";
  }
  std::string s = out.str();
  if (s.size() >= 2 && s.substr(s.size() - 2) == "\n\n")
    s.pop_back();
  return s;
}

} // namespace mflef
