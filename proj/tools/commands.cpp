#include "commands.hpp"

#include "mflef/errors.hpp"
#include "mflef/hilbert.hpp"
#include "mflef/milnor.hpp"
#include "mflef/parse.hpp"

#include <chrono>
#include <future>
#include <map>

namespace mflef::cli {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::string> kUsage = {
    {"milnor", "W"},
    {"bb", "E t alpha"},
    {"pair", "A B t alpha beta"},
    {"hlf-verify", "A B t alpha beta"},
    {"isolated-verify", "A B t alpha beta"},
    {"lunts", "W t"},
    {"zero-check", "A B t alpha beta"},
    {"trace-identity", "A t alpha"},
    {"divisibility", "A t alpha p"},
    {"stabilize", "M W"},
    {"hilbert", "M [W]"},
    {"corpus", "[case ...]"},
};

void arity(const std::string &cmd, const std::vector<std::string> &args, std::size_t lo, std::size_t hi) {
  if (args.size() < lo || args.size() > hi)
    throw InputError(cmd + " expects " + kUsage.at(cmd) + ", got " + std::to_string(args.size()) + " arguments");
}

json report_json(const std::string &label, const LefschetzReport &r) {
  json j;
  j["case"] = label;
  j["check"] = r.name;
  j["lhs"] = r.lhs.str();
  j["rhs"] = r.rhs.str();
  j["relation"] = "=";
  j["equal"] = r.equal;
  j["pass"] = r.pass();
  j["engine"] = r.lhs_engine;
  j["rhs_method"] = r.rhs_engine;
  j["engines_agree"] = r.engines_agree ? json(*r.engines_agree) : json(nullptr);
  j["micros"] = r.micros;
  j["notes"] = r.notes;
  return j;
}

json bound_json(const std::string &label, const std::string &check, const std::optional<long> &valuation, long bound,
                bool pass) {
  json j;
  j["case"] = label;
  j["check"] = check;
  j["lhs"] = valuation ? std::to_string(*valuation) : "inf";
  j["rhs"] = std::to_string(bound);
  j["relation"] = ">=";
  j["equal"] = pass;
  j["pass"] = pass;
  j["engine"] = "exact";
  j["rhs_method"] = "bound";
  j["engines_agree"] = nullptr;
  j["micros"] = 0;
  j["notes"] = json::array();
  return j;
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

class Runner {
public:
  Runner(const Workspace &ws, const Options &opt, CommandResult &out) : ws_(ws), opt_(opt), out_(out) {}

  void dispatch(const std::vector<std::string> &a) {
    const std::string &c = out_.command;
    if (c == "milnor")
      milnor(a);
    else if (c == "bb")
      bb(a);
    else if (c == "pair")
      pair(a);
    else if (c == "hlf-verify" || c == "isolated-verify" || c == "zero-check")
      five(a);
    else if (c == "lunts")
      lunts(a);
    else if (c == "trace-identity")
      trace_identity(a);
    else if (c == "divisibility")
      divisibility(a);
    else if (c == "stabilize")
      stabilize(a);
    else if (c == "hilbert")
      hilbert(a);
    else
      throw InputError("unknown command " + c);
  }

private:
  const Workspace &ws_;
  const Options &opt_;
  CommandResult &out_;

  void add(const LefschetzReport &r) { out_.reports.push_back(report_json(out_.label, r)); }

  void milnor(const std::vector<std::string> &a) {
    arity("milnor", a, 1, 1);
    const Polynomial &w = ws_.potential(a[0]);
    const MilnorAlgebra alg(w);
    std::vector<std::string> basis;
    for (const auto &m : alg.basis())
      basis.push_back(Polynomial(w.ring(), m).str());
    out_.lines.push_back("w = " + w.str());
    out_.lines.push_back("mu = " + std::to_string(alg.milnor_number()));
    out_.lines.push_back("basis: " + join(basis, ", "));
    out_.data["potential"] = w.str();
    out_.data["mu"] = alg.milnor_number();
    out_.data["basis"] = basis;
    if (const auto &ws = alg.weights()) {
      std::vector<std::string> q;
      for (long x : ws->weights)
        q.push_back(std::to_string(x));
      out_.lines.push_back("weights: " + join(q, ", ") + "; degree " + std::to_string(ws->degree));
      out_.data["weights"] = ws->weights;
      out_.data["degree"] = ws->degree;
      if (alg.socle_degree()) {
        out_.lines.push_back("socle degree: " + std::to_string(*alg.socle_degree()));
        out_.data["socle_degree"] = *alg.socle_degree();
      }
      const Scalar mu(static_cast<long>(alg.milnor_number()));
      add(make_report("residue-normalization", alg.residue(hessian_determinant(w)), mu, "residue(hessian)", "mu"));
      add(make_report("gram-rank", Scalar(static_cast<long>(rank(alg.gram_matrix()))), mu, "rank of residue Gram",
                      "mu"));
    } else {
      out_.lines.push_back("not quasi-homogeneous: no residue checks");
    }
  }

  void bb(const std::vector<std::string> &a) {
    arity("bb", a, 3, 3);
    const TraceSpaceElement tau = boundary_bulk(ws_.mf(a[0]), ws_.symmetry(a[1]), ws_.morphism(a[2]));
    out_.lines.push_back("w_t = " + tau.space->restricted.str());
    out_.lines.push_back("tau = " + tau.cls.str() + " (parity " + std::to_string(tau.parity()) + ")");
    out_.data["restricted_potential"] = tau.space->restricted.str();
    out_.data["class"] = tau.cls.str();
    out_.data["parity"] = tau.parity();
  }

  void pair(const std::vector<std::string> &a) {
    arity("pair", a, 5, 5);
    const Scalar v = rhs_hlf(ws_.mf(a[0]), ws_.mf(a[1]), ws_.symmetry(a[2]), ws_.morphism(a[3]), ws_.morphism(a[4]));
    out_.lines.push_back("pairing = " + v.str());
    out_.lines.push_back(kPairingConvention);
    out_.data["pairing"] = v.str();
    out_.data["convention"] = kPairingConvention;
  }

  void five(const std::vector<std::string> &a) {
    const std::string &c = out_.command;
    arity(c, a, 5, 5);
    const auto &A = ws_.mf(a[0]);
    const auto &B = ws_.mf(a[1]);
    const auto &t = ws_.symmetry(a[2]);
    const auto &al = ws_.morphism(a[3]);
    const auto &be = ws_.morphism(a[4]);
    if (c == "hlf-verify")
      add(verify_hlf(A, B, t, al, be, opt_.engine));
    else if (c == "isolated-verify")
      add(verify_isolated(A, B, t, al, be, opt_.engine));
    else
      add(zero_fixed_locus_check(A, B, t, al, be, opt_.engine));
  }

  void lunts(const std::vector<std::string> &a) {
    arity("lunts", a, 2, 2);
    add(lunts_check(ws_.potential(a[0]), ws_.symmetry(a[1])));
  }

  void trace_identity(const std::vector<std::string> &a) {
    arity("trace-identity", a, 3, 3);
    add(trace_identity_check(ws_.mf(a[0]), ws_.symmetry(a[1]), ws_.morphism(a[2]), opt_.engine));
  }

  void divisibility(const std::vector<std::string> &a) {
    arity("divisibility", a, 4, 4);
    long p = 0;
    try {
      std::size_t used = 0;
      p = std::stol(a[3], &used);
      if (used != a[3].size())
        throw std::invalid_argument(a[3]);
    } catch (const std::logic_error &) {
      throw InputError("p must be an integer, got " + a[3]);
    }
    const DivisibilityReport r = divisibility_check(ws_.mf(a[0]), ws_.symmetry(a[1]), ws_.morphism(a[2]), p);
    out_.lines.push_back("str(alpha at 0) = " + r.supertrace.str());
    out_.lines.push_back("m_max = " + std::to_string(r.m_max));
    out_.data["supertrace"] = r.supertrace.str();
    out_.data["p"] = r.p;
    out_.data["n"] = r.n;
    out_.data["m_max"] = r.m_max;
    out_.reports.push_back(bound_json(out_.label, "divisibility", r.valuation, r.bound, r.pass));
  }

  void stabilize(const std::vector<std::string> &a) {
    arity("stabilize", a, 2, 2);
    const auto &m = ws_.module(a[0]);
    const Polynomial &w = ws_.potential(a[1]);
    const StabilizedModule st = stabilize_module(m, w);
    out_.lines.push_back("ranks: " + std::to_string(st.mf.even_rank()) + " even, " + std::to_string(st.mf.odd_rank()) +
                         " odd");
    out_.lines.push_back("d0 = " + matrix_str(st.mf.d0()));
    out_.lines.push_back("d1 = " + matrix_str(st.mf.d1()));
    out_.data["even_rank"] = st.mf.even_rank();
    out_.data["odd_rank"] = st.mf.odd_rank();
    out_.data["d0"] = matrix_str(st.mf.d0());
    out_.data["d1"] = matrix_str(st.mf.d1());
    out_.data["degrees"] = st.degrees;
    if (st.involution)
      add(chi_stabilization_consistency(m, w));
  }

  void hilbert(const std::vector<std::string> &a) {
    arity("hilbert", a, 1, 2);
    const auto &m = ws_.module(a[0]);
    const HilbertData h = multiplicity_data(chi_polynomial(m), m.ring->size());
    out_.lines.push_back("chi = " + int_poly_str(h.chi));
    out_.lines.push_back("dim = " + std::to_string(h.krull_dim));
    out_.lines.push_back("e = " + int_poly_str(h.multiplicity));
    out_.data["chi"] = int_poly_str(h.chi);
    out_.data["krull_dim"] = h.krull_dim;
    out_.data["multiplicity"] = int_poly_str(h.multiplicity);
    if (a.size() == 2) {
      const Polynomial &w = ws_.potential(a[1]);
      const EvenDivisibilityReport r = verify_even_multiplicity_divisibility(m, w);
      out_.lines.push_back("e(-1) = " + std::to_string(r.e_at_minus_one));
      out_.data["e_at_minus_one"] = r.e_at_minus_one;
      out_.reports.push_back(bound_json(out_.label, "even-multiplicity", r.valuation, r.bound, r.pass));
      add(chi_stabilization_consistency(m, w));
    }
  }
};

CommandResult run_one(const std::string &command, const std::vector<std::string> &args, const Workspace &ws,
                      const Options &opt, const std::string &label, const std::optional<Scalar> &expect = {}) {
  CommandResult out;
  out.command = command;
  out.label = label;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "corpus")
      throw InputError("corpus cannot be nested");
    Runner(ws, opt, out).dispatch(args);
    if (expect) {
      if (out.reports.empty())
        throw InputError(command + " produces no value to compare with 'expect'");
      const std::string lhs = out.reports.front()["lhs"].get<std::string>();
      const bool same = lhs != "inf" && parse_scalar(lhs) == *expect;
      json j = bound_json(label, "expected-value", std::nullopt, 0, same);
      j["lhs"] = lhs;
      j["rhs"] = expect->str();
      j["relation"] = "=";
      j["engine"] = "recorded";
      j["rhs_method"] = "case expect";
      out.reports.push_back(std::move(j));
    }
  } catch (const InternalError &e) {
    out.exit = 3;
    out.error = e.what();
  } catch (const Error &e) {
    out.exit = 2;
    out.error = e.what();
  }
  if (opt.timing) {
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    for (auto &r : out.reports)
      r["micros"] = us;
    out.data["micros"] = us;
  }
  if (out.exit == 0)
    for (const auto &r : out.reports)
      if (!r["pass"].get<bool>())
        out.exit = 1;
  return out;
}

} // namespace

std::vector<CommandResult> run(const std::string &command, const std::vector<std::string> &args, const Workspace &ws,
                               const Options &opt) {
  if (!kUsage.count(command))
    throw InputError("unknown command " + command);
  if (command == "corpus") {
    std::vector<std::string> names = args;
    if (names.empty())
      for (const auto &[name, c] : ws.cases)
        names.push_back(name);
    std::sort(names.begin(), names.end());
    std::vector<std::future<CommandResult>> jobs;
    for (const auto &name : names) {
      const CaseEntry &c = ws.case_entry(name);
      jobs.push_back(std::async(std::launch::async, [&ws, &opt, c, name] { return run_one(c.command, c.args, ws, opt, name, c.expect); }));
    }
    std::vector<CommandResult> out;
    for (auto &j : jobs)
      out.push_back(j.get());
    return out;
  }
  if (args.size() == 1 && ws.cases.count(args[0])) {
    const CaseEntry &c = ws.cases.at(args[0]);
    if (c.command != command)
      throw InputError("case " + args[0] + " is a " + c.command + " case, not " + command);
    return {run_one(command, c.args, ws, opt, args[0], c.expect)};
  }
  return {run_one(command, args, ws, opt, command)};
}

int exit_status(const std::vector<CommandResult> &results) {
  int code = 0;
  for (const auto &r : results)
    code = std::max(code, r.exit);
  return code;
}

json to_json(const std::vector<CommandResult> &results) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["exit"] = exit_status(results);
  json arr = json::array();
  for (const auto &r : results) {
    json c;
    c["case"] = r.label;
    c["command"] = r.command;
    c["exit"] = r.exit;
    if (!r.error.empty())
      c["error"] = r.error;
    c["data"] = r.data;
    c["reports"] = r.reports;
    arr.push_back(std::move(c));
  }
  j["results"] = std::move(arr);
  return j;
}

std::string to_text(const std::vector<CommandResult> &results) {
  std::string s;
  for (const auto &r : results) {
    s += "== " + r.label + (r.label == r.command ? "" : " (" + r.command + ")") + "\n";
    for (const auto &l : r.lines)
      s += l + "\n";
    for (const auto &rep : r.reports) {
      s += std::string(rep["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") + rep["check"].get<std::string>() +
           ": lhs = " + rep["lhs"].get<std::string>() + ", rhs = " + rep["rhs"].get<std::string>() + " (" +
           rep["relation"].get<std::string>() + ", " + rep["engine"].get<std::string>();
      if (!rep["engines_agree"].is_null())
        s += rep["engines_agree"].get<bool>() ? ", engines agree" : ", ENGINES DISAGREE";
      s += ")";
      if (rep["micros"].get<long long>() > 0)
        s += " " + std::to_string(rep["micros"].get<long long>()) + " us";
      s += "\n";
      for (const auto &n : rep["notes"])
        s += "  note: " + n.get<std::string>() + "\n";
    }
    if (!r.error.empty())
      s += (r.exit == 3 ? "internal error: " : "error: ") + r.error + "\n";
  }
  return s;
}

} // namespace mflef::cli
