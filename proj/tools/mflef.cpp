#include "commands.hpp"

#include "mflef/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mflef;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact matrix-factorization calculus and Lefschetz-type checks"};
  std::string command, input, json_out, engine = "groebner";
  std::vector<std::string> names;
  bool timing = false, roundtrip = false;
  app.add_option("command", command, "milnor | bb | pair | hlf-verify | isolated-verify | lunts | zero-check | "
                                     "trace-identity | divisibility | stabilize | hilbert | corpus | serialize")
      ->required();
  app.add_option("names", names, "entity or case names");
  app.add_option("-i,--input", input, "workspace document")->required();
  app.add_option("--json", json_out, "write a structured report to this file ('-' for stdout)");
  app.add_option("--engine", engine, "cohomology engine")->check(CLI::IsMember({"groebner", "graded", "both"}));
  app.add_flag("--timing", timing, "record wall-clock micros per case");
  app.add_flag("--check-roundtrip", roundtrip, "with serialize: fail unless parse(serialize(d)) == d");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const Workspace ws = parse_document(read_file(input));
    if (command == "serialize") {
      const std::string text = serialize(ws);
      if (roundtrip && !(parse_document(text) == ws)) {
        std::cerr << "round trip changed the workspace\n";
        return 1;
      }
      std::cout << text;
      return 0;
    }
    cli::Options opt;
    opt.engine = parse_engine(engine);
    opt.timing = timing;
    const auto results = cli::run(command, names, ws, opt);
    std::cout << cli::to_text(results);
    if (!json_out.empty()) {
      const std::string j = cli::to_json(results).dump(2) + "\n";
      if (json_out == "-") {
        std::cout << j;
      } else {
        std::ofstream f(json_out);
        if (!f)
          throw InputError("cannot write " + json_out);
        f << j;
      }
    }
    return cli::exit_status(results);
  } catch (const InternalError &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
