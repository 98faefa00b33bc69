#pragma once

#include "mflef/document.hpp"
#include "mflef/lefschetz.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace mflef::cli {

constexpr int kSchemaVersion = 1;

struct Options {
  Engine engine = Engine::groebner;
  bool timing = false;
};

// Outcome of one command (or one corpus case).
struct CommandResult {
  std::string label; // case name, or the command itself
  std::string command;
  std::vector<std::string> lines;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> reports;
  int exit = 0; // 0 pass, 1 identity violated, 2 input error, 3 internal error
  std::string error;
};

// A single argument naming a case of the same command expands to its
// arguments. "corpus" returns one result per case, ordered by name.
std::vector<CommandResult> run(const std::string &command, const std::vector<std::string> &args,
                               const Workspace &ws, const Options &opt);

int exit_status(const std::vector<CommandResult> &results);
nlohmann::ordered_json to_json(const std::vector<CommandResult> &results);
std::string to_text(const std::vector<CommandResult> &results);

} // namespace mflef::cli
