#pragma once

#include "impasm/workspace.hpp"
#include "json.hpp"

namespace impasm {

using Json = nlohmann::ordered_json;

/// Machine-readable command outcome.  Two runs over the same workspace are
/// byte-identical; every bounded verdict carries its bound.
struct Report {
  std::string command;
  std::string verdict = "pass";  // pass | fail | error
  std::optional<int> bound;
  Json witnesses = Json::array();
  std::vector<std::string> violations;
  Json details = Json::object();

  int exit_code() const {
    return verdict == "pass" ? 0 : verdict == "fail" ? 1 : 2;
  }
  Json to_json() const;
  std::string text() const;
};

/// Dispatch a CLI subcommand against a loaded workspace.  Unknown names and
/// malformed flags come back as verdict "error".
Report execute(const Workspace& ws, const std::string& command,
               const std::map<std::string, std::string>& flags);

}  // namespace impasm
