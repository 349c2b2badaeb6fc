#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace wbrst::cli {

/// Bad user input: unreadable files, malformed bindings, unknown parameters.
/// Maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"cft", "brst"}
  std::vector<std::string> inputs;   // file path and expressions, or a family name
  std::map<std::string, std::string> bindings;
  std::optional<std::string> g1, g2, c;
  bool symbolic_c = false;
  std::optional<std::string> a2;  // "printed" or "consistent"
  std::string level = "6";
  bool json = false;
};

/// A finished check. `text` is the human-readable rendering of `report`.
struct Outcome {
  nlohmann::json report;
  std::string text;
  bool pass = true;
};

Outcome run(const RunConfig& cfg);

/// "name=value" with an exact rational value.
std::pair<std::string, std::string> parse_binding(const std::string& s);

}  // namespace wbrst::cli
