#pragma once

#include <string>
#include <vector>

namespace fincat {

// One violated rule with the ids that witness it.
struct Violation {
  std::string rule;                  // e.g. "associativity", "unit-law", "naturality"
  std::vector<std::string> witness;  // the morphisms/elements involved
  std::string message;               // human-readable restatement
};

// Split report: structural problems (malformed tables) are kept apart from
// violated mathematical laws so callers can map them to different exit codes.
struct ValidationReport {
  std::vector<Violation> structural;
  std::vector<Violation> laws;

  bool ok() const { return structural.empty() && laws.empty(); }

  void add_structural(std::string rule, std::vector<std::string> witness,
                      std::string message) {
    structural.push_back({std::move(rule), std::move(witness), std::move(message)});
  }
  void add_law(std::string rule, std::vector<std::string> witness,
               std::string message) {
    laws.push_back({std::move(rule), std::move(witness), std::move(message)});
  }

  // Concatenated summary, one violation per line. Empty string when ok().
  std::string summary() const {
    std::string out;
    for (const auto* list : {&structural, &laws}) {
      for (const auto& v : *list) {
        out += v.rule;
        out += ": ";
        out += v.message;
        out += '\n';
      }
    }
    return out;
  }
};

}  // namespace fincat
