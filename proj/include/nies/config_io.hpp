#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nies/core.hpp"
#include "nies/generation.hpp"

namespace nies {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One config problem; line = 0 for whole-file validation issues.
struct ParseIssue {
  int line = 0;
  std::string message;
};

// Grid and gate defaults carried by the [scan] section.
struct ScanDefaults {
  double from = -10.0;
  double to = 10.0;
  int points = 201;
  double gate = 3e-2;       // oracle_compare acceptance gate
  double unit_scale = 1.0;  // multiplies frequency-valued output columns
};

struct ParsedConfig {
  Config config;
  Resonator resonator;
  TransitionSelector transition = TransitionSelector::nj;
  ScanDefaults scan;
  std::vector<ParseIssue> errors;  // parse issues in file order, then validation
  bool ok() const { return errors.empty(); }
};

// Sections: [rates] [strong] [probe] [ensemble] [resonator] [scan].
// Lines are `key = value`, `#` starts a comment. All problems are collected,
// not just the first.
ParsedConfig parse_config(const std::string& text);

// Reads and parses a file; throws IoError when it cannot be read.
ParsedConfig load_config(const std::string& path);

}  // namespace nies
