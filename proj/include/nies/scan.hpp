#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nies/config_io.hpp"

namespace nies {

enum class ScanMode { lineshape, standing_wave, generation, oracle_compare, figure };
enum class OutputFormat { csv, json };

struct ScanRequest {
  ScanMode mode = ScanMode::lineshape;
  double from = -10.0;
  double to = 10.0;
  int points = 201;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty means stdout
  double gate = 3e-2;    // oracle_compare only
  std::string figure;    // figure mode only
};

struct BadScanRequest : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownFigure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Column-named table of rows; rows are ordered by grid index regardless of
// how they were computed.
struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // oracle_compare bookkeeping
  double max_rel_err = 0.0;
  double arg_max = 0.0;
  bool gate_failed = false;
};

// Computes one table. Rows are evaluated in parallel (they are pure reads of
// the config); emission order is the grid order.
ScanTable run_scan(const ScanRequest& req, const ParsedConfig& pc);

// Canned dimensionless curve families reproducing the published plots:
//   fig2  interference term, real roots, z1/z2 in {5, 2.5, 1}
//   fig3  interference term, complex roots, zeta/z0 in {0, 1, sqrt(3)}
//   fig4  Bennett + interference, real roots, s = 1, z1/z2 in {5, 2.5, 1}
//   fig5  combined curve, complex roots, h = 1, c in {-1, 0, 1}
//   fig6  generation power vs probe detuning (canned three-level config)
//   fig7  resonator-frequency map on the same config
ScanTable figure_table(const std::string& name);

// Header row, comma separators, LF endings, 17 significant digits.
std::string render_csv(const ScanTable& t);
// Array of one object per row, fields named and ordered like the columns.
std::string render_json(const ScanTable& t);

// False when the file cannot be opened or written.
bool write_text(const std::string& path, const std::string& text);

}  // namespace nies
