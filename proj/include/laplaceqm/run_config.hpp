#pragma once

// Command-line front-end pieces that are testable in-process: flat key-value
// configuration, the three commands and the CSV reader/writer.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laplaceqm/contour_eval.hpp"
#include "laplaceqm/potential_catalog.hpp"

namespace laplaceqm {

using KeyValues = std::map<std::string, std::string>;

// "key = value" lines, '#' starts a comment. Throws InvalidConfig on junk.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_value_file(const std::string& path);

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool xi_space = false;  // otherwise physical coordinate

  std::vector<double> points() const;
};

struct RunConfig {
  ProblemSpec spec;
  std::optional<double> energy;  // continuum energy
  std::optional<int> n;          // bound-state principal index
  int n_max = 10;
  std::optional<Method> method;
  std::optional<GridSpec> grid;
  ContourConfig contour;
  std::string out_path;  // empty: stdout
};

// Recognised keys: kind, method, grid ("min,max,count"), grid_space (xi or
// coordinate), radius, steps, tol, out, mu, omega, a0, a, v0, m, l, n, E, n_max.
// Morse kinds default to mu = 1/2 so that hbar^2 a^2 / 2mu = 1 with a = 1.
RunConfig build_run_config(const KeyValues& kv);

// Exit codes: 0 success, 2 invalid configuration, 3 evaluation failure.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string format_value(double v);  // "%.12e"

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footers;  // lines without the leading '#'

  int column(const std::string& name) const;  // -1 if absent
  double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace laplaceqm
