#pragma once

// Run configuration: flat key = value files merged with command-line flags.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avm/approx.hpp"
#include "avm/grid.hpp"

namespace avm {

// Ordered (key, value) pairs as read from a file or the command line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

enum class DivClean { powell, none };

// A cut through the field: the main diagonal or the line of cells closest to
// x = value or y = value.
struct CutRequest {
  enum class Kind { diagonal, x_line, y_line } kind = Kind::diagonal;
  double coordinate = 0.0;
  std::string variable = "rho";

  std::string name() const;
};

struct RunConfig {
  std::string problem;
  std::string solver;
  SolverMode mode = SolverMode::two_d;
  int nx = 0;  // 0 selects the problem default
  int ny = 0;
  double cfl = 0.5;
  std::optional<double> t_final;
  std::optional<DivClean> divclean;  // unset: Powell for MHD problems, none for Euler
  Assembly assembly = Assembly::simpson;
  std::string output_dir = ".";
  std::vector<double> snapshot_times;
  std::vector<CutRequest> cuts;
  std::vector<int> meshes;  // mesh sweep for problems with an exact solution
  long max_steps = 10000000;
  bool quiet = false;

  BasisFunction basis() const { return BasisFunction::parse(solver); }
};

// Keys accepted in files and as --key flags.
const std::vector<std::string>& config_keys();

// Parses "key = value" lines; '#' starts a comment. Errors name the line.
KeyValues parse_config_text(std::string_view text, const std::string& source = "config");
KeyValues read_config_file(const std::string& path);

// Merges file values with flags (flags win) and validates. The environment
// variable AVM2D_OUTPUT_DIR replaces the file's output directory; an explicit
// --output flag still takes precedence.
RunConfig resolve_config(const KeyValues& file, const KeyValues& flags);

// Command-line entry: "--key value" / "--key=value" pairs plus an optional
// "--config path". Flags override file values.
RunConfig parse_config(const std::vector<std::string>& args);

// Help text listing the flags.
std::string config_usage();

std::string to_string(SolverMode mode);
std::string to_string(Assembly assembly);

}  // namespace avm
