#pragma once

// Run orchestration for the CLI: builds the problem, drives the solver and
// writes snapshots, cuts, diagnostics, error tables and metadata sidecars.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "avm/config.hpp"

namespace avm {

struct RunReport {
  std::string label;  // {problem}-{solver}-{mode}-{nx}x{ny}
  int nx = 0;
  int ny = 0;
  long steps = 0;
  double time = 0.0;
  long fallbacks = 0;
  double min_density = 0.0;
  double min_pressure = 0.0;
  std::optional<double> l1_error;  // density error for problems with an exact solution
  std::vector<std::string> files;
};

std::string run_label(const RunConfig& c, int nx, int ny);

// One run per mesh of c.meshes (or a single run on the configured mesh).
// A mesh sweep also writes {problem}-{solver}-{mode}-errors.tsv. Progress
// lines go to log unless c.quiet is set.
std::vector<RunReport> run_from_config(const RunConfig& c, std::ostream& log);

}  // namespace avm
