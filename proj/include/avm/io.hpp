#pragma once

// Plain-text output: field snapshots, cuts, error tables, diagnostic time
// series and JSON metadata sidecars.

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "avm/grid.hpp"
#include "avm/problems.hpp"

namespace avm {

// Named scalar of a state: rho, rho_vx, rho_vy, rho_vz, Bx, By, Bz, E, vx, vy,
// vz, P, pmag (|B|^2 / 2) and mach (|v| / a). Magnetic names need MHD.
template <typename System>
double derived_value(const System& sys, const typename System::State& u, std::string_view name);

template <typename System>
std::vector<std::string> snapshot_columns();

// Header line "# nx=.. ny=.. dx=.. dy=.. gamma=.. time=..", a column line and
// one row per cell in j-major order, all numbers with 17 significant digits.
template <typename System>
std::string format_snapshot(const System& sys, const Field<System>& f, double time);

template <typename System>
void write_snapshot(const System& sys, const Field<System>& f, double time, const std::string& path);

struct Snapshot {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double gamma = 0.0;
  double time = 0.0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(std::string_view name) const;
};

Snapshot parse_snapshot(std::string_view text);
Snapshot read_snapshot(const std::string& path);

// Copies the conserved columns of a snapshot into a field of matching size.
template <typename System>
void load_snapshot(const Snapshot& s, Field<System>& f);

// Cut along the main diagonal or along the cell row/column closest to x or y.
template <typename System>
std::vector<problems::CutPoint> field_cut(const System& sys, const Field<System>& f,
                                          const std::string& kind, double coordinate,
                                          const std::string& variable);

void write_cut(const std::vector<problems::CutPoint>& points, const std::string& variable, double time,
               const std::string& path);

struct ErrorRow {
  std::string scheme;
  int mesh = 0;
  double error = 0.0;
};

// Rows grouped by scheme with the observed rate log2(e_N / e_2N) on each
// refined mesh. Throws InvalidParameter on a repeated (scheme, mesh) pair.
std::string format_error_table(const std::vector<ErrorRow>& rows);
void write_error_table(const std::vector<ErrorRow>& rows, const std::string& path);

class DiagnosticsWriter {
 public:
  explicit DiagnosticsWriter(const std::string& path);
  void write(const StepDiagnostics& d);

 private:
  std::string path_;
  std::ofstream out_;
};

void write_text_file(const std::string& path, const std::string& text);

// Creates the directory (and parents) when missing.
void ensure_directory(const std::string& path);

}  // namespace avm
