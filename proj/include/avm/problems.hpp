#pragma once

// Benchmark problems: initial data, exact solutions and cut diagnostics.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "avm/grid.hpp"
#include "avm/physics/euler.hpp"
#include "avm/physics/mhd.hpp"

namespace avm::problems {

using EulerState = Euler<double>::State;
using MhdState = Mhd<double>::State;

struct ProblemSpec {
  std::string name;
  bool magnetic = false;
  double gamma = 1.4;
  GridGeometry domain;  // default mesh in nx, ny
  Boundary bc = Boundary::periodic;
  double t_final = 0.0;
  double b_y = 0.0;  // explosion field strength
  bool has_exact = false;
};

const std::vector<ProblemSpec>& all_problems();

// Throws ConfigError naming the "problem" key for unknown names.
const ProblemSpec& find_problem(std::string_view name);

// Smooth density wave rho = 1 + 0.2 sin(pi (x + y - t/2)), v = (1, -1/2), P = 1.
EulerState exact_accuracy(double x, double y, double t);
EulerState init_accuracy(double x, double y);

MhdState init_orszag_tang(double x, double y);
MhdState init_rotor(double x, double y);
MhdState init_riemann2d(double x, double y);
MhdState init_explosion(double x, double y, double b_y);

// Quadrant data of the 2D Riemann problem, rows I..IV in conserved form.
const MhdState& riemann2d_quadrant(int quadrant);

template <typename System>
Field<System> make_field(const ProblemSpec& spec, int nx, int ny);

template <>
Field<Euler<double>> make_field<Euler<double>>(const ProblemSpec& spec, int nx, int ny);
template <>
Field<Mhd<double>> make_field<Mhd<double>>(const ProblemSpec& spec, int nx, int ny);

// Sum over cells of |U_ij,k - exact(x_i, y_j)_k| dx dy.
template <typename System, typename Exact>
double l1_error(const Field<System>& f, Exact&& exact, int component = 0) {
  if (component < 0 || component >= System::kVars) throw InvalidParameter("component out of range");
  double sum = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const auto e = exact(f.x(i), f.y(j));
      sum += std::abs(static_cast<double>(f(i, j)(component) - e(component)));
    }
  return sum * f.dx() * f.dy();
}

struct CutPoint {
  double s;  // arclength from the first cell center
  double x;
  double y;
  double value;
};

// Values at the cells (i, i) of a square mesh.
template <typename System, typename Value>
std::vector<CutPoint> diagonal_cut(const Field<System>& f, Value&& value) {
  if (f.nx() != f.ny()) throw InvalidParameter("main diagonal needs nx == ny");
  std::vector<CutPoint> out;
  out.reserve(static_cast<std::size_t>(f.nx()));
  const double step = std::hypot(f.dx(), f.dy());
  for (int i = 0; i < f.nx(); ++i) out.push_back({i * step, f.x(i), f.y(i), value(f(i, i))});
  return out;
}

}  // namespace avm::problems
