#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "avm/flux2d.hpp"
#include "avm/physics/euler.hpp"
#include "avm/physics/mhd.hpp"

namespace testing {

using Euler = avm::Euler<double>;
using Mhd = avm::Mhd<double>;

inline double rel_diff(const auto& a, const auto& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
};

inline Euler::State euler_state(Rng& r, double vmax = 0.3) {
  avm::Primitive<double> w;
  w.rho = r.uniform(0.5, 2.0);
  w.v << r.uniform(-vmax, vmax), r.uniform(-vmax, vmax), 0.0;
  w.p = r.uniform(0.5, 2.0);
  return Euler(1.4).from_primitive(w);
}

inline Mhd::State mhd_state(Rng& r, double vmax = 0.3, double bmax = 1.0) {
  avm::Primitive<double> w;
  w.rho = r.uniform(0.5, 2.0);
  w.v << r.uniform(-vmax, vmax), r.uniform(-vmax, vmax), r.uniform(-vmax, vmax);
  w.b << r.uniform(-bmax, bmax), r.uniform(-bmax, bmax), r.uniform(-bmax, bmax);
  w.p = r.uniform(0.5, 2.0);
  return Mhd(5.0 / 3.0).from_primitive(w);
}

// u_t + c u_x + c u_y = 0 with a single variable.
struct Advection {
  static constexpr int kVars = 1;
  static constexpr bool kMagnetic = false;
  using scalar_type = double;
  using State = avm::Vector<double, 1>;
  using Matrix = avm::SquareMatrix<double, 1>;
  double c = 1.0;

  State flux(avm::Direction, const State& u) const { return c * u; }
  Matrix jacobian(avm::Direction, const State&) const { return Matrix::Constant(c); }
  avm::WaveSpeeds<double> speeds(avm::Direction, const State&) const { return {-std::abs(c), std::abs(c)}; }
  State transverse_flux(avm::Direction d, const State& u, const State&) const { return flux(d, u); }
  bool valid(const State&) const { return true; }
};

// F = G = 0 with three variables; the first one plays the role of density.
struct ZeroFlux {
  static constexpr int kVars = 3;
  static constexpr bool kMagnetic = false;
  using scalar_type = double;
  using State = avm::Vector<double, 3>;
  using Matrix = avm::SquareMatrix<double, 3>;

  State flux(avm::Direction, const State&) const { return State::Zero(); }
  Matrix jacobian(avm::Direction, const State&) const { return Matrix::Zero(); }
  avm::WaveSpeeds<double> speeds(avm::Direction, const State&) const { return {-1.0, 1.0}; }
  State transverse_flux(avm::Direction, const State&, const State&) const { return State::Zero(); }
  bool valid(const State&) const { return true; }
};

}  // namespace testing
