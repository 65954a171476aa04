#include "avm/problems.hpp"

#include <cmath>
#include <numbers>

namespace avm::problems {

namespace {

constexpr double kPi = std::numbers::pi;

GridGeometry square(double lo, double hi, int n) { return {n, n, lo, lo, hi, hi}; }

MhdState mhd_state(double gamma, double rho, double vx, double vy, double bx, double by, double p) {
  Primitive<double> w;
  w.rho = rho;
  w.v << vx, vy, 0.0;
  w.b << bx, by, 0.0;
  w.p = p;
  return Mhd<double>(gamma).from_primitive(w);
}

}  // namespace

const std::vector<ProblemSpec>& all_problems() {
  static const std::vector<ProblemSpec> specs = {
      {"accuracy", false, 1.4, square(-1, 1, 100), Boundary::periodic, 4.0, 0.0, true},
      {"orszag-tang", true, 5.0 / 3.0, square(0, 2 * kPi, 200), Boundary::periodic, kPi, 0.0, false},
      {"rotor", true, 5.0 / 3.0, square(0, 1, 200), Boundary::transmissive, 0.295, 0.0, false},
      {"riemann2d", true, 5.0 / 3.0, square(-1, 1, 200), Boundary::transmissive, 0.2, 0.0, false},
      {"explosion-b0", true, 2.0, square(-50, 50, 400), Boundary::transmissive, 3.0, 0.0, false},
      {"explosion-b5", true, 2.0, square(-50, 50, 400), Boundary::transmissive, 3.0, 5.0 / std::sqrt(kPi),
       false},
      {"explosion-b50", true, 2.0, square(-50, 50, 400), Boundary::transmissive, 1.05,
       50.0 / std::sqrt(kPi), false},
  };
  return specs;
}

const ProblemSpec& find_problem(std::string_view name) {
  for (const auto& s : all_problems())
    if (s.name == name) return s;
  std::string known;
  for (const auto& s : all_problems()) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError("problem", "unknown problem '" + std::string(name) + "' (known: " + known + ")");
}

EulerState exact_accuracy(double x, double y, double t) {
  Primitive<double> w;
  w.rho = 1.0 + 0.2 * std::sin(kPi * (x + y - 0.5 * t));
  w.v << 1.0, -0.5, 0.0;
  w.p = 1.0;
  return Euler<double>(1.4).from_primitive(w);
}

EulerState init_accuracy(double x, double y) { return exact_accuracy(x, y, 0.0); }

MhdState init_orszag_tang(double x, double y) {
  const double gamma = 5.0 / 3.0;
  return mhd_state(gamma, gamma * gamma, -std::sin(y), std::sin(x), -std::sin(y), std::sin(2 * x), gamma);
}

MhdState init_rotor(double x, double y) {
  const double r0 = 0.1;
  const double r1 = 0.115;
  const double dx = x - 0.5;
  const double dy = y - 0.5;
  const double r = std::hypot(dx, dy);
  double rho = 1.0;
  double vx = 0.0;
  double vy = 0.0;
  if (r < r0) {
    rho = 10.0;
    vx = -dy / r0;
    vy = dx / r0;
  } else if (r < r1) {
    const double f = (r1 - r) / (r1 - r0);
    rho = 1.0 + 9.0 * f;
    vx = -dy * f / r;
    vy = dx * f / r;
  }
  return mhd_state(5.0 / 3.0, rho, vx, vy, 2.5 / std::sqrt(4 * kPi), 0.0, 0.5);
}

const MhdState& riemann2d_quadrant(int quadrant) {
  static const std::array<MhdState, 4> rows = [] {
    std::array<MhdState, 4> q;
    q[0] << 0.9308, 1.4557, -0.4633, 0.0575, 0.3501, 0.9830, 0.3050, 5.0838;
    q[1] << 1.0304, 1.5774, -1.0455, -0.1016, 0.3501, 0.5078, 0.1576, 5.7813;
    q[2] << 1.0000, 1.7500, -1.0000, 0.0000, 0.5642, 0.5078, 0.2539, 6.0000;
    q[3] << 1.8887, 0.2334, -1.7422, 0.0733, 0.5642, 0.9830, 0.4915, 12.999;
    return q;
  }();
  if (quadrant < 1 || quadrant > 4) throw InvalidParameter("quadrant must be 1..4");
  return rows[static_cast<std::size_t>(quadrant - 1)];
}

MhdState init_riemann2d(double x, double y) {
  if (y > 0) return riemann2d_quadrant(x > 0 ? 1 : 2);
  return riemann2d_quadrant(x > 0 ? 4 : 3);
}

MhdState init_explosion(double x, double y, double b_y) {
  const double p = std::hypot(x, y) < 10.0 ? 100.0 : 1.0;
  return mhd_state(2.0, 1.0, 0.0, 0.0, 0.0, b_y, p);
}

template <>
Field<Euler<double>> make_field<Euler<double>>(const ProblemSpec& spec, int nx, int ny) {
  if (spec.magnetic) throw UnsupportedSystem("problem '" + spec.name + "' needs the MHD system");
  GridGeometry g = spec.domain;
  g.nx = nx;
  g.ny = ny;
  Field<Euler<double>> f(g, spec.bc, spec.bc);
  f.fill([](double x, double y) { return init_accuracy(x, y); });
  return f;
}

template <>
Field<Mhd<double>> make_field<Mhd<double>>(const ProblemSpec& spec, int nx, int ny) {
  if (!spec.magnetic) throw UnsupportedSystem("problem '" + spec.name + "' needs the Euler system");
  GridGeometry g = spec.domain;
  g.nx = nx;
  g.ny = ny;
  Field<Mhd<double>> f(g, spec.bc, spec.bc);
  if (spec.name == "orszag-tang") {
    f.fill(init_orszag_tang);
  } else if (spec.name == "rotor") {
    f.fill(init_rotor);
  } else if (spec.name == "riemann2d") {
    f.fill(init_riemann2d);
  } else {
    const double b = spec.b_y;
    f.fill([b](double x, double y) { return init_explosion(x, y, b); });
  }
  return f;
}

}  // namespace avm::problems
