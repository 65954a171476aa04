#pragma once

// Two-dimensional compressible Euler equations, U = (rho, rho v_x, rho v_y, E),
// ideal gas P = (gamma - 1)(E - rho |v|^2 / 2).

#include <cmath>

#include "avm/physics/common.hpp"
#include "avm/smallmat.hpp"

namespace avm {

template <typename Scalar = double>
class Euler {
 public:
  static constexpr int kVars = 4;
  static constexpr bool kMagnetic = false;
  using scalar_type = Scalar;
  using State = Vector<Scalar, kVars>;
  using Matrix = SquareMatrix<Scalar, kVars>;

  explicit Euler(double gamma) : gamma_(gamma) {
    if (!(gamma > 1)) throw InvalidParameter("adiabatic constant must exceed 1");
  }

  double gamma() const { return static_cast<double>(gamma_); }

  Scalar pressure(const State& u) const {
    const Scalar kinetic = Scalar(0.5) * (u(1) * u(1) + u(2) * u(2)) / u(0);
    return (gamma_ - Scalar(1)) * (u(3) - kinetic);
  }

  bool valid(const State& u) const { return u(0) > Scalar(0) && pressure(u) > Scalar(0); }

  Scalar sound_speed(const State& u) const {
    using std::sqrt;
    return sqrt(gamma_ * pressure(u) / u(0));
  }

  static State swap_xy(const State& u) { return State(u(0), u(2), u(1), u(3)); }

  State flux(Direction d, const State& u) const {
    if (d == Direction::y) return swap_xy(flux_x(swap_xy(u)));
    return flux_x(u);
  }

  Matrix jacobian(Direction d, const State& u) const {
    if (d == Direction::x) return jacobian_x(u);
    const Matrix jx = jacobian_x(swap_xy(u));
    static constexpr int p[kVars] = {0, 2, 1, 3};
    Matrix jy;
    for (int i = 0; i < kVars; ++i)
      for (int j = 0; j < kVars; ++j) jy(i, j) = jx(p[i], p[j]);
    return jy;
  }

  WaveSpeeds<Scalar> speeds(Direction d, const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar p = pressure(u);
    if (!(p > Scalar(0))) throw InvalidState("nonpositive pressure in state " + detail::describe_state(u));
    using std::sqrt;
    const Scalar a = sqrt(gamma_ * p / u(0));
    const Scalar vn = (d == Direction::x ? u(1) : u(2)) / u(0);
    return {vn - a, vn + a};
  }

  // Transverse flux in direction d from an intermediate state and the flux of
  // that state in the other direction. Reproduces flux(d, u) when
  // g_star = flux(transverse(d), u).
  State transverse_flux(Direction d, const State& u_star, const State& g_star) const {
    if (d == Direction::y) return swap_xy(transverse_flux_x(swap_xy(u_star), swap_xy(g_star)));
    return transverse_flux_x(u_star, g_star);
  }

  Primitive<Scalar> to_primitive(const State& u) const {
    detail::require_density<Scalar>(u);
    Primitive<Scalar> w;
    w.rho = u(0);
    w.v(0) = u(1) / u(0);
    w.v(1) = u(2) / u(0);
    w.p = pressure(u);
    if (!(w.p > Scalar(0))) throw InvalidState("nonpositive pressure in state " + detail::describe_state(u));
    return w;
  }

  State from_primitive(const Primitive<Scalar>& w) const {
    if (!(w.rho > Scalar(0)) || !(w.p > Scalar(0)))
      throw InvalidState("primitive state needs positive density and pressure");
    const Scalar kinetic = Scalar(0.5) * w.rho * (w.v(0) * w.v(0) + w.v(1) * w.v(1));
    return State(w.rho, w.rho * w.v(0), w.rho * w.v(1), w.p / (gamma_ - Scalar(1)) + kinetic);
  }

  State powell_source(const State&) const {
    throw UnsupportedSystem("Powell source terms are defined for MHD only");
  }

 private:
  State flux_x(const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar vx = u(1) / u(0);
    const Scalar p = pressure(u);
    return State(u(1), u(1) * vx + p, u(2) * vx, vx * (u(3) + p));
  }

  Matrix jacobian_x(const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar g1 = gamma_ - Scalar(1);
    const Scalar vx = u(1) / u(0);
    const Scalar vy = u(2) / u(0);
    const Scalar q2 = vx * vx + vy * vy;
    const Scalar h = (u(3) + pressure(u)) / u(0);
    Matrix a;
    a << 0, 1, 0, 0,
        Scalar(0.5) * g1 * q2 - vx * vx, (Scalar(3) - gamma_) * vx, -g1 * vy, g1,
        -vx * vy, vy, vx, 0,
        vx * (Scalar(0.5) * g1 * q2 - h), h - g1 * vx * vx, -g1 * vx * vy, gamma_ * vx;
    return a;
  }

  State transverse_flux_x(const State& u, const State& g) const {
    if (!(u(0) > Scalar(0)))
      throw InvalidState("degenerate intermediate state " + detail::describe_state(u));
    return State(u(1),
                 g(2) + (u(1) * u(1) - u(2) * u(2)) / u(0),
                 g(1),
                 (u(1) / u(0)) * (u(3) + g(2) - u(2) * u(2) / u(0)));
  }

  Scalar gamma_;
};

}  // namespace avm
