#pragma once

// Ideal MHD in two space dimensions with all three vector components,
// U = (rho, rho v, B, E), E = rho |v|^2 / 2 + |B|^2 / 2 + P / (gamma - 1).
// Includes the Powell source S(U) = (0, B, v, v.B) of the eight-wave model.

#include <algorithm>
#include <cmath>

#include "avm/physics/common.hpp"
#include "avm/smallmat.hpp"

namespace avm {

template <typename Scalar = double>
class Mhd {
 public:
  static constexpr int kVars = 8;
  static constexpr bool kMagnetic = true;
  using scalar_type = Scalar;
  using State = Vector<Scalar, kVars>;
  using Matrix = SquareMatrix<Scalar, kVars>;

  explicit Mhd(double gamma) : gamma_(gamma) {
    if (!(gamma > 1)) throw InvalidParameter("adiabatic constant must exceed 1");
  }

  double gamma() const { return static_cast<double>(gamma_); }

  static int normal_field_index(Direction d) { return d == Direction::x ? 4 : 5; }

  static Scalar magnetic_pressure(const State& u) {
    return Scalar(0.5) * (u(4) * u(4) + u(5) * u(5) + u(6) * u(6));
  }

  Scalar pressure(const State& u) const {
    const Scalar kinetic = Scalar(0.5) * (u(1) * u(1) + u(2) * u(2) + u(3) * u(3)) / u(0);
    return (gamma_ - Scalar(1)) * (u(7) - kinetic - magnetic_pressure(u));
  }

  bool valid(const State& u) const { return u(0) > Scalar(0) && pressure(u) > Scalar(0); }

  Scalar sound_speed(const State& u) const {
    using std::sqrt;
    return sqrt(gamma_ * pressure(u) / u(0));
  }

  static State swap_xy(const State& u) {
    State s;
    s << u(0), u(2), u(1), u(3), u(5), u(4), u(6), u(7);
    return s;
  }

  State flux(Direction d, const State& u) const {
    if (d == Direction::y) return swap_xy(flux_x(swap_xy(u)));
    return flux_x(u);
  }

  Matrix jacobian(Direction d, const State& u) const {
    if (d == Direction::x) return jacobian_x(u);
    const Matrix jx = jacobian_x(swap_xy(u));
    static constexpr int p[kVars] = {0, 2, 1, 3, 5, 4, 6, 7};
    Matrix jy;
    for (int i = 0; i < kVars; ++i)
      for (int j = 0; j < kVars; ++j) jy(i, j) = jx(p[i], p[j]);
    return jy;
  }

  // Fast magnetosonic speed c_f in direction d.
  Scalar fast_speed(Direction d, const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar p = pressure(u);
    if (!(p > Scalar(0))) throw InvalidState("nonpositive pressure in state " + detail::describe_state(u));
    using std::sqrt;
    const Scalar a2 = gamma_ * p / u(0);
    const Scalar b2 = Scalar(2) * magnetic_pressure(u) / u(0);
    const Scalar bn = u(normal_field_index(d));
    const Scalar bn2 = bn * bn / u(0);
    const Scalar sum = a2 + b2;
    const Scalar disc = std::max(Scalar(0), sum * sum - Scalar(4) * a2 * bn2);
    return sqrt(Scalar(0.5) * (sum + sqrt(disc)));
  }

  WaveSpeeds<Scalar> speeds(Direction d, const State& u) const {
    const Scalar cf = fast_speed(d, u);
    const Scalar vn = (d == Direction::x ? u(1) : u(2)) / u(0);
    return {vn - cf, vn + cf};
  }

  State transverse_flux(Direction d, const State& u_star, const State& g_star) const {
    if (d == Direction::y) return swap_xy(transverse_flux_x(swap_xy(u_star), swap_xy(g_star)));
    return transverse_flux_x(u_star, g_star);
  }

  // S(U) = (0, B, v, v.B).
  State powell_source(const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar vx = u(1) / u(0);
    const Scalar vy = u(2) / u(0);
    const Scalar vz = u(3) / u(0);
    State s;
    s << 0, u(4), u(5), u(6), vx, vy, vz, vx * u(4) + vy * u(5) + vz * u(6);
    return s;
  }

  // B_d(U_avg)(U1 - U0) = (B_n,1 - B_n,0) S(U_avg).
  State powell_jump_term(Direction d, const State& u0, const State& u1, const State& u_avg) const {
    const int n = normal_field_index(d);
    return (u1(n) - u0(n)) * powell_source(u_avg);
  }

  // The 8x8 matrix B_d(U), whose only nonzero column is S(U) in the normal-field slot.
  Matrix powell_matrix(Direction d, const State& u) const {
    Matrix b = Matrix::Zero();
    b.col(normal_field_index(d)) = powell_source(u);
    return b;
  }

  Primitive<Scalar> to_primitive(const State& u) const {
    detail::require_density<Scalar>(u);
    Primitive<Scalar> w;
    w.rho = u(0);
    w.v = u.template segment<3>(1) / u(0);
    w.b = u.template segment<3>(4);
    w.p = pressure(u);
    if (!(w.p > Scalar(0))) throw InvalidState("nonpositive pressure in state " + detail::describe_state(u));
    return w;
  }

  State from_primitive(const Primitive<Scalar>& w) const {
    if (!(w.rho > Scalar(0)) || !(w.p > Scalar(0)))
      throw InvalidState("primitive state needs positive density and pressure");
    State u;
    u(0) = w.rho;
    u.template segment<3>(1) = w.rho * w.v;
    u.template segment<3>(4) = w.b;
    u(7) = w.p / (gamma_ - Scalar(1)) + Scalar(0.5) * w.rho * w.v.squaredNorm() +
           Scalar(0.5) * w.b.squaredNorm();
    return u;
  }

 private:
  State flux_x(const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar rho = u(0);
    const Scalar vx = u(1) / rho;
    const Scalar vy = u(2) / rho;
    const Scalar vz = u(3) / rho;
    const Scalar bx = u(4);
    const Scalar by = u(5);
    const Scalar bz = u(6);
    const Scalar ptot = pressure(u) + magnetic_pressure(u);
    const Scalar vb = vx * bx + vy * by + vz * bz;
    State f;
    f << u(1),
        u(1) * vx + ptot - bx * bx,
        u(2) * vx - bx * by,
        u(3) * vx - bx * bz,
        0,
        vx * by - vy * bx,
        vx * bz - vz * bx,
        vx * (u(7) + ptot) - bx * vb;
    return f;
  }

  Matrix jacobian_x(const State& u) const {
    detail::require_density<Scalar>(u);
    const Scalar g = gamma_ - Scalar(1);
    const Scalar rho = u(0);
    const Scalar vx = u(1) / rho;
    const Scalar vy = u(2) / rho;
    const Scalar vz = u(3) / rho;
    const Scalar bx = u(4);
    const Scalar by = u(5);
    const Scalar bz = u(6);
    const Scalar half_q2 = Scalar(0.5) * (vx * vx + vy * vy + vz * vz);
    const Scalar ptot = pressure(u) + magnetic_pressure(u);
    const Scalar vb = vx * bx + vy * by + vz * bz;
    const Scalar e_ptot = (u(7) + ptot) / rho;
    const Scalar two_minus_gamma = Scalar(2) - gamma_;

    Matrix a = Matrix::Zero();
    a(0, 1) = 1;

    a(1, 0) = g * half_q2 - vx * vx;
    a(1, 1) = (Scalar(2) - g) * vx;
    a(1, 2) = -g * vy;
    a(1, 3) = -g * vz;
    a(1, 4) = -gamma_ * bx;
    a(1, 5) = two_minus_gamma * by;
    a(1, 6) = two_minus_gamma * bz;
    a(1, 7) = g;

    a(2, 0) = -vx * vy;
    a(2, 1) = vy;
    a(2, 2) = vx;
    a(2, 4) = -by;
    a(2, 5) = -bx;

    a(3, 0) = -vx * vz;
    a(3, 1) = vz;
    a(3, 3) = vx;
    a(3, 4) = -bz;
    a(3, 6) = -bx;

    a(5, 0) = -(vx * by - vy * bx) / rho;
    a(5, 1) = by / rho;
    a(5, 2) = -bx / rho;
    a(5, 4) = -vy;
    a(5, 5) = vx;

    a(6, 0) = -(vx * bz - vz * bx) / rho;
    a(6, 1) = bz / rho;
    a(6, 3) = -bx / rho;
    a(6, 4) = -vz;
    a(6, 6) = vx;

    a(7, 0) = -vx * e_ptot + g * vx * half_q2 + bx * vb / rho;
    a(7, 1) = e_ptot - g * vx * vx - bx * bx / rho;
    a(7, 2) = -g * vx * vy - bx * by / rho;
    a(7, 3) = -g * vx * vz - bx * bz / rho;
    a(7, 4) = (Scalar(1) - gamma_) * vx * bx - vb;
    a(7, 5) = two_minus_gamma * vx * by - bx * vy;
    a(7, 6) = two_minus_gamma * vx * bz - bx * vz;
    a(7, 7) = gamma_ * vx;
    return a;
  }

  State transverse_flux_x(const State& u, const State& g) const {
    if (!(u(0) > Scalar(0)))
      throw InvalidState("degenerate intermediate state " + detail::describe_state(u));
    const Scalar rho = u(0);
    State f;
    f << u(1),
        g(2) + (u(1) * u(1) - u(2) * u(2)) / rho + u(5) * u(5) - u(4) * u(4),
        g(1),
        u(1) * u(3) / rho - u(4) * u(6),
        0,
        (u(1) * u(5) - u(2) * u(4)) / rho,
        (u(1) * u(6) - u(3) * u(4)) / rho,
        (u(1) / rho) * (u(7) + g(2) - u(2) * u(2) / rho + u(5) * u(5)) -
            (u(4) / rho) * (u(1) * u(4) + u(2) * u(5) + u(3) * u(6));
    return f;
  }

  Scalar gamma_;
};

}  // namespace avm
