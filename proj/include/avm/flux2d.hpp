#pragma once

// Genuinely two-dimensional corner fluxes and edge assembly.
//
// A corner (vertex) is surrounded by four cells
//
//     LU | RU
//     ---+---
//     LD | RD
//
// and the four-wave model bounds its interaction region by S_L, S_R in x and
// S_D, S_U in y. The corner flux in direction d is an AVM flux between the two
// HLL states built across the transverse direction t, with the physical fluxes
// replaced by transverse fluxes:
//
//   F* = (F*_0 + F*_1) / 2 - Q* (U*_1 - U*_0) / 2.

#include <algorithm>
#include <array>
#include <cmath>

#include "avm/flux1d.hpp"

namespace avm {

struct CornerSpeeds {
  double left = 0.0;
  double right = 0.0;
  double down = 0.0;
  double up = 0.0;
};

template <typename System>
struct CornerContext {
  using State = typename System::State;
  State ld;
  State rd;
  State lu;
  State ru;
  CornerSpeeds speeds;
  BasisFunction basis;
  bool powell = false;
};

template <typename System>
struct CornerFlux {
  NumericalFlux<System> flux;
  bool fallback = false;
};

struct AssemblyWeights {
  double alpha;  // upper corner
  double beta;   // edge midpoint
  double gamma;  // lower corner

  static AssemblyWeights simpson() { return {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}; }
  static AssemblyWeights one_dimensional() { return {0.0, 1.0, 0.0}; }

  // Time-space average of the normal flux through the edge. s_down_upper is
  // S_D at the upper corner and s_up_lower is S_U at the lower corner; both
  // are clipped to their upwind sign.
  static AssemblyWeights speed_weighted(double s_down_upper, double s_up_lower, double dt, double dh) {
    const double a = -std::min(s_down_upper, 0.0) * dt / (2.0 * dh);
    const double g = std::max(s_up_lower, 0.0) * dt / (2.0 * dh);
    return {a, 1.0 - a - g, g};
  }
};

// Four-wave speeds from the edge speeds of the two x-pairs and the two y-pairs.
inline CornerSpeeds corner_speeds_from_edges(const SignalSpeeds& lower, const SignalSpeeds& upper,
                                             const SignalSpeeds& left, const SignalSpeeds& right) {
  return {std::min(lower.left, upper.left), std::max(lower.right, upper.right),
          std::min(left.left, right.left), std::max(left.right, right.right)};
}

template <typename System>
CornerSpeeds corner_speeds(const System& sys, const typename System::State& ld,
                           const typename System::State& rd, const typename System::State& lu,
                           const typename System::State& ru) {
  return corner_speeds_from_edges(
      estimate_edge_speeds(sys, ld, rd, Direction::x), estimate_edge_speeds(sys, lu, ru, Direction::x),
      estimate_edge_speeds(sys, ld, lu, Direction::y), estimate_edge_speeds(sys, rd, ru, Direction::y));
}

template <typename System>
CornerContext<System> make_corner_context(const System& sys, const typename System::State& ld,
                                          const typename System::State& rd,
                                          const typename System::State& lu,
                                          const typename System::State& ru, const BasisFunction& basis,
                                          bool powell) {
  return {ld, rd, lu, ru, corner_speeds(sys, ld, rd, lu, ru), basis, powell};
}

namespace detail {

// View of a corner in the frame of direction d: at(n, t) is the state on side
// n of the normal axis and side t of the transverse axis.
template <typename System>
struct CornerFrame {
  using State = typename System::State;
  const CornerContext<System>& ctx;
  Direction d;

  const State& at(int n, int t) const {
    const int ix = d == Direction::x ? n : t;
    const int iy = d == Direction::x ? t : n;
    if (iy == 0) return ix == 0 ? ctx.ld : ctx.rd;
    return ix == 0 ? ctx.lu : ctx.ru;
  }
  double n0() const { return d == Direction::x ? ctx.speeds.left : ctx.speeds.down; }
  double n1() const { return d == Direction::x ? ctx.speeds.right : ctx.speeds.up; }
  double t0() const { return d == Direction::x ? ctx.speeds.down : ctx.speeds.left; }
  double t1() const { return d == Direction::x ? ctx.speeds.up : ctx.speeds.right; }
};

// 1D AVM flux with prescribed (already four-wave) speeds.
template <typename System>
NumericalFlux<System> fixed_speed_flux(const System& sys, Direction d, const typename System::State& u0,
                                       const typename System::State& u1, double s0, double s1,
                                       const BasisFunction& basis, bool powell) {
  const auto fan = widen_fan(s0, s1);
  const double lambda = std::max(std::abs(fan.left), std::abs(fan.right));
  return avm_combine(sys, d, u0, u1, sys.flux(d, u0), sys.flux(d, u1), basis.bind(fan.left, fan.right),
                     lambda, powell);
}

template <typename System>
NumericalFlux<System> upwind_parts(const typename System::State& flux, const typename System::State& jump,
                                   bool from_low) {
  NumericalFlux<System> out;
  out.powell = jump;
  out.central = from_low ? typename System::State(flux - 0.5 * jump) : typename System::State(flux + 0.5 * jump);
  return out;
}

}  // namespace detail

// Corner flux normal to direction d. Supersonic configurations reduce to
// upwinding; degenerate intermediate states fall back to the 1D flux between
// the transverse averages and set the fallback flag.
template <typename System>
CornerFlux<System> corner_flux(const System& sys, const CornerContext<System>& ctx, Direction d) {
  using State = typename System::State;
  const detail::CornerFrame<System> frame{ctx, d};
  const Direction t = transverse(d);
  const double n0 = frame.n0();
  const double n1 = frame.n1();
  const double t0 = frame.t0();
  const double t1 = frame.t1();
  const bool normal_super = n0 >= 0 || n1 <= 0;
  const bool transverse_super = t0 >= 0 || t1 <= 0;

  if (transverse_super) {
    const int b = t0 >= 0 ? 0 : 1;
    const State& u0 = frame.at(0, b);
    const State& u1 = frame.at(1, b);
    if (!normal_super)
      return {detail::fixed_speed_flux(sys, d, u0, u1, n0, n1, ctx.basis, ctx.powell), false};
    const bool from_low = n0 >= 0;
    const State jump = detail::powell_jump(sys, ctx.powell, d, u0, u1);
    return {detail::upwind_parts<System>(sys.flux(d, from_low ? u0 : u1), jump, from_low), false};
  }

  std::array<HllState<System>, 2> star;
  for (int s = 0; s < 2; ++s)
    star[s] = hll_state(sys, frame.at(s, 0), frame.at(s, 1), t0, t1, t, ctx.powell);

  if (!star[0].physical || !star[1].physical) {
    const State a0 = 0.5 * (frame.at(0, 0) + frame.at(0, 1));
    const State a1 = 0.5 * (frame.at(1, 0) + frame.at(1, 1));
    return {avm_flux_parts(sys, make_edge_context(sys, a0, a1, d, ctx.basis), ctx.powell), true};
  }

  auto side_flux = [&](int s) {
    const auto g = detail::fixed_speed_flux(sys, t, frame.at(s, 0), frame.at(s, 1), t0, t1, ctx.basis,
                                            ctx.powell);
    return State(sys.transverse_flux(d, star[s].u, g.low_side()));
  };

  const State jump = detail::powell_jump(sys, ctx.powell, d, star[0].u, star[1].u);
  if (normal_super) {
    const bool from_low = n0 >= 0;
    return {detail::upwind_parts<System>(side_flux(from_low ? 0 : 1), jump, from_low), false};
  }

  const State f0 = side_flux(0);
  const State f1 = side_flux(1);
  const auto fan = widen_fan(n0, n1);
  double lambda = std::max(std::abs(fan.left), std::abs(fan.right));
  const State mean = 0.5 * (star[0].u + star[1].u);
  if (sys.valid(mean)) {
    const auto sm = sys.speeds(d, mean);
    lambda = std::max({lambda, std::abs(static_cast<double>(sm.min)), std::abs(static_cast<double>(sm.max))});
  }
  return {avm_combine(sys, d, star[0].u, star[1].u, f0, f1, ctx.basis.bind(fan.left, fan.right), lambda,
                      ctx.powell),
          false};
}

template <typename System>
CornerFlux<System> corner_flux_x(const System& sys, const CornerContext<System>& ctx) {
  return corner_flux(sys, ctx, Direction::x);
}

template <typename System>
CornerFlux<System> corner_flux_y(const System& sys, const CornerContext<System>& ctx) {
  return corner_flux(sys, ctx, Direction::y);
}

// Strongly interacting state U* of the subsonic four-wave fan, from the
// integral of the conservation law over the interaction box.
template <typename System>
typename System::State resolved_state(const System& sys, const CornerContext<System>& ctx) {
  using State = typename System::State;
  using Scalar = typename System::scalar_type;
  const auto& s = ctx.speeds;
  const auto fx = widen_fan(s.left, s.right);
  const auto fy = widen_fan(s.down, s.up);
  const Scalar sl(fx.left), sr(fx.right), sd(fy.left), su(fy.right);
  const Scalar area = (sr - sl) * (su - sd);

  auto side = [&](Direction d, const State& a, const State& b, double s0, double s1) {
    const Direction t = transverse(d);
    const auto star = hll_state(sys, a, b, s0, s1, t, ctx.powell);
    const auto g = detail::fixed_speed_flux(sys, t, a, b, s0, s1, ctx.basis, ctx.powell);
    return State(sys.transverse_flux(d, star.u, g.low_side()));
  };
  const State f_left = side(Direction::x, ctx.ld, ctx.lu, fy.left, fy.right);
  const State f_right = side(Direction::x, ctx.rd, ctx.ru, fy.left, fy.right);
  const State g_down = side(Direction::y, ctx.ld, ctx.rd, fx.left, fx.right);
  const State g_up = side(Direction::y, ctx.lu, ctx.ru, fx.left, fx.right);

  const auto fx_of = [&](const State& u) { return State(sys.flux(Direction::x, u)); };
  const auto gy_of = [&](const State& u) { return State(sys.flux(Direction::y, u)); };

  State u = (sr * su * ctx.ru + sl * sd * ctx.ld - sr * sd * ctx.rd - sl * su * ctx.lu) / area;
  u -= ((fx_of(ctx.ru) - fx_of(ctx.lu)) * su - (fx_of(ctx.rd) - fx_of(ctx.ld)) * sd) / (Scalar(2) * area);
  u -= ((gy_of(ctx.ru) - gy_of(ctx.rd)) * sr - (gy_of(ctx.lu) - gy_of(ctx.ld)) * sl) / (Scalar(2) * area);
  u -= (f_right - f_left) / (Scalar(2) * (sr - sl));
  u -= (g_up - g_down) / (Scalar(2) * (su - sd));
  return u;
}

// alpha F_up + beta F_edge + gamma F_down.
template <typename Vec>
Vec assemble_edge_flux(const Vec& corner_up, const Vec& edge, const Vec& corner_down,
                       const AssemblyWeights& w) {
  if (!(std::abs(w.alpha + w.beta + w.gamma - 1.0) <= 1e-12))
    throw InvalidParameter("assembly weights must sum to one");
  using Scalar = typename Vec::Scalar;
  return Scalar(w.alpha) * corner_up + Scalar(w.beta) * edge + Scalar(w.gamma) * corner_down;
}

}  // namespace avm
