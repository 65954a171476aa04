#pragma once

// One-dimensional AVM edge fluxes
//
//   F(U0, U1) = (F(U0) + F(U1)) / 2 - Q (U1 - U0) / 2,
//
// together with the HLL intermediate state and the Powell-modified variants
// for the eight-wave MHD system.
//
// A System type provides kVars, kMagnetic, State, Matrix, flux(), jacobian(),
// speeds() and transverse_flux(); magnetic systems also provide
// powell_source(), powell_jump_term() and powell_matrix().

#include <algorithm>
#include <cmath>

#include "avm/approx.hpp"
#include "avm/errors.hpp"
#include "avm/physics/common.hpp"
#include "avm/smallmat.hpp"

namespace avm {

// Numerical flux split into its conservative part and the Powell jump
// B(U~)(U1 - U0). The cell on the low side of the edge sees central + powell/2
// and the cell on the high side sees central - powell/2, so the jump term is
// shared between the two cells as a centered source.
template <typename System>
struct NumericalFlux {
  using State = typename System::State;
  State central = State::Zero();
  State powell = State::Zero();

  State low_side() const { return central + 0.5 * powell; }
  State high_side() const { return central - 0.5 * powell; }
};

template <typename System>
struct EdgeFluxContext {
  using State = typename System::State;
  State u0;
  State u1;
  Direction direction = Direction::x;
  BasisFunction basis;
  SignalSpeeds speeds{0.0, 0.0};
  double lambda_max = 0.0;
};

template <typename System>
struct HllState {
  typename System::State u;
  bool physical = true;
};

namespace detail {

template <typename System>
void require_magnetic_for_powell(bool powell) {
  if constexpr (!System::kMagnetic) {
    if (powell) throw UnsupportedSystem("Powell divergence cleaning needs a magnetic system");
  }
}

template <typename System>
typename System::State powell_jump(const System& sys, bool powell, Direction d,
                                   const typename System::State& u0,
                                   const typename System::State& u1) {
  if constexpr (System::kMagnetic) {
    if (powell) return sys.powell_jump_term(d, u0, u1, typename System::State(0.5 * (u0 + u1)));
  }
  return System::State::Zero();
}

}  // namespace detail

// Outer signal speeds of the edge: the extreme characteristic speeds of the
// two states and of their arithmetic mean.
template <typename System>
SignalSpeeds estimate_edge_speeds(const System& sys, const typename System::State& u0,
                                  const typename System::State& u1, Direction d) {
  const auto s0 = sys.speeds(d, u0);
  const auto s1 = sys.speeds(d, u1);
  const auto sm = sys.speeds(d, typename System::State(0.5 * (u0 + u1)));
  return {static_cast<double>(std::min(s0.min, sm.min)), static_cast<double>(std::max(s1.max, sm.max))};
}

template <typename System>
HllState<System> hll_state(const System& sys, const typename System::State& u0,
                           const typename System::State& u1, double s0, double s1, Direction d,
                           bool powell) {
  using State = typename System::State;
  using Scalar = typename System::scalar_type;
  detail::require_magnetic_for_powell<System>(powell);
  const auto fan = widen_fan(s0, s1);
  State num = Scalar(fan.right) * u1 - Scalar(fan.left) * u0 + sys.flux(d, u0) - sys.flux(d, u1);
  num -= detail::powell_jump(sys, powell, d, u0, u1);
  HllState<System> out{State(num / Scalar(fan.right - fan.left)), true};
  out.physical = out.u(0) > Scalar(0);
  return out;
}

// Core AVM combination given the two states, the two fluxes standing for
// F(U0), F(U1), the bound basis and the spectral bound. The HLL basis uses the
// Roe property A (U1 - U0) = F1 - F0 (plus the Powell jump), so it is exactly
// the classical HLL flux; other bases evaluate f on the Jacobian at the mean
// state (augmented by the Powell matrix when cleaning is on).
template <typename System>
NumericalFlux<System> avm_combine(const System& sys, Direction d, const typename System::State& u0,
                                  const typename System::State& u1, const typename System::State& f0,
                                  const typename System::State& f1, const BasisFunction& bound,
                                  double lambda_max, bool powell) {
  using State = typename System::State;
  using Matrix = typename System::Matrix;
  using Scalar = typename System::scalar_type;
  detail::require_magnetic_for_powell<System>(powell);
  const State du = u1 - u0;
  NumericalFlux<System> out;
  out.powell = detail::powell_jump(sys, powell, d, u0, u1);
  State action;
  if (bound.kind() == BasisKind::HllLinear) {
    const auto c = bound.hll_coefficients();
    action = Scalar(c.alpha0) * du + Scalar(c.alpha1) * (f1 - f0 + out.powell);
  } else {
    const State mean = 0.5 * (u0 + u1);
    Matrix a = sys.jacobian(d, mean);
    if constexpr (System::kMagnetic) {
      if (powell) a += sys.powell_matrix(d, mean);
    }
    action = apply_viscosity(bound, a, lambda_max, du);
  }
  out.central = 0.5 * (f0 + f1) - 0.5 * action;
  return out;
}

template <typename System>
EdgeFluxContext<System> make_edge_context(const System& sys, const typename System::State& u0,
                                          const typename System::State& u1, Direction d,
                                          const BasisFunction& basis) {
  EdgeFluxContext<System> ctx{u0, u1, d, basis, estimate_edge_speeds(sys, u0, u1, d), 0.0};
  ctx.lambda_max = std::max(std::abs(ctx.speeds.left), std::abs(ctx.speeds.right));
  return ctx;
}

// Flux split into conservative and Powell parts.
template <typename System>
NumericalFlux<System> avm_flux_parts(const System& sys, const EdgeFluxContext<System>& ctx,
                                     bool powell) {
  const auto fan = widen_fan(ctx.speeds.left, ctx.speeds.right);
  const double lambda =
      std::max({ctx.lambda_max, std::abs(fan.left), std::abs(fan.right)});
  return avm_combine(sys, ctx.direction, ctx.u0, ctx.u1, sys.flux(ctx.direction, ctx.u0),
                     sys.flux(ctx.direction, ctx.u1), ctx.basis.bind(fan.left, fan.right), lambda,
                     powell);
}

// F~(U0, U1) = (F0 + F1)/2 - (Q - B(U~))(U1 - U0)/2; without cleaning this is
// the plain AVM flux.
template <typename System>
typename System::State avm_flux(const System& sys, const EdgeFluxContext<System>& ctx, bool powell) {
  return avm_flux_parts(sys, ctx, powell).low_side();
}

}  // namespace avm
