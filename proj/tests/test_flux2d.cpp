#include <doctest.h>

#include "closed_form.hpp"
#include "helpers.hpp"

using namespace avm;

namespace testing {

namespace {

std::vector<BasisFunction> all_bases() {
  return {BasisFunction::hll(), BasisFunction::internal(1), BasisFunction::internal(3), BasisFunction::pade(1, 1),
          BasisFunction::pade(4, 4), BasisFunction::pade(2, 3, 2)};
}

template <typename System>
CornerContext<System> swapped(const CornerContext<System>& c) {
  CornerContext<System> s = c;
  s.ld = System::swap_xy(c.ld);
  s.rd = System::swap_xy(c.lu);
  s.lu = System::swap_xy(c.rd);
  s.ru = System::swap_xy(c.ru);
  s.speeds = {c.speeds.down, c.speeds.up, c.speeds.left, c.speeds.right};
  return s;
}

template <typename System, typename Draw>
CornerContext<System> random_context(const System& sys, Draw&& draw, const BasisFunction& b, bool powell) {
  return make_corner_context(sys, draw(), draw(), draw(), draw(), b, powell);
}

bool subsonic(const CornerSpeeds& s) { return s.left < 0 && s.right > 0 && s.down < 0 && s.up > 0; }

// Integral conservation over the box [S_L T, S_R T] x [S_D T, S_U T] for 0 <= t <= T
// with the one-dimensional HLL fans on its faces, by midpoint quadrature in time.
template <typename System>
typename System::State box_average(const System& sys, const CornerContext<System>& c) {
  using State = typename System::State;
  const Direction x = Direction::x, y = Direction::y;
  const double sl = c.speeds.left, sr = c.speeds.right, sd = c.speeds.down, su = c.speeds.up;
  const double T = 1.0;
  State total = (sr * T) * (su * T) * c.ru + (-sl * T) * (su * T) * c.lu + (sr * T) * (-sd * T) * c.rd +
                (-sl * T) * (-sd * T) * c.ld;
  auto fan_state = [&](const State& lo, const State& hi, Direction d, double s0, double s1) {
    return hll_state(sys, lo, hi, s0, s1, d, false).u;
  };
  const State ul = fan_state(c.ld, c.lu, y, sd, su), ur = fan_state(c.rd, c.ru, y, sd, su);
  const State ud = fan_state(c.ld, c.rd, x, sl, sr), uu = fan_state(c.lu, c.ru, x, sl, sr);
  const State fl = sys.transverse_flux(x, ul, hll_flux(sys, c.ld, c.lu, y, sd, su));
  const State fr = sys.transverse_flux(x, ur, hll_flux(sys, c.rd, c.ru, y, sd, su));
  const State gd = sys.transverse_flux(y, ud, hll_flux(sys, c.ld, c.rd, x, sl, sr));
  const State gu = sys.transverse_flux(y, uu, hll_flux(sys, c.lu, c.ru, x, sl, sr));
  const int n = 64;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * T / n;
    const double dt = T / n;
    // Lengths along each face: below the fan, inside it, above it.
    auto face = [&](const State& f_lo, const State& f_fan, const State& f_hi, double s0, double s1) {
      return State((s0 * t - s0 * T) * f_lo + (s1 - s0) * t * f_fan + (s1 * T - s1 * t) * f_hi);
    };
    const State east = face(sys.flux(x, c.rd), fr, sys.flux(x, c.ru), sd, su);
    const State west = face(sys.flux(x, c.ld), fl, sys.flux(x, c.lu), sd, su);
    const State north = face(sys.flux(y, c.lu), gu, sys.flux(y, c.ru), sl, sr);
    const State south = face(sys.flux(y, c.ld), gd, sys.flux(y, c.rd), sl, sr);
    total -= dt * (east - west + north - south);
  }
  return total / ((sr - sl) * (su - sd) * T * T);
}

}  // namespace

TEST_CASE("corner speeds") {
  const Euler sys(1.4);
  const Euler::State u(1.0, 0.2, -0.3, 2.7);
  const auto s = corner_speeds(sys, u, u, u, u);
  CHECK(s.left == sys.speeds(Direction::x, u).min);
  CHECK(s.right == sys.speeds(Direction::x, u).max);
  CHECK(s.down == sys.speeds(Direction::y, u).min);
  CHECK(s.up == sys.speeds(Direction::y, u).max);

  testing::Rng rng(1);
  for (int n = 0; n < 50; ++n) {
    const auto a = testing::euler_state(rng);
    const auto b = testing::euler_state(rng);
    const Euler::State ld(a(0), a(1), a(1), a(3));
    const Euler::State ru(b(0), b(2), b(2), b(3));
    const auto rd = testing::euler_state(rng);
    const auto sym = corner_speeds(sys, ld, rd, Euler::swap_xy(rd), ru);
    CHECK(sym.left == doctest::Approx(sym.down).epsilon(1e-15));
    CHECK(sym.right == doctest::Approx(sym.up).epsilon(1e-15));
  }

  const Euler::State fast(1.0, 5.0, 0.0, 1 / 0.4 + 12.5);
  CHECK(corner_speeds(sys, fast, fast, fast, fast).left > 0);
}

TEST_CASE("corner flux consistency on equal states") {
  const Euler euler(1.4);
  const Mhd mhd(5.0 / 3.0);
  testing::Rng rng(2);
  for (int n = 0; n < 10; ++n)
    for (const auto& b : all_bases()) {
      CAPTURE(b.name());
      for (double vmax : {0.3, 4.0}) {
        const auto e = testing::euler_state(rng, vmax);
        const auto ce = make_corner_context(euler, e, e, e, e, b, false);
        CHECK(rel_diff(corner_flux_x(euler, ce).flux.low_side(), euler.flux(Direction::x, e)) <= 1e-14);
        CHECK(rel_diff(corner_flux_y(euler, ce).flux.low_side(), euler.flux(Direction::y, e)) <= 1e-14);
        const auto m = testing::mhd_state(rng, vmax);
        for (bool powell : {false, true}) {
          const auto cm = make_corner_context(mhd, m, m, m, m, b, powell);
          const auto fx = corner_flux_x(mhd, cm);
          const auto fy = corner_flux_y(mhd, cm);
          CHECK_FALSE(fx.fallback);
          CHECK(rel_diff(fx.flux.low_side(), mhd.flux(Direction::x, m)) <= 1e-14);
          CHECK(rel_diff(fx.flux.high_side(), mhd.flux(Direction::x, m)) <= 1e-14);
          CHECK(rel_diff(fy.flux.low_side(), mhd.flux(Direction::y, m)) <= 1e-14);
        }
      }
    }
}

TEST_CASE("HLL corner flux equals the closed-form two-dimensional HLL flux") {
  const Euler euler(1.4);
  const Mhd mhd(5.0 / 3.0);
  testing::Rng rng(3);
  int checked = 0;
  double worst = 0.0;
  for (int n = 0; n < 150; ++n) {
    const auto ce = random_context(euler, [&] { return testing::euler_state(rng); }, BasisFunction::hll(), false);
    const auto cm = random_context(mhd, [&] { return testing::mhd_state(rng); }, BasisFunction::hll(), false);
    REQUIRE(subsonic(ce.speeds));
    REQUIRE(subsonic(cm.speeds));
    worst = std::max({worst, rel_diff(corner_flux_x(euler, ce).flux.low_side(), closed_form_f(euler, ce)),
                      rel_diff(corner_flux_y(euler, ce).flux.low_side(), closed_form_g(euler, ce)),
                      rel_diff(corner_flux_x(mhd, cm).flux.low_side(), closed_form_f(mhd, cm)),
                      rel_diff(corner_flux_y(mhd, cm).flux.low_side(), closed_form_g(mhd, cm))});
    ++checked;
  }
  CHECK(checked >= 100);
  CHECK(worst <= 1e-10);
}

TEST_CASE("x/y swap symmetry of corner fluxes") {
  const Mhd mhd(5.0 / 3.0);
  const Euler euler(1.4);
  testing::Rng rng(4);
  for (int n = 0; n < 20; ++n)
    for (const auto& b : all_bases())
      for (double vmax : {0.3, 2.0}) {
        CAPTURE(b.name());
        const auto cm = random_context(mhd, [&] { return testing::mhd_state(rng, vmax); }, b, n % 2 == 0);
        const auto fx = corner_flux_x(mhd, cm).flux;
        const auto fy = corner_flux_y(mhd, swapped(cm)).flux;
        CHECK(rel_diff(fy.low_side(), Mhd::swap_xy(fx.low_side())) <= 1e-12);
        CHECK(rel_diff(fy.high_side(), Mhd::swap_xy(fx.high_side())) <= 1e-12);
        const auto ce = random_context(euler, [&] { return testing::euler_state(rng, vmax); }, b, false);
        CHECK(rel_diff(corner_flux_y(euler, swapped(ce)).flux.low_side(),
                       Euler::swap_xy(corner_flux_x(euler, ce).flux.low_side())) <= 1e-12);
      }
}

TEST_CASE("corner flux reduces to the 1D flux without transverse variation") {
  const Euler euler(1.4);
  const Mhd mhd(5.0 / 3.0);
  testing::Rng rng(5);
  for (int n = 0; n < 20; ++n)
    for (const auto& b : all_bases()) {
      CAPTURE(b.name());
      const auto l = testing::euler_state(rng);
      const auto r = testing::euler_state(rng);
      const auto ce = make_corner_context(euler, l, r, l, r, b, false);
      CHECK(rel_diff(corner_flux_x(euler, ce).flux.low_side(),
                     avm_flux(euler, make_edge_context(euler, l, r, Direction::x, b), false)) <= 1e-10);
      const auto ml = testing::mhd_state(rng);
      const auto mr = testing::mhd_state(rng);
      // No x-variation: the y-corner flux is the 1D y-flux.
      const auto cm = make_corner_context(mhd, ml, ml, mr, mr, b, true);
      const auto got = corner_flux_y(mhd, cm).flux;
      const auto want = avm_flux_parts(mhd, make_edge_context(mhd, ml, mr, Direction::y, b), true);
      CHECK(rel_diff(got.low_side(), want.low_side()) <= 1e-10);
      CHECK(rel_diff(got.high_side(), want.high_side()) <= 1e-10);
    }
}

TEST_CASE("supersonic corners upwind") {
  const Euler sys(1.4);
  testing::Rng rng(6);
  const auto hll = BasisFunction::hll();
  for (int n = 0; n < 20; ++n) {
    auto shifted = [&](double vx, double vy) {
      Primitive<double> w = sys.to_primitive(testing::euler_state(rng));
      w.v(0) += vx;
      w.v(1) += vy;
      return sys.from_primitive(w);
    };
    // Supersonic in both directions: the lower-left state is upwind.
    auto ctx = make_corner_context(sys, shifted(5, 5), shifted(5, 5), shifted(5, 5), shifted(5, 5), hll, false);
    CHECK(rel_diff(corner_flux_x(sys, ctx).flux.low_side(), sys.flux(Direction::x, ctx.ld)) <= 1e-15);
    CHECK(rel_diff(corner_flux_y(sys, ctx).flux.low_side(), sys.flux(Direction::y, ctx.ld)) <= 1e-15);
    ctx = make_corner_context(sys, shifted(-5, -5), shifted(-5, -5), shifted(-5, -5), shifted(-5, -5), hll, false);
    CHECK(rel_diff(corner_flux_x(sys, ctx).flux.low_side(), sys.flux(Direction::x, ctx.ru)) <= 1e-15);

    // Supersonic upward only: the x-flux is the 1D flux of the lower pair.
    for (const auto& b : all_bases()) {
      ctx = make_corner_context(sys, shifted(0, 5), shifted(0, 5), shifted(0, 5), shifted(0, 5), b, false);
      REQUIRE(ctx.speeds.down > 0);
      REQUIRE(ctx.speeds.left < 0);
      EdgeFluxContext<Euler> edge{ctx.ld, ctx.rd, Direction::x, b, {ctx.speeds.left, ctx.speeds.right},
                                  std::max(-ctx.speeds.left, ctx.speeds.right)};
      CHECK(rel_diff(corner_flux_x(sys, ctx).flux.low_side(), avm_flux(sys, edge, false)) <= 1e-14);
    }

    // Supersonic rightward only: the x-flux is the transverse flux of the left pair.
    ctx = make_corner_context(sys, shifted(5, 0), shifted(5, 0), shifted(5, 0), shifted(5, 0), hll, false);
    REQUIRE(ctx.speeds.left > 0);
    const double sd = ctx.speeds.down, su = ctx.speeds.up;
    const auto star = hll_state(sys, ctx.ld, ctx.lu, sd, su, Direction::y, false);
    const Euler::State g = (su * sys.flux(Direction::y, ctx.ld) - sd * sys.flux(Direction::y, ctx.lu) +
                            sd * su * (ctx.lu - ctx.ld)) / (su - sd);
    CHECK(rel_diff(corner_flux_x(sys, ctx).flux.low_side(), sys.transverse_flux(Direction::x, star.u, g)) <= 1e-14);
  }
}

TEST_CASE("degenerate intermediate states fall back to the averaged 1D flux") {
  const Euler sys(1.4);
  const Euler::State down(1.0, 0.0, -5.0, 15.0);
  const Euler::State up(1.0, 0.0, 5.0, 15.0);
  CornerContext<Euler> ctx{down, down, up, up, {-1.0, 1.0, -0.1, 0.1}, BasisFunction::internal(2), false};
  const auto c = corner_flux_x(sys, ctx);
  CHECK(c.fallback);
  const Euler::State avg = 0.5 * (down + up);
  CHECK(rel_diff(c.flux.low_side(),
                 avm_flux(sys, make_edge_context(sys, avg, avg, Direction::x, ctx.basis), false)) <= 1e-14);
}

TEST_CASE("resolved state") {
  const Euler euler(1.4);
  const Mhd mhd(5.0 / 3.0);
  testing::Rng rng(7);
  for (int n = 0; n < 20; ++n) {
    const auto u = testing::euler_state(rng);
    const auto ctx = make_corner_context(euler, u, u, u, u, BasisFunction::hll(), false);
    CHECK(rel_diff(resolved_state(euler, ctx), u) <= 1e-13);
  }

  const testing::ZeroFlux zero;
  using Z = testing::ZeroFlux::State;
  for (int n = 0; n < 20; ++n) {
    auto draw = [&] { return Z(rng.uniform(0.5, 2), rng.uniform(-1, 1), rng.uniform(-1, 1)); };
    CornerContext<testing::ZeroFlux> ctx{draw(), draw(), draw(), draw(),
                                         {rng.uniform(-2, -0.1), rng.uniform(0.1, 2), rng.uniform(-2, -0.1),
                                          rng.uniform(0.1, 2)},
                                         BasisFunction::hll(), false};
    const double sl = ctx.speeds.left, sr = ctx.speeds.right, sd = ctx.speeds.down, su = ctx.speeds.up;
    const Z want = (sr * su * ctx.ru + sl * sd * ctx.ld - sr * sd * ctx.rd - sl * su * ctx.lu) / ((sr - sl) * (su - sd));
    CHECK(rel_diff(resolved_state(zero, ctx), want) <= 1e-14);
  }

  for (int n = 0; n < 50; ++n) {
    const auto ce = random_context(euler, [&] { return testing::euler_state(rng); }, BasisFunction::hll(), false);
    CHECK(rel_diff(resolved_state(euler, ce), box_average(euler, ce)) <= 1e-12);
    const auto cm = random_context(mhd, [&] { return testing::mhd_state(rng); }, BasisFunction::hll(), false);
    CHECK(rel_diff(resolved_state(mhd, cm), box_average(mhd, cm)) <= 1e-12);
  }
}

TEST_CASE("edge assembly") {
  const Euler::State f(1, 2, 3, 4);
  for (const auto& w : {AssemblyWeights::simpson(), AssemblyWeights::one_dimensional(),
                        AssemblyWeights::speed_weighted(-1.0, 2.0, 0.1, 0.5)})
    CHECK(rel_diff(assemble_edge_flux(f, f, f, w), f) <= 1e-15);
  const auto s = AssemblyWeights::simpson();
  CHECK(s.alpha == doctest::Approx(1.0 / 6.0));
  CHECK(s.beta == doctest::Approx(2.0 / 3.0));
  CHECK(s.gamma == doctest::Approx(1.0 / 6.0));
  const Euler::State a(1, 0, 0, 0), b(0, 1, 0, 0), c(0, 0, 1, 0);
  CHECK(rel_diff(assemble_edge_flux(a, b, c, s), Euler::State(1.0 / 6, 2.0 / 3, 1.0 / 6, 0)) <= 1e-15);
  CHECK_THROWS_AS(assemble_edge_flux(a, b, c, AssemblyWeights{0.2, 0.2, 0.2}), InvalidParameter);

  const auto w = AssemblyWeights::speed_weighted(-1.0, 2.0, 0.1, 0.5);
  CHECK(w.alpha == doctest::Approx(0.1));
  CHECK(w.gamma == doctest::Approx(0.2));
  CHECK(w.beta == doctest::Approx(0.7));
  const auto clipped = AssemblyWeights::speed_weighted(1.0, -2.0, 0.1, 0.5);
  CHECK(clipped.alpha == 0.0);
  CHECK(clipped.gamma == 0.0);
  CHECK(clipped.beta == 1.0);
}

}  // namespace testing
