#pragma once

// Structured cell-centered grid with one ghost layer, boundary fill, CFL time
// step and the first-order conservative update
//
//   U_ij <- U_ij - dt/dx (F_{i+1/2,j} - F_{i-1/2,j}) - dt/dy (G_{i,j+1/2} - G_{i,j-1/2}).
//
// Edge fluxes are 1D AVM fluxes (1D mode) or the assembly of edge and corner
// fluxes (2D mode). With Powell cleaning the two cells sharing an edge see the
// flux with opposite halves of the jump term.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "avm/flux2d.hpp"

namespace avm {

enum class Boundary { periodic, transmissive, fixed };
enum class SolverMode { one_d, two_d };
enum class Assembly { simpson, speed_weighted };

struct GridGeometry {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double dx() const { return (x1 - x0) / nx; }
  double dy() const { return (y1 - y0) / ny; }
};

template <typename System>
class Field {
 public:
  using State = typename System::State;

  Field(const GridGeometry& geom, Boundary bc_x, Boundary bc_y)
      : geom_(geom), bc_x_(bc_x), bc_y_(bc_y) {
    if (geom.nx < 1 || geom.ny < 1) throw InvalidParameter("mesh needs at least one cell per axis");
    if (!(geom.x1 > geom.x0) || !(geom.y1 > geom.y0)) throw InvalidParameter("empty domain");
    cells_.assign(static_cast<std::size_t>(geom.nx + 2) * (geom.ny + 2), State::Zero());
  }

  int nx() const { return geom_.nx; }
  int ny() const { return geom_.ny; }
  double dx() const { return geom_.dx(); }
  double dy() const { return geom_.dy(); }
  const GridGeometry& geometry() const { return geom_; }
  Boundary bc_x() const { return bc_x_; }
  Boundary bc_y() const { return bc_y_; }
  double x(int i) const { return geom_.x0 + (i + 0.5) * dx(); }
  double y(int j) const { return geom_.y0 + (j + 0.5) * dy(); }

  // Cells i in [-1, nx], j in [-1, ny]; indices outside [0, n) are ghosts.
  State& operator()(int i, int j) { return cells_[index(i, j)]; }
  const State& operator()(int i, int j) const { return cells_[index(i, j)]; }

  template <typename Init>
  void fill(Init&& init) {
    for (int j = 0; j < ny(); ++j)
      for (int i = 0; i < nx(); ++i) (*this)(i, j) = init(x(i), y(j));
    fill_ghosts(true);
  }

  // Refreshes ghost cells: x faces first, then y faces including the ghost
  // corners. Fixed boundaries keep the values captured at initialization.
  void fill_ghosts(bool initial = false) {
    const int n = nx();
    const int m = ny();
    for (int j = 0; j < m; ++j) {
      fill_one(bc_x_, initial, (*this)(-1, j), (*this)(bc_x_ == Boundary::periodic ? n - 1 : 0, j));
      fill_one(bc_x_, initial, (*this)(n, j), (*this)(bc_x_ == Boundary::periodic ? 0 : n - 1, j));
    }
    for (int i = -1; i <= n; ++i) {
      fill_one(bc_y_, initial, (*this)(i, -1), (*this)(i, bc_y_ == Boundary::periodic ? m - 1 : 0));
      fill_one(bc_y_, initial, (*this)(i, m), (*this)(i, bc_y_ == Boundary::periodic ? 0 : m - 1));
    }
  }

  // Sum of each conserved component times the cell area, over real cells.
  State integral() const {
    State s = State::Zero();
    for (int j = 0; j < ny(); ++j)
      for (int i = 0; i < nx(); ++i) s += (*this)(i, j);
    return s * (dx() * dy());
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + 1) * (geom_.nx + 2) + static_cast<std::size_t>(i + 1);
  }

  static void fill_one(Boundary bc, bool initial, State& ghost, const State& source) {
    if (bc == Boundary::fixed && !initial) return;
    ghost = source;
  }

  GridGeometry geom_;
  Boundary bc_x_;
  Boundary bc_y_;
  std::vector<State> cells_;
};

struct SchemeOptions {
  BasisFunction basis = BasisFunction::hll();
  SolverMode mode = SolverMode::two_d;
  Assembly assembly = Assembly::simpson;
  bool powell = false;
  double cfl = 0.5;
  double dt_max = 1e30;
};

// Largest admissible CFL number for the mode.
inline double max_cfl(SolverMode mode) { return mode == SolverMode::two_d ? 1.0 : 0.5; }

inline void validate_cfl(SolverMode mode, double cfl) {
  if (!(cfl > 0.0) || cfl > max_cfl(mode)) {
    std::ostringstream os;
    os << "CFL number " << cfl << " outside (0, " << max_cfl(mode) << "] for "
       << (mode == SolverMode::two_d ? "2d" : "1d") << " mode";
    throw ConfigError("cfl", os.str());
  }
}

struct StepDiagnostics {
  long step = 0;
  double time = 0.0;  // time after the step
  double dt = 0.0;
  double max_speed = 0.0;
  double min_density = 0.0;
  double min_pressure = 0.0;
  double divergence_l1 = 0.0;  // MHD only
  long fallbacks = 0;
};

template <typename System>
double min_density(const Field<System>& f) {
  double v = std::numeric_limits<double>::infinity();
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) v = std::min(v, static_cast<double>(f(i, j)(0)));
  return v;
}

template <typename System>
double min_pressure(const System& sys, const Field<System>& f) {
  double v = std::numeric_limits<double>::infinity();
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) v = std::min(v, static_cast<double>(sys.pressure(f(i, j))));
  return v;
}

// Sum over real cells of |centered div B| * dx * dy, using the current ghosts.
template <typename System>
double divergence_l1(const Field<System>& f) {
  if constexpr (!System::kMagnetic) {
    throw UnsupportedSystem("divergence is defined for magnetic systems only");
  } else {
    const double dx = f.dx();
    const double dy = f.dy();
    double sum = 0.0;
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) {
        const double div = static_cast<double>(f(i + 1, j)(4) - f(i - 1, j)(4)) / (2 * dx) +
                           static_cast<double>(f(i, j + 1)(5) - f(i, j - 1)(5)) / (2 * dy);
        sum += std::abs(div);
      }
    return sum * dx * dy;
  }
}

template <typename System>
class Solver {
 public:
  using State = typename System::State;
  using Flux = NumericalFlux<System>;

  Solver(System sys, SchemeOptions opt) : sys_(std::move(sys)), opt_(std::move(opt)) {
    validate_cfl(opt_.mode, opt_.cfl);
    if (opt_.powell && !System::kMagnetic)
      throw UnsupportedSystem("Powell divergence cleaning needs a magnetic system");
    if (!(opt_.dt_max > 0.0)) throw InvalidParameter("dt_max must be positive");
  }

  const System& system() const { return sys_; }
  const SchemeOptions& options() const { return opt_; }

  // Admissible time step for the current field. Refreshes ghosts and caches
  // the edge and corner speeds for the following step().
  double cfl_dt(Field<System>& f) {
    f.fill_ghosts();
    compute_speeds(f);
    const int nx = f.nx();
    const int ny = f.ny();
    double worst = 0.0;
    max_speed_ = 0.0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        double lx = std::max(abs_max(xs(i, j)), abs_max(xs(i + 1, j)));
        double ly = std::max(abs_max(ys(i, j)), abs_max(ys(i, j + 1)));
        if (opt_.mode == SolverMode::two_d) {
          for (int cj = j; cj <= j + 1; ++cj)
            for (int ci = i; ci <= i + 1; ++ci) {
              const auto& c = corner(ci, cj);
              lx = std::max({lx, std::abs(c.left), std::abs(c.right)});
              ly = std::max({ly, std::abs(c.down), std::abs(c.up)});
            }
        }
        max_speed_ = std::max({max_speed_, lx, ly});
        worst = std::max(worst, lx / f.dx() + ly / f.dy());
      }
    if (!(worst > 0.0)) return opt_.dt_max;
    return std::min(opt_.dt_max, 2.0 * opt_.cfl / worst);
  }

  // One forward-Euler update with the given dt. Must follow cfl_dt() on the
  // same field. Throws FailedStep when a cell becomes nonphysical.
  StepDiagnostics step(Field<System>& f, double dt, double time) {
    if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
    if (xspeed_.empty()) {
      f.fill_ghosts();
      compute_speeds(f);
    }
    const int nx = f.nx();
    const int ny = f.ny();
    long fallbacks = 0;
    const bool two_d = opt_.mode == SolverMode::two_d;

    // Edge fluxes along x at (i - 1/2, j) and along y at (i, j - 1/2).
    fx_.assign(static_cast<std::size_t>((nx + 1) * ny), Flux{});
    fy_.assign(static_cast<std::size_t>(nx * (ny + 1)), Flux{});
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i <= nx; ++i)
        fx_[xi(i, j, nx)] = guarded(i, j, "x-edge", [&] {
          return edge_flux(f(i - 1, j), f(i, j), Direction::x, xs(i, j));
        });
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i < nx; ++i)
        fy_[yi(i, j, nx)] = guarded(i, j, "y-edge", [&] {
          return edge_flux(f(i, j - 1), f(i, j), Direction::y, ys(i, j));
        });

    if (two_d) {
      cx_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), Flux{});
      cy_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), Flux{});
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
          const CornerContext<System> ctx{f(i - 1, j - 1), f(i, j - 1), f(i - 1, j), f(i, j),
                                          corner(i, j),    opt_.basis,  opt_.powell};
          const std::size_t k = ci(i, j, nx);
          guarded(i, j, "corner", [&] {
            const auto cx = corner_flux(sys_, ctx, Direction::x);
            const auto cy = corner_flux(sys_, ctx, Direction::y);
            cx_[k] = cx.flux;
            cy_[k] = cy.flux;
            fallbacks += cx.fallback + cy.fallback;
            return 0;
          });
        }
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i) {
          const auto w = weights(corner(i, j + 1).down, corner(i, j).up, dt, f.dy());
          fx_[xi(i, j, nx)] = assemble(cx_[ci(i, j + 1, nx)], fx_[xi(i, j, nx)], cx_[ci(i, j, nx)], w);
        }
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const auto w = weights(corner(i + 1, j).left, corner(i, j).right, dt, f.dx());
          fy_[yi(i, j, nx)] = assemble(cy_[ci(i + 1, j, nx)], fy_[yi(i, j, nx)], cy_[ci(i, j, nx)], w);
        }
    }

    const double rx = dt / f.dx();
    const double ry = dt / f.dy();
    StepDiagnostics d;
    d.time = time + dt;
    d.dt = dt;
    d.max_speed = max_speed_;
    d.fallbacks = fallbacks;
    d.min_density = std::numeric_limits<double>::infinity();
    d.min_pressure = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        State& u = f(i, j);
        u -= rx * (fx_[xi(i + 1, j, nx)].low_side() - fx_[xi(i, j, nx)].high_side()) +
             ry * (fy_[yi(i, j + 1, nx)].low_side() - fy_[yi(i, j, nx)].high_side());
        const double rho = static_cast<double>(u(0));
        const double p = static_cast<double>(sys_.pressure(u));
        if (!(rho > 0.0) || !(p > 0.0) || !u.allFinite())
          throw FailedStep(i, j, d.time,
                           "nonphysical state at cell (" + std::to_string(i) + ", " + std::to_string(j) +
                               ") at t = " + std::to_string(d.time) + ": rho = " + std::to_string(rho) +
                               ", P = " + std::to_string(p));
        d.min_density = std::min(d.min_density, rho);
        d.min_pressure = std::min(d.min_pressure, p);
      }
    xspeed_.clear();
    f.fill_ghosts();
    if constexpr (System::kMagnetic) d.divergence_l1 = divergence_l1(f);
    return d;
  }

  struct RunOptions {
    double t_final = 0.0;
    std::vector<double> snapshot_times;
    std::function<void(const Field<System>&, double)> on_snapshot;
    std::function<void(const StepDiagnostics&)> on_step;
    long max_steps = std::numeric_limits<long>::max();
  };

  struct RunSummary {
    long steps = 0;
    double time = 0.0;
    long fallbacks = 0;
    double min_density = std::numeric_limits<double>::infinity();
    double min_pressure = std::numeric_limits<double>::infinity();
  };

  // Advances the field to t_final. Steps are clipped so that snapshot times
  // and the final time are hit exactly; a snapshot at time 0 or at t_final is
  // emitted for the initial or final field.
  RunSummary run(Field<System>& f, const RunOptions& ro) {
    if (!(ro.t_final >= 0.0)) throw InvalidParameter("final time must be nonnegative");
    std::vector<double> marks;
    for (double s : ro.snapshot_times)
      if (s >= 0.0 && s <= ro.t_final) marks.push_back(s);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    RunSummary sum;
    f.fill_ghosts();
    sum.min_density = min_density(f);
    sum.min_pressure = min_pressure(sys_, f);
    std::size_t next = 0;
    auto emit = [&](double t) {
      while (next < marks.size() && marks[next] <= t) {
        if (ro.on_snapshot) ro.on_snapshot(f, t);
        ++next;
      }
    };
    double t = 0.0;
    emit(t);
    while (t < ro.t_final) {
      if (sum.steps >= ro.max_steps) throw NumericalDegeneracy("step limit reached before final time");
      const double target = next < marks.size() ? marks[next] : ro.t_final;
      double dt = cfl_dt(f);
      bool lands = false;
      if (dt >= (target - t) * (1.0 - 1e-12)) {
        dt = target - t;
        lands = true;
      }
      auto d = step(f, dt, t);
      d.step = ++sum.steps;
      t = lands ? target : t + dt;
      d.time = t;
      sum.fallbacks += d.fallbacks;
      sum.min_density = std::min(sum.min_density, d.min_density);
      sum.min_pressure = std::min(sum.min_pressure, d.min_pressure);
      if (ro.on_step) ro.on_step(d);
      emit(t);
    }
    sum.time = t;
    return sum;
  }

 private:
  // x-edge speeds for edges i in [0, nx], rows j in [-1, ny]; y-edge speeds
  // for columns i in [-1, nx], edges j in [0, ny]; corners i, j in [0, n].
  void compute_speeds(const Field<System>& f) {
    const int nx = f.nx();
    const int ny = f.ny();
    nx_ = nx;
    xspeed_.assign(static_cast<std::size_t>((nx + 1) * (ny + 2)), SignalSpeeds{});
    yspeed_.assign(static_cast<std::size_t>((nx + 2) * (ny + 1)), SignalSpeeds{});
    for (int j = -1; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        xs(i, j) = guarded(i, j, "x-edge", [&] {
          return estimate_edge_speeds(sys_, f(i - 1, j), f(i, j), Direction::x);
        });
    for (int j = 0; j <= ny; ++j)
      for (int i = -1; i <= nx; ++i)
        ys(i, j) = guarded(i, j, "y-edge", [&] {
          return estimate_edge_speeds(sys_, f(i, j - 1), f(i, j), Direction::y);
        });
    corners_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), CornerSpeeds{});
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        corners_[ci(i, j, nx)] = corner_speeds_from_edges(xs(i, j - 1), xs(i, j), ys(i - 1, j), ys(i, j));
  }

  SignalSpeeds& xs(int i, int j) { return xspeed_[static_cast<std::size_t>(j + 1) * (nx_ + 1) + i]; }
  SignalSpeeds& ys(int i, int j) { return yspeed_[static_cast<std::size_t>(j) * (nx_ + 2) + i + 1]; }
  const CornerSpeeds& corner(int i, int j) const { return corners_[ci(i, j, nx_)]; }

  static std::size_t xi(int i, int j, int nx) { return static_cast<std::size_t>(j) * (nx + 1) + i; }
  static std::size_t yi(int i, int j, int nx) { return static_cast<std::size_t>(j) * nx + i; }
  static std::size_t ci(int i, int j, int nx) { return static_cast<std::size_t>(j) * (nx + 1) + i; }
  static double abs_max(const SignalSpeeds& s) { return std::max(std::abs(s.left), std::abs(s.right)); }

  Flux edge_flux(const State& u0, const State& u1, Direction d, const SignalSpeeds& s) const {
    EdgeFluxContext<System> ctx{u0, u1, d, opt_.basis, s, abs_max(s)};
    return avm_flux_parts(sys_, ctx, opt_.powell);
  }

  AssemblyWeights weights(double s_down_upper, double s_up_lower, double dt, double dh) const {
    if (opt_.assembly == Assembly::simpson) return AssemblyWeights::simpson();
    return AssemblyWeights::speed_weighted(s_down_upper, s_up_lower, dt, dh);
  }

  static Flux assemble(const Flux& up, const Flux& edge, const Flux& down, const AssemblyWeights& w) {
    Flux out;
    out.central = assemble_edge_flux(up.central, edge.central, down.central, w);
    out.powell = assemble_edge_flux(up.powell, edge.powell, down.powell, w);
    return out;
  }

  // Attaches the location to numerical and state errors raised inside fn.
  template <typename Fn>
  static auto guarded(int i, int j, const char* where, Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const NumericalDegeneracy& e) {
      throw NumericalDegeneracy(std::string(e.what()) + " at " + where + " (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    } catch (const InvalidState& e) {
      throw InvalidState(std::string(e.what()) + " at " + where + " (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
    }
  }

  System sys_;
  SchemeOptions opt_;
  int nx_ = 0;
  double max_speed_ = 0.0;
  std::vector<SignalSpeeds> xspeed_;
  std::vector<SignalSpeeds> yspeed_;
  std::vector<CornerSpeeds> corners_;
  std::vector<Flux> fx_, fy_, cx_, cy_;
};

}  // namespace avm
