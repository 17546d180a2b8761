#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tcflow/capillary.hpp"
#include "tcflow/field.hpp"
#include "tcflow/flow.hpp"
#include "tcflow/thermo.hpp"
#include "tcflow/vof.hpp"

namespace tcflow {

// Full parameter set of the thermocapillary droplet benchmark: a droplet of
// radius `radius` centered in a 4a x 4a box, vertical temperature gradient
// fixed by Dirichlet walls at bottom and top, no-slip velocity everywhere.
struct CaseConfig {
  int nx = 100, ny = 100;
  double radius = 1.44e-3;          // [m], domain edge = 4 * radius
  double domain_factor = 4.0;

  PhaseProperties phase1{250.0, 0.012, 5e-5, 1.2e-6};       // surrounding
  PhaseProperties phase2{500.0, 0.024, 1e-4, 2.4e-6};       // droplet
  double sigma0 = 0.1;              // [N/m]
  // d(sigma)/dT: negative, tension drops with temperature, so the droplet
  // migrates toward the hot wall.
  double sigma_T = -0.02;           // [N/(m K)]
  double t_bottom = 290.0;          // [K]
  double t_gradient = 200.0;        // [K/m]

  double end_time = 0.12;           // [s]
  double cfl = 0.8;
  double dt_floor = 1e-12;

  int weno_order = 5;
  double c_alpha = 1.0;
  int geometry_smoothing = 2;       // smoothing passes on alpha before CSS

  int write_every = 500;            // output cadence in steps
  LinearSolverConfig solver;

  void validate() const {
    if (!(radius > 0.0)) throw ConfigError("CaseConfig: radius must be > 0");
    if (nx < 4 || ny < 4) throw ConfigError("CaseConfig: grid too small");
    if (!(end_time >= 0.0)) throw ConfigError("CaseConfig: end_time must be >= 0");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CaseConfig: cfl in (0,1]");
    if (weno_order != 1 && weno_order != 3 && weno_order != 5)
      throw ConfigError("CaseConfig: weno_order must be 1, 3 or 5");
    if (c_alpha < 0.0 || c_alpha > 2.0)
      throw ConfigError("CaseConfig: c_alpha must be in [0,2]");
    if (write_every < 1) throw ConfigError("CaseConfig: write_every >= 1");
    phase1.validate();
    phase2.validate();
    solver.validate();
  }

  double t_top() const {
    return t_bottom + t_gradient * domain_factor * radius;
  }
};

// Assembled initial state plus the models and boundary tables of the case.
struct DropletCase {
  Grid grid;
  PhaseFraction phase;
  ScalarField T;
  MomentumState momentum;
  MixtureModel mixture;
  SurfaceTensionModel surface_tension;
  BcSet bc_alpha, bc_T;
  VectorBcSet bc_u;
  CaseConfig config;
};

// Area fraction of a circle inside one cell via 4x4 sub-sampling.
inline double circle_cell_fraction(double xc, double yc, double dx, double dy,
                                   double cx, double cy, double r) {
  const int n = 4;
  int inside = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double x = xc - 0.5 * dx + (a + 0.5) * dx / n;
      const double y = yc - 0.5 * dy + (b + 0.5) * dy / n;
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) ++inside;
    }
  return double(inside) / double(n * n);
}

inline DropletCase build_droplet_case(const CaseConfig& cfg) {
  cfg.validate();
  DropletCase c;
  c.config = cfg;
  const double L = cfg.domain_factor * cfg.radius;
  const int ng = std::max(3, (cfg.weno_order + 1) / 2);
  c.grid = build_grid(cfg.nx, cfg.ny, L, L, ng);

  c.phase.alpha = ScalarField(c.grid);
  c.phase.c_alpha = cfg.c_alpha;
  const double cx = 0.5 * L, cy = 0.5 * L;
  for (int j = 0; j < c.grid.ny; ++j)
    for (int i = 0; i < c.grid.nx; ++i)
      c.phase.alpha(i, j) = circle_cell_fraction(
          c.grid.xc(i), c.grid.yc(j), c.grid.dx, c.grid.dy, cx, cy, cfg.radius);

  c.T = ScalarField(c.grid);
  for (int j = 0; j < c.grid.ny; ++j)
    for (int i = 0; i < c.grid.nx; ++i)
      c.T(i, j) = cfg.t_bottom + cfg.t_gradient * c.grid.yc(j);

  c.momentum = MomentumState(c.grid);
  c.mixture = MixtureModel{cfg.phase1, cfg.phase2};
  c.surface_tension = SurfaceTensionModel{cfg.sigma0, cfg.sigma_T, cfg.t_bottom};

  c.bc_alpha = BcSet::all_zero_gradient();
  c.bc_T = BcSet{BoundaryCondition::neumann(0.0), BoundaryCondition::neumann(0.0),
                 BoundaryCondition::dirichlet(cfg.t_bottom),
                 BoundaryCondition::dirichlet(cfg.t_top())};
  c.bc_u = VectorBcSet::all_no_slip();

  apply_boundary(c.phase.alpha, c.bc_alpha);
  apply_boundary(c.T, c.bc_T);
  apply_boundary(c.momentum.u, c.bc_u);
  return c;
}

// One diagnostics sample; transition width is absent when no interface exists.
struct DiagnosticsSample {
  double t = 0.0;
  double mass = 0.0;               // total phase mass Sum(alpha V)
  double max_u = 0.0;              // [m/s]
  double centroid_x = 0.0, centroid_y = 0.0;
  double kinetic_energy = 0.0;     // [J] per unit depth
  std::optional<double> transition_width_cells;  // along the top-left diagonal
  double vorticity_left = 0.0, vorticity_right = 0.0;  // half-domain integrals
};

struct Diagnostics {
  std::vector<DiagnosticsSample> samples;
};

// Bilinear sample of a cell-centered field at a physical point (ghosts used
// near the boundary).
inline double sample_bilinear(const ScalarField& s, double x, double y) {
  const Grid& g = s.grid();
  const double fi = (x - g.x0) / g.dx - 0.5;
  const double fj = (y - g.y0) / g.dy - 0.5;
  int i0 = static_cast<int>(std::floor(fi));
  int j0 = static_cast<int>(std::floor(fj));
  i0 = std::clamp(i0, -g.n_ghost, g.nx + g.n_ghost - 2);
  j0 = std::clamp(j0, -g.n_ghost, g.ny + g.n_ghost - 2);
  const double tx = fi - i0, ty = fj - j0;
  return (1 - tx) * (1 - ty) * s(i0, j0) + tx * (1 - ty) * s(i0 + 1, j0) +
         (1 - tx) * ty * s(i0, j0 + 1) + tx * ty * s(i0 + 1, j0 + 1);
}

// Alpha profile along the diagonal from the top-left to the bottom-right
// corner, sampled bilinearly. Returns (arclength, alpha) pairs.
inline std::vector<std::pair<double, double>> diagonal_profile(
    const ScalarField& alpha, int samples_per_cell = 8) {
  const Grid& g = alpha.grid();
  const int n = samples_per_cell * std::max(g.nx, g.ny);
  const double len = std::hypot(g.lx(), g.ly());
  std::vector<std::pair<double, double>> prof;
  prof.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double s = double(k) / n;
    const double x = g.x0 + s * g.lx();
    const double y = g.y0 + g.ly() - s * g.ly();
    prof.emplace_back(s * len, sample_bilinear(alpha, x, y));
  }
  return prof;
}

// Arclength between the 0.05 and 0.95 crossings, in units of the cell
// diagonal. Each edge is bracketed by its innermost crossing pair: the last
// departure from one level before the first arrival at the other. For a
// monotone edge this equals the plain crossing distance; for a slice that
// grazes the transition band obliquely it keeps near-level wiggles from
// inflating the result. When the profile has both a rising and a falling
// edge the wider one is reported.
inline std::optional<double> transition_width_cells(
    const std::vector<std::pair<double, double>>& prof, double dx, double dy) {
  const double lo = 0.05, hi = 0.95;
  auto crossings = [&](double level, bool rising) {
    std::vector<double> out;
    for (size_t k = 0; k + 1 < prof.size(); ++k) {
      const double a = prof[k].second, b = prof[k + 1].second;
      if ((rising && a < level && b >= level) ||
          (!rising && a > level && b <= level)) {
        const double t = (level - a) / (b - a);
        out.push_back(prof[k].first + t * (prof[k + 1].first - prof[k].first));
      }
    }
    return out;
  };
  const double h = std::hypot(dx, dy);
  double widest = -1.0;
  // rising edge: first arrival at hi, last prior departure from lo
  {
    const auto up_hi = crossings(hi, true), up_lo = crossings(lo, true);
    if (!up_hi.empty()) {
      const double s_hi = up_hi.front();
      double s_lo = -1.0;
      for (double s : up_lo)
        if (s < s_hi) s_lo = std::max(s_lo, s);
      if (s_lo >= 0.0) widest = std::max(widest, (s_hi - s_lo) / h);
    }
  }
  // falling edge: first arrival at lo, last prior departure from hi
  {
    const auto dn_lo = crossings(lo, false), dn_hi = crossings(hi, false);
    for (double s_lo : dn_lo) {
      double s_hi = -1.0;
      for (double s : dn_hi)
        if (s < s_lo) s_hi = std::max(s_hi, s);
      if (s_hi >= 0.0) {
        widest = std::max(widest, (s_lo - s_hi) / h);
        break;
      }
    }
  }
  if (widest < 0.0) return std::nullopt;
  return widest;
}

inline DiagnosticsSample extract_diagnostics(double t, const ScalarField& alpha,
                                             const MomentumState& mom,
                                             const MixtureModel& mix) {
  const Grid& g = alpha.grid();
  DiagnosticsSample s;
  s.t = t;
  double m = 0.0, mx = 0.0, my = 0.0, ke = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double a = alpha(i, j);
      m += a;
      mx += a * g.xc(i);
      my += a * g.yc(j);
      const double ux = mom.u.x(i, j), uy = mom.u.y(i, j);
      s.max_u = std::max(s.max_u, std::hypot(ux, uy));
      ke += 0.5 * mix.value(a, MixtureQuantity::rho) * (ux * ux + uy * uy);
    }
  const double vol = g.cell_volume();
  s.mass = m * vol;
  s.centroid_x = m > 0.0 ? mx / m : 0.0;
  s.centroid_y = m > 0.0 ? my / m : 0.0;
  s.kinetic_energy = ke * vol;
  s.transition_width_cells =
      transition_width_cells(diagonal_profile(alpha), g.dx, g.dy);
  // Half-domain vorticity integrals (central differences)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double w = (mom.u.y(i + 1, j) - mom.u.y(i - 1, j)) / (2.0 * g.dx) -
                       (mom.u.x(i, j + 1) - mom.u.x(i, j - 1)) / (2.0 * g.dy);
      if (g.xc(i) < g.x0 + 0.5 * g.lx())
        s.vorticity_left += w * vol;
      else
        s.vorticity_right += w * vol;
    }
  return s;
}

}  // namespace tcflow
