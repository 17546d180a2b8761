#pragma once

#include <cmath>

#include "tcflow/field.hpp"
#include "tcflow/operators.hpp"

namespace tcflow {

// Linear surface tension law sigma(T) = sigma0 + sigma_T (T - T_ref).
struct SurfaceTensionModel {
  double sigma0 = 0.1;    // [N/m] at T_ref
  double sigma_T = 0.0;   // [N/(m K)]
  double t_ref = 290.0;   // [K]

  double sigma(double T) const { return sigma0 + sigma_T * (T - t_ref); }
};

// Interface delta, unit normal and curvature derived from one alpha field.
struct InterfaceGeometry {
  ScalarField delta_s;   // [1/m]
  VectorField normal;    // unit where delta_s > cutoff, zero elsewhere
  ScalarField kappa;     // [1/m], meaningful in the interface band
  double delta_cut = 0.0;
};

// delta_s = |grad alpha|; zero in single-phase regions.
inline ScalarField interface_delta(const ScalarField& alpha) {
  const Grid& g = alpha.grid();
  VectorField gr = gradient(alpha);
  ScalarField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = std::hypot(gr.x(i, j), gr.y(i, j));
  return out;
}

// n = grad(alpha)/delta_s above the cutoff, zero vector below it.
inline VectorField interface_normal(const ScalarField& alpha,
                                    const ScalarField& delta_s,
                                    double delta_cut) {
  const Grid& g = alpha.grid();
  VectorField gr = gradient(alpha);
  VectorField n(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double d = delta_s(i, j);
      if (d > delta_cut) {
        n.x(i, j) = gr.x(i, j) / d;
        n.y(i, j) = gr.y(i, j) / d;
      }
    }
  return n;
}

// kappa = -div(n), with one smoothing pass over the normals and
// renormalization before taking the divergence. Values outside the interface
// band carry no meaning.
inline ScalarField curvature(const VectorField& normal) {
  const Grid& g = normal.grid();
  VectorField ns(g);
  ns.x = smooth(normal.x, 1);
  ns.y = smooth(normal.y, 1);
  apply_boundary(ns.x, BcSet::all_zero_gradient());
  apply_boundary(ns.y, BcSet::all_zero_gradient());
  for (int j = -1; j <= g.ny; ++j)
    for (int i = -1; i <= g.nx; ++i) {
      const double m = std::hypot(ns.x(i, j), ns.y(i, j));
      if (m > 1e-8) {
        ns.x(i, j) /= m;
        ns.y(i, j) /= m;
      }
    }
  ScalarField div_n = divergence(ns);
  ScalarField k(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) k(i, j) = -div_n(i, j);
  return k;
}

// Local surface tension coefficient as a field of its own; errors out if the
// linear law leaves the physical range.
inline ScalarField sigma_field(const ScalarField& T,
                               const SurfaceTensionModel& model) {
  const Grid& g = T.grid();
  ScalarField s(g);
  for (int j = -g.n_ghost; j < g.ny + g.n_ghost; ++j)
    for (int i = -g.n_ghost; i < g.nx + g.n_ghost; ++i) {
      const double v = model.sigma(T(i, j));
      s(i, j) = v;
    }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (s(i, j) < 0.0)
        throw ConfigError("sigma_field: negative surface tension at cell (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
  return s;
}

inline InterfaceGeometry make_geometry(const ScalarField& alpha,
                                       double delta_cut) {
  InterfaceGeometry geo;
  geo.delta_cut = delta_cut;
  geo.delta_s = interface_delta(alpha);
  geo.normal = interface_normal(alpha, geo.delta_s, delta_cut);
  geo.kappa = curvature(geo.normal);
  return geo;
}

// Default cutoff below which normals and curvature are zeroed.
inline double default_delta_cut(const Grid& g) { return 1e-8 / g.dx; }

// Split form of the capillary force density [N/m^3]: tangential Marangoni
// part delta_s (I - n n) grad(sigma) plus normal part sigma kappa n delta_s.
// The normal part pulls a droplet interface toward its center of curvature,
// raising the interior pressure by sigma/a in equilibrium.
inline VectorField css_force(const ScalarField& sigma,
                             const InterfaceGeometry& geo) {
  const Grid& g = sigma.grid();
  VectorField gs = gradient(sigma);
  VectorField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double d = geo.delta_s(i, j);
      if (d <= geo.delta_cut) continue;
      const double nx = geo.normal.x(i, j), ny = geo.normal.y(i, j);
      const double gx = gs.x(i, j), gy = gs.y(i, j);
      const double gn = gx * nx + gy * ny;
      const double tx = gx - gn * nx;  // tangential projection of grad(sigma)
      const double ty = gy - gn * ny;
      const double s = sigma(i, j);
      const double kn = s * geo.kappa(i, j) * d;
      f.x(i, j) = d * tx + kn * nx;
      f.y(i, j) = d * ty + kn * ny;
    }
  return f;
}

// Conservative form: the force is the divergence of the capillary stress
// sigma delta_s (I - n n), assembled at faces by linear interpolation of the
// cell tensor. Interior face contributions telescope, so the global force sum
// vanishes for a closed interface away from the walls.
inline VectorField css_force_divergence_form(const ScalarField& sigma,
                                             const InterfaceGeometry& geo) {
  const Grid& g = sigma.grid();
  // Cell tensor components; ghosts stay zero (delta_s is zero there for any
  // interface away from the boundary).
  ScalarField txx(g), txy(g), tyy(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double d = geo.delta_s(i, j);
      if (d <= geo.delta_cut) continue;
      const double s = sigma(i, j);
      const double nx = geo.normal.x(i, j), ny = geo.normal.y(i, j);
      txx(i, j) = s * d * (1.0 - nx * nx);
      txy(i, j) = s * d * (-nx * ny);
      tyy(i, j) = s * d * (1.0 - ny * ny);
    }
  VectorField f(g);
  auto favg = [](double a, double b) { return 0.5 * (a + b); };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double txx_e = favg(txx(i, j), txx(i + 1, j));
      const double txx_w = favg(txx(i - 1, j), txx(i, j));
      const double txy_n = favg(txy(i, j), txy(i, j + 1));
      const double txy_s = favg(txy(i, j - 1), txy(i, j));
      const double txy_e = favg(txy(i, j), txy(i + 1, j));
      const double txy_w = favg(txy(i - 1, j), txy(i, j));
      const double tyy_n = favg(tyy(i, j), tyy(i, j + 1));
      const double tyy_s = favg(tyy(i, j - 1), tyy(i, j));
      f.x(i, j) = (txx_e - txx_w) / g.dx + (txy_n - txy_s) / g.dy;
      f.y(i, j) = (txy_e - txy_w) / g.dx + (tyy_n - tyy_s) / g.dy;
    }
  return f;
}

}  // namespace tcflow
