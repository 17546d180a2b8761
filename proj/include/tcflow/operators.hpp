#pragma once

#include <cmath>

#include "tcflow/field.hpp"

namespace tcflow {

// Second-order central gradient at cell centers. Reads ghosts; callers refresh
// boundaries first. Exact for globally linear fields.
inline VectorField gradient(const ScalarField& s) {
  const Grid& g = s.grid();
  VectorField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      out.x(i, j) = (s(i + 1, j) - s(i - 1, j)) / (2.0 * g.dx);
      out.y(i, j) = (s(i, j + 1) - s(i, j - 1)) / (2.0 * g.dy);
    }
  return out;
}

// Central divergence of a cell-centered vector.
inline ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  ScalarField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (v.x(i + 1, j) - v.x(i - 1, j)) / (2.0 * g.dx) +
                  (v.y(i, j + 1) - v.y(i, j - 1)) / (2.0 * g.dy);
  return out;
}

// Divergence of integrated face fluxes [units*m^3/s]: outflow sum over the
// four faces divided by cell volume. Interior faces telescope exactly, so the
// global volume-weighted sum equals the net boundary flux.
inline ScalarField divergence(const FaceField& flux) {
  const Grid& g = flux.grid();
  const double inv_v = 1.0 / g.cell_volume();
  ScalarField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = (flux.fx(i + 1, j) - flux.fx(i, j) + flux.fy(i, j + 1) -
                   flux.fy(i, j)) * inv_v;
  return out;
}

enum class FaceInterp { linear, harmonic };

inline double face_mean(double a, double b, FaceInterp mode) {
  if (mode == FaceInterp::linear) return 0.5 * (a + b);
  if (a == 0.0 || b == 0.0)
    throw ConfigError("interpolate_to_faces: harmonic mean of a zero value");
  return 2.0 * a * b / (a + b);
}

inline FaceField interpolate_to_faces(const ScalarField& s, FaceInterp mode) {
  const Grid& g = s.grid();
  FaceField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      out.fx(i, j) = face_mean(s(i - 1, j), s(i, j), mode);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out.fy(i, j) = face_mean(s(i, j - 1), s(i, j), mode);
  return out;
}

// Conservative div(coeff grad s) with harmonically averaged face coefficients
// (flux continuity across material jumps). coeff must be positive.
inline ScalarField laplacian(const ScalarField& s, const ScalarField& coeff) {
  const Grid& g = s.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (!(coeff(i, j) > 0.0))
        throw ConfigError("laplacian: diffusion coefficient must be positive");
  FaceField flux(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double cw = coeff(i - 1, j), ce = coeff(i, j);
      const double cf = (cw > 0.0 && ce > 0.0) ? 2.0 * cw * ce / (cw + ce)
                                               : 0.5 * (cw + ce);
      flux.fx(i, j) = cf * (s(i, j) - s(i - 1, j)) / g.dx * g.dy;
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double cs = coeff(i, j - 1), cn = coeff(i, j);
      const double cf = (cs > 0.0 && cn > 0.0) ? 2.0 * cs * cn / (cs + cn)
                                               : 0.5 * (cs + cn);
      flux.fy(i, j) = cf * (s(i, j) - s(i, j - 1)) / g.dy * g.dx;
    }
  return divergence(flux);
}

// Laplacian with unit coefficient.
inline ScalarField laplacian(const ScalarField& s) {
  ScalarField one(s.grid(), 1.0);
  return laplacian(s, one);
}

// One pass of a 3x3 volume-weighted average (uniform grid: plain 9-cell mean).
// Interior only; ghosts of the result are left to the caller's BC refresh.
inline ScalarField smooth(const ScalarField& s, int passes = 1) {
  ScalarField cur = s;
  for (int p = 0; p < passes; ++p) {
    const Grid& g = cur.grid();
    ScalarField nxt = cur;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double sum = 0.0;
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) sum += cur(i + di, j + dj);
        nxt(i, j) = sum / 9.0;
      }
    cur = nxt;
  }
  return cur;
}

// Volume-weighted sum of a scalar over the interior.
inline double integrate(const ScalarField& s) {
  const Grid& g = s.grid();
  double sum = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) sum += s(i, j);
  return sum * g.cell_volume();
}

}  // namespace tcflow
