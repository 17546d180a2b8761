#pragma once

#include <array>
#include <span>
#include <vector>

#include "tcflow/field.hpp"
#include "tcflow/operators.hpp"

namespace tcflow {

// Classical WENO-JS reconstruction of a face value from cell averages on a
// uniform grid. Candidate stencil coefficients, optimal linear weights and
// smoothness-indicator tables are built once per order and reused for every
// face evaluation. Order 1 is a plain upwind fallback.
struct WenoScheme {
  int order = 5;                    // target face accuracy: 1, 3 or 5
  int n_stencils = 3;               // (order+1)/2
  // Smoothness regularization. 1e-5 keeps the design order of the order-3
  // scheme on smooth data near critical points; the classical 1e-6 drops it
  // below second order there.
  double epsilon = 1e-5;
  // stencil[k][m]: weight of window cell (k+m) in candidate k. The window has
  // `order` cells centered on the upwind cell.
  std::vector<std::vector<double>> stencil;
  std::vector<double> linear_weights;

  int radius() const { return (order - 1) / 2; }
};

inline WenoScheme build_scheme(int order) {
  WenoScheme s;
  s.order = order;
  switch (order) {
    case 1:
      s.n_stencils = 1;
      s.stencil = {{1.0}};
      s.linear_weights = {1.0};
      break;
    case 3:
      s.n_stencils = 2;
      s.stencil = {{-0.5, 1.5}, {0.5, 0.5}};
      s.linear_weights = {1.0 / 3.0, 2.0 / 3.0};
      break;
    case 5:
      s.n_stencils = 3;
      s.stencil = {{2.0 / 6.0, -7.0 / 6.0, 11.0 / 6.0},
                   {-1.0 / 6.0, 5.0 / 6.0, 2.0 / 6.0},
                   {2.0 / 6.0, 5.0 / 6.0, -1.0 / 6.0}};
      s.linear_weights = {0.1, 0.6, 0.3};
      break;
    default:
      throw ConfigError("build_scheme: unsupported WENO order " +
                        std::to_string(order));
  }
  return s;
}

namespace detail {

// Jiang-Shu smoothness indicators for the window (length = order) whose
// upwind cell sits at position radius().
inline void smoothness(const WenoScheme& s, std::span<const double> w,
                       std::array<double, 3>& beta) {
  if (s.order == 3) {
    beta[0] = (w[1] - w[0]) * (w[1] - w[0]);
    beta[1] = (w[2] - w[1]) * (w[2] - w[1]);
  } else if (s.order == 5) {
    const double c1 = 13.0 / 12.0, c2 = 0.25;
    beta[0] = c1 * (w[0] - 2 * w[1] + w[2]) * (w[0] - 2 * w[1] + w[2]) +
              c2 * (w[0] - 4 * w[1] + 3 * w[2]) * (w[0] - 4 * w[1] + 3 * w[2]);
    beta[1] = c1 * (w[1] - 2 * w[2] + w[3]) * (w[1] - 2 * w[2] + w[3]) +
              c2 * (w[1] - w[3]) * (w[1] - w[3]);
    beta[2] = c1 * (w[2] - 2 * w[3] + w[4]) * (w[2] - 2 * w[3] + w[4]) +
              c2 * (3 * w[2] - 4 * w[3] + w[4]) * (3 * w[2] - 4 * w[3] + w[4]);
  } else {
    beta[0] = 0.0;
  }
}

}  // namespace detail

// Reconstruct the downwind face value of the window's center (upwind) cell.
// `window` holds `order` consecutive cell averages in upwind orientation: the
// face being reconstructed lies past the last half of the window. For a flux
// in -x/-y direction the caller passes the window reversed.
inline double reconstruct_face(std::span<const double> window,
                               const WenoScheme& s) {
  if (s.order == 1) return window[0];
  std::array<double, 3> beta{}, w{};
  detail::smoothness(s, window, beta);
  double wsum = 0.0;
  for (int k = 0; k < s.n_stencils; ++k) {
    const double d = beta[k] + s.epsilon;
    w[k] = s.linear_weights[k] / (d * d);
    wsum += w[k];
  }
  double value = 0.0;
  for (int k = 0; k < s.n_stencils; ++k) {
    double cand = 0.0;
    for (int m = 0; m < s.n_stencils; ++m) cand += s.stencil[k][m] * window[k + m];
    value += (w[k] / wsum) * cand;
  }
  return value;
}

// Nonlinear weights for a window, exposed for the convexity property.
inline std::array<double, 3> nonlinear_weights(std::span<const double> window,
                                               const WenoScheme& s) {
  std::array<double, 3> beta{}, w{};
  if (s.order == 1) return {1.0, 0.0, 0.0};
  detail::smoothness(s, window, beta);
  double wsum = 0.0;
  for (int k = 0; k < s.n_stencils; ++k) {
    const double d = beta[k] + s.epsilon;
    w[k] = s.linear_weights[k] / (d * d);
    wsum += w[k];
  }
  for (int k = 0; k < s.n_stencils; ++k) w[k] /= wsum;
  return w;
}

// Upwind-biased WENO face value for the x-face (i,j) given the face flux sign.
inline double weno_face_value_x(const ScalarField& phi, int i, int j,
                                double flux, const WenoScheme& s) {
  const int r = s.radius();
  double window[5];
  if (flux >= 0.0) {
    // upwind cell i-1, window i-1-r .. i-1+r
    for (int m = 0; m < s.order; ++m) window[m] = phi(i - 1 - r + m, j);
  } else {
    // upwind cell i, reversed orientation
    for (int m = 0; m < s.order; ++m) window[m] = phi(i + r - m, j);
  }
  return reconstruct_face({window, static_cast<size_t>(s.order)}, s);
}

inline double weno_face_value_y(const ScalarField& phi, int i, int j,
                                double flux, const WenoScheme& s) {
  const int r = s.radius();
  double window[5];
  if (flux >= 0.0) {
    for (int m = 0; m < s.order; ++m) window[m] = phi(i, j - 1 - r + m);
  } else {
    for (int m = 0; m < s.order; ++m) window[m] = phi(i, j + r - m);
  }
  return reconstruct_face({window, static_cast<size_t>(s.order)}, s);
}

// Divergence of the convective flux of phi: per cell, sum of (face flux *
// reconstructed upwind face value) over faces, divided by cell volume.
// face_flux holds integrated volumetric fluxes [m^3/s].
inline ScalarField convective_flux(const ScalarField& phi,
                                   const FaceField& face_flux,
                                   const WenoScheme& s) {
  const Grid& g = phi.grid();
  if (g.n_ghost < s.radius() + 1)
    throw ConfigError("convective_flux: ghost layer too thin for WENO order");
  FaceField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double q = face_flux.fx(i, j);
      f.fx(i, j) = (q == 0.0) ? 0.0 : q * weno_face_value_x(phi, i, j, q, s);
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double q = face_flux.fy(i, j);
      f.fy(i, j) = (q == 0.0) ? 0.0 : q * weno_face_value_y(phi, i, j, q, s);
    }
  return divergence(f);
}

}  // namespace tcflow
