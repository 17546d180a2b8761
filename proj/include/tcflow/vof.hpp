#pragma once

#include <algorithm>
#include <cmath>

#include "tcflow/field.hpp"
#include "tcflow/operators.hpp"

namespace tcflow {

// Phase fraction of the droplet phase plus the interface-compression factor.
// The second phase is implicit: alpha2 = 1 - alpha.
struct PhaseFraction {
  ScalarField alpha;
  double c_alpha = 1.0;
};

struct AdvectStats {
  double clipped_mass = 0.0;   // |mass| moved by conservative clipping
  double min_alpha = 0.0;      // pre-clip extrema of the accepted step
  double max_alpha = 1.0;
};

// First-order upwind advective flux; bounded under CFL <= 1 and the FCT
// low-order reference.
inline FaceField upwind_flux(const ScalarField& alpha, const FaceField& q) {
  const Grid& g = alpha.grid();
  FaceField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double qf = q.fx(i, j);
      f.fx(i, j) = qf * (qf >= 0.0 ? alpha(i - 1, j) : alpha(i, j));
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double qf = q.fy(i, j);
      f.fy(i, j) = qf * (qf >= 0.0 ? alpha(i, j - 1) : alpha(i, j));
    }
  return f;
}

inline FaceField central_flux(const ScalarField& alpha, const FaceField& q) {
  const Grid& g = alpha.grid();
  FaceField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      f.fx(i, j) = q.fx(i, j) * 0.5 * (alpha(i - 1, j) + alpha(i, j));
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      f.fy(i, j) = q.fy(i, j) * 0.5 * (alpha(i, j - 1) + alpha(i, j));
  return f;
}

// Counter-diffusive interface flux: c_alpha * |u_f| * n_f * alpha(1-alpha)
// per face, directed along the interface normal (toward the alpha-rich side).
// Vanishes in single-phase regions and for c_alpha = 0.
inline FaceField interface_compression_flux(const ScalarField& alpha,
                                            const FaceField& q,
                                            double c_alpha) {
  const Grid& g = alpha.grid();
  FaceField f(g);
  if (c_alpha == 0.0) return f;
  if (c_alpha < 0.0 || c_alpha > 2.0)
    throw ConfigError("interface_compression_flux: c_alpha must be in [0,2]");
  const double tiny = 1e-12 / std::min(g.dx, g.dy);
  auto grad_x = [&](int i, int j) {
    return (alpha(i + 1, j) - alpha(i - 1, j)) / (2.0 * g.dx);
  };
  auto grad_y = [&](int i, int j) {
    return (alpha(i, j + 1) - alpha(i, j - 1)) / (2.0 * g.dy);
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double gx = 0.5 * (grad_x(i - 1, j) + grad_x(i, j));
      const double gy = 0.5 * (grad_y(i - 1, j) + grad_y(i, j));
      const double mag = std::hypot(gx, gy);
      if (mag < tiny) continue;
      const double af = 0.5 * (alpha(i - 1, j) + alpha(i, j));
      const double uc = c_alpha * std::fabs(q.fx(i, j)) / (g.dy);  // face speed
      f.fx(i, j) = uc * (gx / mag) * g.dy * af * (1.0 - af);
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double gx = 0.5 * (grad_x(i, j - 1) + grad_x(i, j));
      const double gy = 0.5 * (grad_y(i, j - 1) + grad_y(i, j));
      const double mag = std::hypot(gx, gy);
      if (mag < tiny) continue;
      const double af = 0.5 * (alpha(i, j - 1) + alpha(i, j));
      const double uc = c_alpha * std::fabs(q.fy(i, j)) / (g.dx);
      f.fy(i, j) = uc * (gy / mag) * g.dx * af * (1.0 - af);
    }
  return f;
}

// Zalesak limiter: scales the antidiffusive correction (high - low) so the
// updated alpha stays inside the local extrema of the low-order solution,
// additionally clamped to [0,1]. Returns the limited total flux.
inline FaceField fct_limit(const FaceField& low, const FaceField& high,
                           const ScalarField& alpha, double dt) {
  const Grid& g = alpha.grid();
  const double vol = g.cell_volume();

  // Antidiffusive flux
  FaceField anti(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) anti.fx(i, j) = high.fx(i, j) - low.fx(i, j);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) anti.fy(i, j) = high.fy(i, j) - low.fy(i, j);

  // Transported-diffused (low-order) solution
  ScalarField td = alpha;
  {
    ScalarField dl = divergence(low);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) td(i, j) = alpha(i, j) - dt * dl(i, j);
  }

  auto at = [&](const ScalarField& s, int i, int j) { return s(i, j); };
  ScalarField rp(g, 1.0), rm(g, 1.0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double amax = std::max(at(alpha, i, j), at(td, i, j));
      double amin = std::min(at(alpha, i, j), at(td, i, j));
      const int di[4] = {-1, 1, 0, 0};
      const int dj[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        amax = std::max(amax, alpha(ii, jj));
        amin = std::min(amin, alpha(ii, jj));
        if (ii >= 0 && ii < g.nx && jj >= 0 && jj < g.ny) {
          amax = std::max(amax, td(ii, jj));
          amin = std::min(amin, td(ii, jj));
        }
      }
      amax = std::min(amax, 1.0);
      amin = std::max(amin, 0.0);

      const double pin = std::max(0.0, anti.fx(i, j)) -
                         std::min(0.0, anti.fx(i + 1, j)) +
                         std::max(0.0, anti.fy(i, j)) -
                         std::min(0.0, anti.fy(i, j + 1));
      const double pout = std::max(0.0, anti.fx(i + 1, j)) -
                          std::min(0.0, anti.fx(i, j)) +
                          std::max(0.0, anti.fy(i, j + 1)) -
                          std::min(0.0, anti.fy(i, j));
      const double qin = (amax - td(i, j)) * vol / dt;
      const double qout = (td(i, j) - amin) * vol / dt;
      rp(i, j) = pin > 0.0 ? std::clamp(qin / pin, 0.0, 1.0) : 1.0;
      rm(i, j) = pout > 0.0 ? std::clamp(qout / pout, 0.0, 1.0) : 1.0;
    }

  FaceField out(g);
  auto rp_at = [&](int i, int j) {
    return (i >= 0 && i < g.nx && j >= 0 && j < g.ny) ? rp(i, j) : 1.0;
  };
  auto rm_at = [&](int i, int j) {
    return (i >= 0 && i < g.nx && j >= 0 && j < g.ny) ? rm(i, j) : 1.0;
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      const double a = anti.fx(i, j);
      const double c = a >= 0.0 ? std::min(rp_at(i, j), rm_at(i - 1, j))
                                : std::min(rp_at(i - 1, j), rm_at(i, j));
      out.fx(i, j) = low.fx(i, j) + c * a;
    }
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double a = anti.fy(i, j);
      const double c = a >= 0.0 ? std::min(rp_at(i, j), rm_at(i, j - 1))
                                : std::min(rp_at(i, j - 1), rm_at(i, j));
      out.fy(i, j) = low.fy(i, j) + c * a;
    }
  return out;
}

// One bounded, conservative transport step of the phase fraction. face_flux
// carries integrated volumetric face fluxes [m^3/s]; it must be discretely
// divergence-free for exact boundedness. Throws CflViolation above CFL 0.5.
inline AdvectStats advect_alpha(PhaseFraction& pf, const FaceField& q,
                                double dt, const BcSet& bc) {
  ScalarField& alpha = pf.alpha;
  const Grid& g = alpha.grid();
  const double vol = g.cell_volume();

  // CFL check on outflow sum per cell
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double outflow = std::max(0.0, q.fx(i + 1, j)) -
                             std::min(0.0, q.fx(i, j)) +
                             std::max(0.0, q.fy(i, j + 1)) -
                             std::min(0.0, q.fy(i, j));
      if (outflow * dt / vol > 0.5 + 1e-12)
        throw CflViolation("advect_alpha: CFL exceeds 0.5 at cell (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }

  apply_boundary(alpha, bc);
  FaceField low = upwind_flux(alpha, q);
  FaceField high = central_flux(alpha, q);
  FaceField comp = interface_compression_flux(alpha, q, pf.c_alpha);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) high.fx(i, j) += comp.fx(i, j);
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) high.fy(i, j) += comp.fy(i, j);

  FaceField limited = fct_limit(low, high, alpha, dt);
  ScalarField dv = divergence(limited);

  AdvectStats stats;
  stats.min_alpha = 1e300;
  stats.max_alpha = -1e300;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      alpha(i, j) -= dt * dv(i, j);
      stats.min_alpha = std::min(stats.min_alpha, alpha(i, j));
      stats.max_alpha = std::max(stats.max_alpha, alpha(i, j));
    }

  // Conservative clip: roundoff-level overshoots are clipped and the same
  // mass is removed from / added to interface cells with headroom.
  double residual = 0.0;  // mass (alpha*V) taken out by clipping
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (alpha(i, j) < 0.0) {
        residual += alpha(i, j) * vol;
        alpha(i, j) = 0.0;
      } else if (alpha(i, j) > 1.0) {
        residual += (alpha(i, j) - 1.0) * vol;
        alpha(i, j) = 1.0;
      }
    }
  stats.clipped_mass = std::fabs(residual);
  if (residual != 0.0) {
    double headroom = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double a = alpha(i, j);
        if (a > 1e-6 && a < 1.0 - 1e-6)
          headroom += residual > 0.0 ? (1.0 - a) : a;
      }
    if (headroom > 0.0) {
      const double scale = residual / (headroom * vol);
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const double a = alpha(i, j);
          if (a > 1e-6 && a < 1.0 - 1e-6)
            alpha(i, j) += scale * (residual > 0.0 ? (1.0 - a) : a);
        }
    }
  }
  apply_boundary(alpha, bc);
  return stats;
}

}  // namespace tcflow
