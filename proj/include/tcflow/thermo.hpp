#pragma once

#include <algorithm>
#include <cmath>

#include "tcflow/field.hpp"
#include "tcflow/operators.hpp"
#include "tcflow/weno.hpp"

namespace tcflow {

// Per-phase material constants.
struct PhaseProperties {
  double rho = 1.0;      // [kg/m^3]
  double mu = 1.0;       // [kg/(m s)]
  double cp = 1.0;       // [J/(kg K)]
  double lambda = 1.0;   // [W/(m K)]

  void validate() const {
    if (!(rho > 0.0 && mu > 0.0 && cp > 0.0 && lambda > 0.0))
      throw ConfigError("PhaseProperties: all properties must be positive");
  }
};

enum class MixtureQuantity { rho, mu, rho_cp, lambda };

// alpha-weighted one-field mixture: alpha = 1 is phase 2 (droplet),
// alpha = 0 is phase 1 (surrounding medium). Endpoints are exact.
struct MixtureModel {
  PhaseProperties phase1, phase2;

  double blend(double alpha, double v1, double v2) const {
    return alpha * v2 + (1.0 - alpha) * v1;
  }

  double value(double alpha, MixtureQuantity q) const {
    switch (q) {
      case MixtureQuantity::rho: return blend(alpha, phase1.rho, phase2.rho);
      case MixtureQuantity::mu: return blend(alpha, phase1.mu, phase2.mu);
      case MixtureQuantity::rho_cp:
        return blend(alpha, phase1.rho * phase1.cp, phase2.rho * phase2.cp);
      default: return blend(alpha, phase1.lambda, phase2.lambda);
    }
  }

  // Explicit-diffusion stability data
  double max_thermal_diffusivity() const {
    return std::max(phase1.lambda / (phase1.rho * phase1.cp),
                    phase2.lambda / (phase2.rho * phase2.cp));
  }
  double max_kinematic_viscosity() const {
    return std::max(phase1.mu / phase1.rho, phase2.mu / phase2.rho);
  }
};

// Cell-wise mixture property incl. ghosts (alpha ghosts must be current).
inline ScalarField mixture_property(const ScalarField& alpha,
                                    const MixtureModel& m, MixtureQuantity q) {
  const Grid& g = alpha.grid();
  ScalarField out(g);
  for (int j = -g.n_ghost; j < g.ny + g.n_ghost; ++j)
    for (int i = -g.n_ghost; i < g.nx + g.n_ghost; ++i)
      out(i, j) = m.value(alpha(i, j), q);
  return out;
}

// Explicit advection-diffusion step for temperature:
//   rho cp (dT/dt + u . grad T) = div(lambda grad T)
// WENO convective flux on the divergence-free face flux, conservative
// diffusion with harmonic face lambda. Throws CflViolation if dt violates the
// explicit diffusive bound.
inline ScalarField advance_temperature(const ScalarField& T,
                                       const FaceField& face_flux,
                                       const ScalarField& alpha,
                                       const MixtureModel& mix, double dt,
                                       const WenoScheme& scheme,
                                       const BcSet& bc_T) {
  const Grid& g = T.grid();
  const double kappa_max = mix.max_thermal_diffusivity();
  const double dt_diff = 1.0 / (4.0 * kappa_max *
                                (1.0 / (g.dx * g.dx) + 1.0 / (g.dy * g.dy)) * 0.5);
  if (dt > dt_diff * (1.0 + 1e-12))
    throw CflViolation("advance_temperature: dt exceeds explicit diffusion limit");

  ScalarField rho_cp = mixture_property(alpha, mix, MixtureQuantity::rho_cp);
  ScalarField lam = mixture_property(alpha, mix, MixtureQuantity::lambda);

  ScalarField conv = convective_flux(T, face_flux, scheme);
  ScalarField diff = laplacian(T, lam);

  ScalarField out = T;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out(i, j) = T(i, j) + dt * (-conv(i, j) + diff(i, j) / rho_cp(i, j));
  apply_boundary(out, bc_T);
  out.check_finite("temperature");
  return out;
}

}  // namespace tcflow
