#pragma once

#include <functional>

#include "tcflow/case_setup.hpp"

namespace tcflow {

struct StepInfo {
  double dt = 0.0;
  AdvectStats advect;
  int cfl_retries = 0;
};

// Explicit predict-project time loop of the droplet benchmark:
//   compute_dt -> advect alpha -> mixture update -> advance T
//   -> capillary force -> momentum predictor -> pressure projection
// Deterministic: fixed evaluation order, no threading.
class Simulation {
 public:
  explicit Simulation(DropletCase c)
      : case_(std::move(c)), scheme_(build_scheme(case_.config.weno_order)) {
    apply_boundary(case_.phase.alpha, case_.bc_alpha);
    apply_boundary(case_.T, case_.bc_T);
    apply_boundary(case_.momentum.u, case_.bc_u);
  }

  double time() const { return time_; }
  int step_count() const { return steps_; }
  double total_clipped_mass() const { return clipped_mass_; }
  double min_alpha_seen() const { return min_alpha_; }
  double max_alpha_seen() const { return max_alpha_; }

  const DropletCase& state() const { return case_; }
  DropletCase& state() { return case_; }
  const Grid& grid() const { return case_.grid; }

  DiagnosticsSample sample() const {
    return extract_diagnostics(time_, case_.phase.alpha, case_.momentum,
                               case_.mixture);
  }

  // Geometry and surface tension evaluated on the (optionally smoothed)
  // current alpha; exposed for diagnostics and tests.
  InterfaceGeometry geometry() const {
    ScalarField ag = smoothed_alpha();
    return make_geometry(ag, default_delta_cut(case_.grid));
  }

  StepInfo step() {
    const CaseConfig& cfg = case_.config;
    StepInfo info;
    ScalarField sig = sigma_field(case_.T, case_.surface_tension);
    double sigma_max = 0.0;
    for (int j = 0; j < case_.grid.ny; ++j)
      for (int i = 0; i < case_.grid.nx; ++i)
        sigma_max = std::max(sigma_max, sig(i, j));
    double dt = compute_dt(case_.momentum, case_.phase.alpha, case_.mixture,
                           sigma_max, cfg.cfl, cfg.dt_floor);
    if (cfg.end_time > 0.0 && time_ + dt > cfg.end_time)
      dt = cfg.end_time - time_;

    // Phase advection with step-halving on CFL rejection
    for (;;) {
      try {
        PhaseFraction trial = case_.phase;
        info.advect = advect_alpha(trial, case_.momentum.face_flux, dt,
                                   case_.bc_alpha);
        case_.phase = std::move(trial);
        break;
      } catch (const CflViolation&) {
        dt *= 0.5;
        if (++info.cfl_retries > 20 || dt < cfg.dt_floor)
          throw NumericError("time step collapsed during CFL rejection");
      }
    }
    info.dt = dt;
    clipped_mass_ += info.advect.clipped_mass;
    min_alpha_ = std::min(min_alpha_, info.advect.min_alpha);
    max_alpha_ = std::max(max_alpha_, info.advect.max_alpha);

    // Mixture properties on the new phase field
    ScalarField rho =
        mixture_property(case_.phase.alpha, case_.mixture, MixtureQuantity::rho);
    ScalarField mu =
        mixture_property(case_.phase.alpha, case_.mixture, MixtureQuantity::mu);

    case_.T = advance_temperature(case_.T, case_.momentum.face_flux,
                                  case_.phase.alpha, case_.mixture, dt, scheme_,
                                  case_.bc_T);

    // Capillary force on geometry from the smoothed phase field
    sig = sigma_field(case_.T, case_.surface_tension);
    ScalarField ag = smoothed_alpha();
    InterfaceGeometry geo = make_geometry(ag, default_delta_cut(case_.grid));
    VectorField css = css_force_divergence_form(sig, geo);
    FaceForceBalance balance = make_face_balance(ag, sig, geo, css);

    VectorField u_star = momentum_predictor(case_.momentum, rho, mu, css, dt,
                                            scheme_);
    apply_boundary(u_star, case_.bc_u);
    case_.momentum = pressure_projection(u_star, rho, dt, cfg.solver,
                                         &case_.momentum.p, &balance);
    apply_boundary(case_.momentum.u, case_.bc_u);

    time_ += dt;
    ++steps_;
    return info;
  }

  // Run until end_time; on_output fires at the configured cadence and at the
  // final step.
  void run(const std::function<void(const Simulation&, int)>& on_output = {}) {
    const double t_end = case_.config.end_time;
    if (on_output) on_output(*this, 0);
    while (time_ < t_end - 1e-15) {
      step();
      const bool last = time_ >= t_end - 1e-15;
      if (on_output && (steps_ % case_.config.write_every == 0 || last))
        on_output(*this, steps_);
    }
  }

 private:
  ScalarField smoothed_alpha() const {
    ScalarField ag = case_.phase.alpha;
    for (int p = 0; p < case_.config.geometry_smoothing; ++p) {
      ag = smooth(ag, 1);
      apply_boundary(ag, case_.bc_alpha);
    }
    return ag;
  }

  DropletCase case_;
  WenoScheme scheme_;
  double time_ = 0.0;
  int steps_ = 0;
  double clipped_mass_ = 0.0;
  double min_alpha_ = 1e300, max_alpha_ = -1e300;
};

}  // namespace tcflow
