#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tcflow/capillary.hpp"
#include "tcflow/field.hpp"
#include "tcflow/operators.hpp"
#include "tcflow/thermo.hpp"
#include "tcflow/weno.hpp"

namespace tcflow {

// Velocity, pressure and the projected face flux of one time level.
struct MomentumState {
  VectorField u;       // [m/s], cell centered
  ScalarField p;       // [Pa]
  FaceField face_flux; // [m^3/s] per face, divergence-free after projection

  MomentumState() = default;
  explicit MomentumState(const Grid& g) : u(g), p(g), face_flux(g) {}
};

enum class LinearSolverMethod { cg, bicgstab };

struct LinearSolverConfig {
  LinearSolverMethod method = LinearSolverMethod::cg;
  // Relative residual. The FCT boundedness guarantee assumes solenoidal face
  // fluxes, so the projection residual must stay below the round-off budget
  // of the phase fraction: pre-clip overshoot scales like dt * residual / V.
  double tol = 1e-10;
  int max_iter = 2000;

  void validate() const {
    if (!(tol > 0.0 && tol < 1.0))
      throw ConfigError("LinearSolverConfig: tol must be in (0,1)");
    if (max_iter < 1) throw ConfigError("LinearSolverConfig: max_iter >= 1");
  }
};

// Explicit momentum predictor: WENO convection on the divergence-free face
// flux, conservative viscous term with harmonic face viscosity, capillary
// force as a volumetric source. No gravity.
inline VectorField momentum_predictor(const MomentumState& state,
                                      const ScalarField& rho,
                                      const ScalarField& mu,
                                      const VectorField& css, double dt,
                                      const WenoScheme& scheme) {
  const Grid& g = state.u.grid();
  ScalarField conv_x = convective_flux(state.u.x, state.face_flux, scheme);
  ScalarField conv_y = convective_flux(state.u.y, state.face_flux, scheme);
  ScalarField visc_x = laplacian(state.u.x, mu);
  ScalarField visc_y = laplacian(state.u.y, mu);
  VectorField us(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double r = rho(i, j);
      us.x(i, j) = state.u.x(i, j) +
                   dt * (-conv_x(i, j) + (visc_x(i, j) + css.x(i, j)) / r);
      us.y(i, j) = state.u.y(i, j) +
                   dt * (-conv_y(i, j) + (visc_y(i, j) + css.y(i, j)) / r);
    }
  us.check_finite("momentum predictor");
  return us;
}

namespace detail {

// Matrix-free application of the variable-coefficient pressure operator
// A p = -div( coef_f grad p ) with zero-flux (wall) boundaries. coef holds
// dt/rho at faces times face area / distance, prebuilt by the caller.
struct PoissonOperator {
  const Grid* g;
  FaceField coef;  // a_f = A_face / (rho_f * d); boundary faces zero

  void apply(const ScalarField& p, ScalarField& out) const {
    for (int j = 0; j < g->ny; ++j)
      for (int i = 0; i < g->nx; ++i) {
        double acc = 0.0, diag = 0.0;
        const double aw = coef.fx(i, j), ae = coef.fx(i + 1, j);
        const double as = coef.fy(i, j), an = coef.fy(i, j + 1);
        if (i > 0) { acc += aw * p(i - 1, j); diag += aw; }
        if (i < g->nx - 1) { acc += ae * p(i + 1, j); diag += ae; }
        if (j > 0) { acc += as * p(i, j - 1); diag += as; }
        if (j < g->ny - 1) { acc += an * p(i, j + 1); diag += an; }
        out(i, j) = diag * p(i, j) - acc;
      }
  }

  double diagonal(int i, int j) const {
    double d = 0.0;
    if (i > 0) d += coef.fx(i, j);
    if (i < g->nx - 1) d += coef.fx(i + 1, j);
    if (j > 0) d += coef.fy(i, j);
    if (j < g->ny - 1) d += coef.fy(i, j + 1);
    return d;
  }
};

inline double dot_interior(const ScalarField& a, const ScalarField& b) {
  const Grid& g = a.grid();
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s += a(i, j) * b(i, j);
  return s;
}

inline void remove_mean(ScalarField& s) {
  const Grid& g = s.grid();
  double m = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) m += s(i, j);
  m /= double(g.nx) * double(g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s(i, j) -= m;
}

// Jacobi-preconditioned CG on the singular Neumann problem; RHS and iterates
// are kept mean-free.
inline int solve_poisson(const PoissonOperator& op, const ScalarField& rhs_in,
                         ScalarField& p, const LinearSolverConfig& cfg,
                         double* final_residual) {
  const Grid& g = *op.g;
  ScalarField rhs = rhs_in;
  remove_mean(rhs);
  const double bnorm = std::sqrt(dot_interior(rhs, rhs));
  if (bnorm == 0.0) {
    *final_residual = 0.0;
    return 0;
  }
  ScalarField r(g), z(g), q(g), d(g);
  remove_mean(p);
  op.apply(p, q);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) r(i, j) = rhs(i, j) - q(i, j);
  auto precond = [&](const ScalarField& in, ScalarField& out) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double dg = op.diagonal(i, j);
        out(i, j) = dg > 0.0 ? in(i, j) / dg : in(i, j);
      }
  };
  precond(r, z);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) d(i, j) = z(i, j);
  double rz = dot_interior(r, z);
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    const double rnorm = std::sqrt(dot_interior(r, r));
    *final_residual = rnorm / bnorm;
    if (rnorm <= cfg.tol * bnorm) return it;
    op.apply(d, q);
    const double dq = dot_interior(d, q);
    if (dq == 0.0) break;
    const double alpha = rz / dq;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        p(i, j) += alpha * d(i, j);
        r(i, j) -= alpha * q(i, j);
      }
    precond(r, z);
    const double rz_new = dot_interior(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) d(i, j) = z(i, j) + beta * d(i, j);
  }
  const double rnorm = std::sqrt(dot_interior(r, r));
  *final_residual = rnorm / bnorm;
  if (rnorm <= cfg.tol * bnorm) return it;
  throw SolverError("pressure solve did not converge (residual " +
                        std::to_string(*final_residual) + ")",
                    *final_residual);
}

}  // namespace detail

// Optional balanced-force data: the capillary force evaluated directly at
// faces (normal CSF-style part from the sharp alpha jump plus averaged
// tangential part) together with the cell force it replaces in the face
// interpolation. Suppresses spurious currents at static interfaces.
struct FaceForceBalance {
  FaceField face_force;    // [N/m^3] normal-direction force at faces
  VectorField cell_force;  // the force used in the predictor
};

// Capillary force at faces: (sigma*kappa)_f * (alpha jump)/d for the normal
// part, matching the discrete pressure gradient stencil, plus the linearly
// interpolated tangential Marangoni part.
inline FaceForceBalance make_face_balance(const ScalarField& alpha,
                                          const ScalarField& sigma,
                                          const InterfaceGeometry& geo,
                                          const VectorField& cell_force) {
  const Grid& g = alpha.grid();
  FaceForceBalance b{FaceField(g), cell_force};
  // Tangential part at cells (normal part excluded)
  VectorField tang(g);
  VectorField gs = gradient(sigma);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double d = geo.delta_s(i, j);
      if (d <= geo.delta_cut) continue;
      const double nx = geo.normal.x(i, j), ny = geo.normal.y(i, j);
      const double gn = gs.x(i, j) * nx + gs.y(i, j) * ny;
      tang.x(i, j) = d * (gs.x(i, j) - gn * nx);
      tang.y(i, j) = d * (gs.y(i, j) - gn * ny);
    }
  auto sk = [&](int i, int j) { return sigma(i, j) * geo.kappa(i, j); };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double skf = 0.5 * (sk(i - 1, j) + sk(i, j));
      const double normal_part = skf * (alpha(i, j) - alpha(i - 1, j)) / g.dx;
      const double tang_part = 0.5 * (tang.x(i - 1, j) + tang.x(i, j));
      b.face_force.fx(i, j) = normal_part + tang_part;
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double skf = 0.5 * (sk(i, j - 1) + sk(i, j));
      const double normal_part = skf * (alpha(i, j) - alpha(i, j - 1)) / g.dy;
      const double tang_part = 0.5 * (tang.y(i, j - 1) + tang.y(i, j));
      b.face_force.fy(i, j) = normal_part + tang_part;
    }
  return b;
}

// Pressure projection on the collocated arrangement. Face velocities are
// Rhie-Chow interpolated from the predictor; when balance data is present the
// averaged cell-force contribution is swapped for the sharp face force before
// the divergence is taken. Returns the projected state.
inline MomentumState pressure_projection(const VectorField& u_star,
                                         const ScalarField& rho, double dt,
                                         const LinearSolverConfig& cfg,
                                         const ScalarField* p_guess = nullptr,
                                         const FaceForceBalance* balance = nullptr) {
  cfg.validate();
  const Grid& g = u_star.grid();
  u_star.check_finite("pressure_projection input");
  MomentumState out(g);

  // Provisional face fluxes; wall-normal boundary faces stay zero.
  FaceField flux(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      double uf = 0.5 * (u_star.x(i - 1, j) + u_star.x(i, j));
      if (balance) {
        const double rf = 0.5 * (rho(i - 1, j) + rho(i, j));
        const double favg = 0.5 * (balance->cell_force.x(i - 1, j) / rho(i - 1, j) +
                                   balance->cell_force.x(i, j) / rho(i, j));
        uf += dt * (balance->face_force.fx(i, j) / rf - favg);
      }
      flux.fx(i, j) = uf * g.dy;
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double uf = 0.5 * (u_star.y(i, j - 1) + u_star.y(i, j));
      if (balance) {
        const double rf = 0.5 * (rho(i, j - 1) + rho(i, j));
        const double favg = 0.5 * (balance->cell_force.y(i, j - 1) / rho(i, j - 1) +
                                   balance->cell_force.y(i, j) / rho(i, j));
        uf += dt * (balance->face_force.fy(i, j) / rf - favg);
      }
      flux.fy(i, j) = uf * g.dx;
    }

  // Variable-coefficient operator: a_f = dt * A / (rho_f * d)
  detail::PoissonOperator op{&g, FaceField(g)};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) {
      const double rf = 0.5 * (rho(i - 1, j) + rho(i, j));
      op.coef.fx(i, j) = dt * g.dy / (rf * g.dx);
    }
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double rf = 0.5 * (rho(i, j - 1) + rho(i, j));
      op.coef.fy(i, j) = dt * g.dx / (rf * g.dy);
    }

  // A p = -div(flux) with A = -div(dt/rho grad .): subtracting a_f grad p
  // from the flux then cancels its divergence exactly.
  ScalarField rhs(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      rhs(i, j) = -(flux.fx(i + 1, j) - flux.fx(i, j) + flux.fy(i, j + 1) -
                    flux.fy(i, j));

  out.p = p_guess ? *p_guess : ScalarField(g);
  double res = 0.0;
  detail::solve_poisson(op, rhs, out.p, cfg, &res);
  detail::remove_mean(out.p);
  apply_boundary(out.p, BcSet::all_zero_gradient());

  // Correct face fluxes and cell velocities
  out.face_flux = flux;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i)
      out.face_flux.fx(i, j) -= op.coef.fx(i, j) * (out.p(i, j) - out.p(i - 1, j));
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out.face_flux.fy(i, j) -= op.coef.fy(i, j) * (out.p(i, j) - out.p(i, j - 1));

  VectorField gp = gradient(out.p);
  out.u = u_star;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      out.u.x(i, j) -= dt * gp.x(i, j) / rho(i, j);
      out.u.y(i, j) -= dt * gp.y(i, j) / rho(i, j);
    }
  return out;
}

// Maximum cell divergence of the projected face flux, per unit volume [1/s].
inline double max_divergence(const FaceField& flux) {
  ScalarField d = divergence(flux);
  return d.max_abs_interior();
}

// Stable time step: cfl times the minimum of the convective, viscous,
// thermal-diffusive and capillary (Brackbill) limits.
inline double compute_dt(const MomentumState& state, const ScalarField& alpha,
                         const MixtureModel& mix, double sigma_max, double cfl,
                         double dt_floor = 1e-12, double dt_max = 1e9) {
  const Grid& g = state.u.grid();
  double umax = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      umax = std::max(umax, std::max(std::fabs(state.u.x(i, j)),
                                     std::fabs(state.u.y(i, j))));
  const double h = std::min(g.dx, g.dy);
  double dt = dt_max;
  if (umax > 0.0) dt = std::min(dt, h / umax);
  const double nu = mix.max_kinematic_viscosity();
  if (nu > 0.0) dt = std::min(dt, h * h / (4.0 * nu));
  const double kap = mix.max_thermal_diffusivity();
  if (kap > 0.0) dt = std::min(dt, h * h / (4.0 * kap));
  if (sigma_max > 0.0) {
    const double rho_sum = mix.phase1.rho + mix.phase2.rho;
    dt = std::min(dt, std::sqrt(rho_sum * h * h * h /
                                (4.0 * std::numbers::pi * sigma_max)));
  }
  dt *= cfl;
  if (dt < dt_floor)
    throw NumericError("compute_dt: time step underflow (" +
                       std::to_string(dt) + " s)");
  return dt;
}

}  // namespace tcflow
