#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tcflow/case_setup.hpp"
#include "tcflow/simulation.hpp"

namespace tcflow {

namespace detail {

inline std::string fmt_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  if (path.empty()) throw ConfigError("output: empty path");
  std::ofstream out(path);
  if (!out) throw ConfigError("output: cannot open '" + path + "' for writing");
  return out;
}

}  // namespace detail

// Legacy ASCII VTK, STRUCTURED_POINTS. Cell data: alpha, T, p, sigma,
// delta_s. Velocity is interpolated to grid points and written as POINT_DATA
// vectors. Locale-independent formatting at 17 significant digits.
inline void write_vtk(const std::string& path, const ScalarField& alpha,
                      const ScalarField& T, const ScalarField& p,
                      const ScalarField& sigma, const ScalarField& delta_s,
                      const VectorField& u) {
  const Grid& g = alpha.grid();
  auto out = detail::open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "tcflow state\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx + 1 << " " << g.ny + 1 << " 1\n";
  out << "ORIGIN " << detail::fmt_g17(g.x0) << " " << detail::fmt_g17(g.y0)
      << " 0\n";
  out << "SPACING " << detail::fmt_g17(g.dx) << " " << detail::fmt_g17(g.dy)
      << " 1\n";
  out << "CELL_DATA " << g.nx * g.ny << "\n";
  auto scalar = [&](const char* name, const ScalarField& s) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out << detail::fmt_g17(s(i, j)) << "\n";
  };
  scalar("alpha", alpha);
  scalar("T", T);
  scalar("p", p);
  scalar("sigma", sigma);
  scalar("delta_s", delta_s);
  out << "POINT_DATA " << (g.nx + 1) * (g.ny + 1) << "\n";
  out << "VECTORS velocity double\n";
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      // average the four surrounding cells (ghosts supply the boundary ring)
      const double ux = 0.25 * (u.x(i - 1, j - 1) + u.x(i, j - 1) +
                                u.x(i - 1, j) + u.x(i, j));
      const double uy = 0.25 * (u.y(i - 1, j - 1) + u.y(i, j - 1) +
                                u.y(i - 1, j) + u.y(i, j));
      out << detail::fmt_g17(ux) << " " << detail::fmt_g17(uy) << " 0\n";
    }
  if (!out) throw ConfigError("output: write failed for '" + path + "'");
}

inline void write_diagnostics_csv(const Diagnostics& diag,
                                  const std::string& path) {
  if (diag.samples.empty())
    throw ConfigError("write_diagnostics_csv: empty series");
  auto out = detail::open_out(path);
  out << "t,mass,max_u,centroid_y,kinetic_energy,transition_width\n";
  for (const auto& s : diag.samples) {
    out << detail::fmt_g17(s.t) << "," << detail::fmt_g17(s.mass) << ","
        << detail::fmt_g17(s.max_u) << "," << detail::fmt_g17(s.centroid_y)
        << "," << detail::fmt_g17(s.kinetic_energy) << ",";
    if (s.transition_width_cells)
      out << detail::fmt_g17(*s.transition_width_cells);
    out << "\n";
  }
  if (!out) throw ConfigError("output: write failed for '" + path + "'");
}

// Alpha along the top-left -> bottom-right diagonal, one row per sample point.
inline void write_diagonal_profile_csv(const ScalarField& alpha, double t,
                                       const std::string& path) {
  auto out = detail::open_out(path);
  out << "# t = " << detail::fmt_g17(t) << "\n";
  out << "arclength,alpha\n";
  for (const auto& [s, a] : diagonal_profile(alpha))
    out << detail::fmt_g17(s) << "," << detail::fmt_g17(a) << "\n";
  if (!out) throw ConfigError("output: write failed for '" + path + "'");
}

// Plain key-value run manifest, written atomically (tmp file + rename).
struct RunManifest {
  std::string config_path;
  std::string termination = "completed";
  int steps = 0;
  double reached_time = 0.0;
  double wall_seconds = 0.0;
  double mass_drift = 0.0;
  double clipped_mass = 0.0;
  std::string solver_version = "tcflow 1.0";
};

inline void write_manifest(const RunManifest& m, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    auto out = detail::open_out(tmp);
    out << "solver_version = " << m.solver_version << "\n";
    out << "config = " << m.config_path << "\n";
    out << "termination = " << m.termination << "\n";
    out << "steps = " << m.steps << "\n";
    out << "reached_time = " << detail::fmt_g17(m.reached_time) << "\n";
    out << "wall_seconds = " << detail::fmt_g17(m.wall_seconds) << "\n";
    out << "mass_drift = " << detail::fmt_g17(m.mass_drift) << "\n";
    out << "clipped_mass = " << detail::fmt_g17(m.clipped_mass) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tcflow
