// Command-line runner for the thermocapillary droplet solver.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure (NaN or
// step collapse), 4 linear solver non-convergence.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tcflow/config.hpp"
#include "tcflow/output.hpp"
#include "tcflow/simulation.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"tcflow: 2D two-phase finite-volume solver with VOF interface "
               "capturing and thermocapillary surface tension"};

  std::string case_path, output_dir = "output";
  std::optional<double> end_time, cfl;
  std::optional<int> weno_order, write_every;
  bool quiet = false;

  app.add_option("--case", case_path, "Case configuration file")->required();
  app.add_option("--output-dir", output_dir, "Output directory");
  app.add_option("--end-time", end_time, "Override end time [s]");
  app.add_option("--cfl", cfl, "Override CFL factor");
  app.add_option("--weno-order", weno_order, "Override WENO order (1, 3 or 5)");
  app.add_option("--write-every", write_every, "Override output cadence [steps]");
  app.add_flag("--quiet", quiet, "Suppress per-output log lines");

  CLI11_PARSE(app, argc, argv);

  tcflow::RunManifest manifest;
  manifest.config_path = case_path;
  const auto wall_start = std::chrono::steady_clock::now();

  auto finish = [&](int code, const std::string& termination) {
    manifest.termination = termination;
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      wall_start)
            .count();
    try {
      fs::create_directories(output_dir);
      tcflow::write_manifest(manifest, output_dir + "/manifest.txt");
    } catch (const std::exception& e) {
      std::cerr << "manifest write failed: " << e.what() << "\n";
    }
    return code;
  };

  try {
    tcflow::CaseConfig cfg = tcflow::load_case_config(case_path);
    if (end_time) cfg.end_time = *end_time;
    if (cfl) cfg.cfl = *cfl;
    if (weno_order) cfg.weno_order = *weno_order;
    if (write_every) cfg.write_every = *write_every;
    cfg.validate();

    fs::create_directories(output_dir);
    tcflow::Simulation sim(tcflow::build_droplet_case(cfg));

    tcflow::Diagnostics diag;
    const double mass0 = sim.sample().mass;
    bool first_profile_written = false;

    auto on_output = [&](const tcflow::Simulation& s, int step) {
      auto smp = s.sample();
      diag.samples.push_back(smp);
      const auto& st = s.state();
      tcflow::ScalarField sig =
          tcflow::sigma_field(st.T, st.surface_tension);
      tcflow::InterfaceGeometry geo = s.geometry();
      char name[64];
      std::snprintf(name, sizeof(name), "state_%06d.vtk", step);
      tcflow::write_vtk(output_dir + "/" + name, st.phase.alpha, st.T,
                        st.momentum.p, sig, geo.delta_s, st.momentum.u);
      if (!first_profile_written) {
        tcflow::write_diagonal_profile_csv(st.phase.alpha, smp.t,
                                           output_dir + "/profile_initial.csv");
        first_profile_written = true;
      }
      tcflow::write_diagonal_profile_csv(st.phase.alpha, smp.t,
                                         output_dir + "/profile_final.csv");
      if (!quiet)
        std::printf("step %7d  t = %.6e s  mass = %.12e  max|u| = %.4e\n",
                    step, smp.t, smp.mass, smp.max_u);
    };

    sim.run(on_output);

    tcflow::write_diagnostics_csv(diag, output_dir + "/diagnostics.csv");
    manifest.steps = sim.step_count();
    manifest.reached_time = sim.time();
    manifest.clipped_mass = sim.total_clipped_mass();
    const double mass_end = sim.sample().mass;
    manifest.mass_drift =
        mass0 != 0.0 ? std::fabs(mass_end - mass0) / mass0 : 0.0;
    return finish(0, "completed");
  } catch (const tcflow::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return finish(2, "config_error");
  } catch (const tcflow::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return finish(4, "solver_error");
  } catch (const tcflow::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return finish(3, "numeric_error");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finish(3, "error");
  }
}
