#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tcflow/case_setup.hpp"

using namespace tcflow;

TEST_CASE("initial droplet mass matches the circle area") {
  CaseConfig cfg;
  DropletCase c = build_droplet_case(cfg);
  double m = 0.0;
  for (int j = 0; j < c.grid.ny; ++j)
    for (int i = 0; i < c.grid.nx; ++i) m += c.phase.alpha(i, j);
  m *= c.grid.cell_volume();
  const double exact = std::numbers::pi * cfg.radius * cfg.radius;
  CHECK(std::fabs(m - exact) / exact <= 0.005);
}

TEST_CASE("temperature field spans the prescribed wall values") {
  CaseConfig cfg;
  CHECK(cfg.t_top() == doctest::Approx(291.152).epsilon(1e-12));
  DropletCase c = build_droplet_case(cfg);
  // linear in y: T at the first and last cell rows
  const double dy = c.grid.dy;
  for (int i = 0; i < c.grid.nx; ++i) {
    CHECK(c.T(i, 0) ==
          doctest::Approx(290.0 + 200.0 * 0.5 * dy).epsilon(1e-12));
    CHECK(c.T(i, c.grid.ny - 1) ==
          doctest::Approx(291.152 - 200.0 * 0.5 * dy).epsilon(1e-12));
  }
  // Dirichlet ghosts reconstruct the wall values exactly
  for (int i = 0; i < c.grid.nx; ++i) {
    CHECK(0.5 * (c.T(i, -1) + c.T(i, 0)) == doctest::Approx(290.0));
    CHECK(0.5 * (c.T(i, c.grid.ny - 1) + c.T(i, c.grid.ny)) ==
          doctest::Approx(291.152));
  }
}

TEST_CASE("invalid configurations are rejected") {
  CaseConfig cfg;
  cfg.radius = 0.0;
  CHECK_THROWS_AS(build_droplet_case(cfg), ConfigError);
  cfg = CaseConfig{};
  cfg.weno_order = 4;
  CHECK_THROWS_AS(build_droplet_case(cfg), ConfigError);
  cfg = CaseConfig{};
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(build_droplet_case(cfg), ConfigError);
  cfg = CaseConfig{};
  cfg.nx = 2;
  CHECK_THROWS_AS(build_droplet_case(cfg), ConfigError);
}

TEST_CASE("droplet starts centered at (2a, 2a)") {
  CaseConfig cfg;
  DropletCase c = build_droplet_case(cfg);
  DiagnosticsSample s =
      extract_diagnostics(0.0, c.phase.alpha, c.momentum, c.mixture);
  CHECK(s.centroid_x == doctest::Approx(2.0 * cfg.radius).epsilon(1e-10));
  CHECK(s.centroid_y == doctest::Approx(2.0 * cfg.radius).epsilon(1e-10));
}

TEST_CASE("initial interface transition is at most 2 cells wide") {
  CaseConfig cfg;
  DropletCase c = build_droplet_case(cfg);
  DiagnosticsSample s =
      extract_diagnostics(0.0, c.phase.alpha, c.momentum, c.mixture);
  REQUIRE(s.transition_width_cells.has_value());
  CHECK(*s.transition_width_cells <= 2.0);
}

TEST_CASE("initial fields are mirror symmetric about the vertical centerline") {
  CaseConfig cfg;
  DropletCase c = build_droplet_case(cfg);
  const int nx = c.grid.nx;
  for (int j = 0; j < c.grid.ny; ++j)
    for (int i = 0; i < nx / 2; ++i) {
      CHECK(c.phase.alpha(i, j) == c.phase.alpha(nx - 1 - i, j));
      CHECK(c.T(i, j) == c.T(nx - 1 - i, j));
    }
}

TEST_CASE("diagnostics of a synthetic state") {
  Grid g = build_grid(16, 16, 1.0, 1.0, 3);
  ScalarField a(g);
  // left half full, right half empty: a sharp vertical interface
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) a(i, j) = (i < 8) ? 1.0 : 0.0;
  apply_boundary(a, BcSet::all_zero_gradient());
  MomentumState mom(g);
  mom.u.x(3, 3) = 2.0;
  MixtureModel mix;
  DiagnosticsSample s = extract_diagnostics(1.5, a, mom, mix);
  CHECK(s.t == 1.5);
  CHECK(s.mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.centroid_x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s.centroid_y == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.max_u == doctest::Approx(2.0));
  CHECK(s.kinetic_energy ==
        doctest::Approx(0.5 * 1.0 * 4.0 * g.cell_volume()).epsilon(1e-12));
}

TEST_CASE("uniform alpha has no transition width") {
  Grid g = build_grid(16, 16, 1.0, 1.0, 3);
  ScalarField a(g, 1.0);
  apply_boundary(a, BcSet::all_zero_gradient());
  auto w = transition_width_cells(diagonal_profile(a), g.dx, g.dy);
  CHECK_FALSE(w.has_value());
}

TEST_CASE("bilinear sampling is exact for a linear field") {
  Grid g = build_grid(16, 16, 1.0, 1.0, 3);
  ScalarField s(g);
  for (int j = -3; j < g.ny + 3; ++j)
    for (int i = -3; i < g.nx + 3; ++i)
      s(i, j) = 2.0 * g.xc(i) - 3.0 * g.yc(j) + 1.0;
  CHECK(sample_bilinear(s, 0.4, 0.7) ==
        doctest::Approx(2.0 * 0.4 - 3.0 * 0.7 + 1.0).epsilon(1e-13));
  CHECK(sample_bilinear(s, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}
