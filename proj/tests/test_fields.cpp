#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tcflow/operators.hpp"

using namespace tcflow;

namespace {

ScalarField make_linear(const Grid& g, double a, double b, double c) {
  ScalarField s(g);
  for (int j = -g.n_ghost; j < g.ny + g.n_ghost; ++j)
    for (int i = -g.n_ghost; i < g.nx + g.n_ghost; ++i)
      s(i, j) = a * g.xc(i) + b * g.yc(j) + c;
  return s;
}

}  // namespace

TEST_CASE("gradient exact for linear and constant fields") {
  Grid g = build_grid(16, 12, 2.0, 1.5, 2);
  SUBCASE("3x + 2y") {
    VectorField gr = gradient(make_linear(g, 3.0, 2.0, 1.0));
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        CHECK(gr.x(i, j) == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(gr.y(i, j) == doctest::Approx(2.0).epsilon(1e-13));
      }
  }
  SUBCASE("constant") {
    VectorField gr = gradient(make_linear(g, 0.0, 0.0, 4.0));
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        CHECK(gr.x(i, j) == 0.0);
        CHECK(gr.y(i, j) == 0.0);
      }
  }
}

TEST_CASE("central gradient of x^2 is exact at cell centers") {
  Grid g = build_grid(10, 4, 1.0, 0.4, 1);  // dx = 0.1
  ScalarField s(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i) s(i, j) = g.xc(i) * g.xc(i);
  VectorField gr = gradient(s);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(gr.x(i, j) == doctest::Approx(2.0 * g.xc(i)).epsilon(1e-12));
}

TEST_CASE("divergence of (x,y) is 2, of a uniform field 0") {
  Grid g = build_grid(12, 12, 1.0, 1.0, 1);
  VectorField v(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i) {
      v.x(i, j) = g.xc(i);
      v.y(i, j) = g.yc(j);
    }
  ScalarField d = divergence(v);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(d(i, j) == doctest::Approx(2.0).epsilon(1e-12));

  VectorField u(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i) {
      u.x(i, j) = 0.7;
      u.y(i, j) = -0.3;
    }
  ScalarField du = divergence(u);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(du(i, j) == 0.0);
}

TEST_CASE("face-flux divergence telescopes to the boundary flux sum") {
  Grid g = build_grid(20, 17, 1.0, 1.0, 1);
  FaceField q(g);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  // interior faces random, boundary faces zero
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx; ++i) q.fx(i, j) = dist(rng);
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) q.fy(i, j) = dist(rng);
  ScalarField d = divergence(q);
  double sum = 0.0, mag = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      sum += d(i, j) * g.cell_volume();
      mag += std::fabs(d(i, j)) * g.cell_volume();
    }
  CHECK(std::fabs(sum) <= 1e-13 * mag);
}

TEST_CASE("laplacian exact for quadratics, zero for linear fields") {
  Grid g = build_grid(16, 16, 1.0, 1.0, 1);
  ScalarField s(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i) s(i, j) = g.xc(i) * g.xc(i);
  ScalarField l = laplacian(s);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(l(i, j) == doctest::Approx(2.0).epsilon(1e-10));

  ScalarField lin = make_linear(g, 1.0, -2.0, 0.5);
  ScalarField ll = laplacian(lin);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(ll(i, j) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("laplacian rejects non-positive coefficients") {
  Grid g = build_grid(6, 6, 1.0, 1.0, 1);
  ScalarField s(g, 1.0), c(g, 0.0);
  CHECK_THROWS_AS(laplacian(s, c), ConfigError);
}

TEST_CASE("harmonic face coefficient keeps the two-material flux continuous") {
  // 1D steady conduction through materials with conductivity 1 then 2 and
  // fixed end temperatures: the analytic flux is dT / (L1/k1 + L2/k2).
  Grid g = build_grid(8, 4, 1.0, 0.5, 1);
  ScalarField coeff(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i)
      coeff(i, j) = (g.xc(i) < 0.5) ? 1.0 : 2.0;
  // Steady profile: slope 2s in the left half, s in the right half, where the
  // flux k*slope is continuous. Use T(0)=0, flux q = 1 -> slopes 1 and 0.5.
  ScalarField T(g);
  for (int j = -1; j < g.ny + 1; ++j)
    for (int i = -1; i < g.nx + 1; ++i) {
      const double x = g.xc(i);
      T(i, j) = (x < 0.5) ? x : 0.5 + 0.5 * (x - 0.5);
    }
  ScalarField l = laplacian(T, coeff);
  // Interior of a steady solution: div(k grad T) = 0, including at the jump
  // thanks to harmonic averaging.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx - 1; ++i)
      CHECK(l(i, j) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("laplacian with constant coefficient equals coeff*div(grad)") {
  Grid g = build_grid(12, 12, 1.0, 1.0, 2);
  ScalarField s(g);
  for (int j = -2; j < g.ny + 2; ++j)
    for (int i = -2; i < g.nx + 2; ++i)
      s(i, j) = std::sin(3.0 * g.xc(i)) * std::cos(2.0 * g.yc(j));
  ScalarField c(g, 2.5);
  ScalarField a = laplacian(s, c);
  ScalarField b = laplacian(s);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      CHECK(a(i, j) == doctest::Approx(2.5 * b(i, j)).epsilon(1e-12));
}

TEST_CASE("face interpolation modes") {
  Grid g = build_grid(4, 4, 1.0, 1.0, 1);
  SUBCASE("constant field") {
    ScalarField s(g, 3.0);
    apply_boundary(s, BcSet::all_zero_gradient());
    FaceField lin = interpolate_to_faces(s, FaceInterp::linear);
    FaceField har = interpolate_to_faces(s, FaceInterp::harmonic);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i <= g.nx; ++i) {
        CHECK(lin.fx(i, j) == 3.0);
        CHECK(har.fx(i, j) == 3.0);
      }
  }
  SUBCASE("cells 1 and 3") {
    ScalarField s(g, 1.0);
    s(1, 1) = 1.0;
    s(2, 1) = 3.0;
    apply_boundary(s, BcSet::all_zero_gradient());
    FaceField lin = interpolate_to_faces(s, FaceInterp::linear);
    FaceField har = interpolate_to_faces(s, FaceInterp::harmonic);
    CHECK(lin.fx(2, 1) == doctest::Approx(2.0));
    CHECK(har.fx(2, 1) == doctest::Approx(1.5));
  }
  SUBCASE("harmonic with zero throws") {
    ScalarField s(g, 0.0);
    apply_boundary(s, BcSet::all_zero_gradient());
    CHECK_THROWS_AS(interpolate_to_faces(s, FaceInterp::harmonic), ConfigError);
  }
  SUBCASE("linear field hits the midpoint") {
    ScalarField s(g);
    for (int j = -1; j < g.ny + 1; ++j)
      for (int i = -1; i < g.nx + 1; ++i) s(i, j) = 2.0 * g.xc(i);
    FaceField lin = interpolate_to_faces(s, FaceInterp::linear);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i <= g.nx; ++i)
        CHECK(lin.fx(i, j) == doctest::Approx(2.0 * (g.x0 + i * g.dx)));
  }
}

TEST_CASE("gradient converges at second order on a sine product") {
  using std::numbers::pi;
  auto error = [](int n) {
    Grid g = build_grid(n, n, 1.0, 1.0, 1);
    ScalarField s(g);
    for (int j = -1; j < g.ny + 1; ++j)
      for (int i = -1; i < g.nx + 1; ++i)
        s(i, j) = std::sin(2 * pi * g.xc(i)) * std::sin(2 * pi * g.yc(j));
    VectorField gr = gradient(s);
    double e2 = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double ex = 2 * pi * std::cos(2 * pi * g.xc(i)) *
                          std::sin(2 * pi * g.yc(j));
        e2 += (gr.x(i, j) - ex) * (gr.x(i, j) - ex);
      }
    return std::sqrt(e2 / (g.nx * g.ny));
  };
  const double e32 = error(32), e64 = error(64);
  const double order = std::log2(e32 / e64);
  CHECK(order >= 1.9);
}

TEST_CASE("NaN in the interior is a hard failure") {
  Grid g = build_grid(4, 4, 1.0, 1.0, 1);
  ScalarField s(g, 1.0);
  s(2, 2) = std::nan("");
  CHECK_THROWS_AS(s.check_finite("s"), NumericError);
}
