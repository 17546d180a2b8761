#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tcflow/errors.hpp"
#include "tcflow/grid.hpp"

namespace tcflow {

// Cell-centered scalar, ghosts included. Value semantics; the grid is stored
// by value (it is a small immutable descriptor).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& g, double init = 0.0)
      : grid_(g), data_(static_cast<size_t>(g.cell_count()), init) {}

  const Grid& grid() const { return grid_; }

  double& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return data_[grid_.index(i, j)]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void fill(double v) { data_.assign(data_.size(), v); }

  // Hard failure on non-finite interior values.
  void check_finite(const std::string& what) const {
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i)
        if (!std::isfinite((*this)(i, j)))
          throw NumericError(what + ": non-finite value at cell (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
  }

  double max_abs_interior() const {
    double m = 0.0;
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i) m = std::max(m, std::fabs((*this)(i, j)));
    return m;
  }

 private:
  Grid grid_;
  std::vector<double> data_;
};

// Cell-centered vector as two scalar components.
struct VectorField {
  ScalarField x, y;

  VectorField() = default;
  explicit VectorField(const Grid& g) : x(g), y(g) {}

  const Grid& grid() const { return x.grid(); }

  void check_finite(const std::string& what) const {
    x.check_finite(what + ".x");
    y.check_finite(what + ".y");
  }
};

// Face-centered storage: one value per x-face and per y-face, boundary faces
// included. fx(i,j) sits between cells (i-1,j) and (i,j) for i in [0,nx];
// fy(i,j) between cells (i,j-1) and (i,j) for j in [0,ny].
class FaceField {
 public:
  FaceField() = default;
  explicit FaceField(const Grid& g)
      : grid_(g),
        fx_(static_cast<size_t>((g.nx + 1) * g.ny), 0.0),
        fy_(static_cast<size_t>(g.nx * (g.ny + 1)), 0.0) {}

  const Grid& grid() const { return grid_; }

  double& fx(int i, int j) { return fx_[static_cast<size_t>(j) * (grid_.nx + 1) + i]; }
  double fx(int i, int j) const { return fx_[static_cast<size_t>(j) * (grid_.nx + 1) + i]; }
  double& fy(int i, int j) { return fy_[static_cast<size_t>(j) * grid_.nx + i]; }
  double fy(int i, int j) const { return fy_[static_cast<size_t>(j) * grid_.nx + i]; }

  size_t face_count() const { return fx_.size() + fy_.size(); }

  void fill(double v) {
    fx_.assign(fx_.size(), v);
    fy_.assign(fy_.size(), v);
  }

 private:
  Grid grid_;
  std::vector<double> fx_, fy_;
};

namespace detail {

// Fill one ghost layer pair along x for a fixed j. Ghost cell -k mirrors
// interior cell k-1 through the left face (and symmetrically on the right).
inline void fill_ghosts_x(ScalarField& f, int j, const BoundaryCondition& left,
                          const BoundaryCondition& right) {
  const Grid& g = f.grid();
  for (int k = 1; k <= g.n_ghost; ++k) {
    const double dist = (2 * k - 1) * g.dx;
    switch (left.kind) {
      case BcKind::dirichlet: f(-k, j) = 2.0 * left.value - f(k - 1, j); break;
      case BcKind::neumann: f(-k, j) = f(k - 1, j) - left.value * dist; break;
      case BcKind::zero_gradient: f(-k, j) = f(k - 1, j); break;
    }
    switch (right.kind) {
      case BcKind::dirichlet: f(g.nx - 1 + k, j) = 2.0 * right.value - f(g.nx - k, j); break;
      case BcKind::neumann: f(g.nx - 1 + k, j) = f(g.nx - k, j) + right.value * dist; break;
      case BcKind::zero_gradient: f(g.nx - 1 + k, j) = f(g.nx - k, j); break;
    }
  }
}

inline void fill_ghosts_y(ScalarField& f, int i, const BoundaryCondition& bottom,
                          const BoundaryCondition& top) {
  const Grid& g = f.grid();
  for (int k = 1; k <= g.n_ghost; ++k) {
    const double dist = (2 * k - 1) * g.dy;
    switch (bottom.kind) {
      case BcKind::dirichlet: f(i, -k) = 2.0 * bottom.value - f(i, k - 1); break;
      case BcKind::neumann: f(i, -k) = f(i, k - 1) - bottom.value * dist; break;
      case BcKind::zero_gradient: f(i, -k) = f(i, k - 1); break;
    }
    switch (top.kind) {
      case BcKind::dirichlet: f(i, g.ny - 1 + k) = 2.0 * top.value - f(i, g.ny - k); break;
      case BcKind::neumann: f(i, g.ny - 1 + k) = f(i, g.ny - k) + top.value * dist; break;
      case BcKind::zero_gradient: f(i, g.ny - 1 + k) = f(i, g.ny - k); break;
    }
  }
}

}  // namespace detail

// Refresh all ghost layers. Left/right first over interior rows, then
// bottom/top over the full extended column range so corners are defined.
// Idempotent: interior values are never touched.
inline void apply_boundary(ScalarField& f, const BcSet& bc) {
  const Grid& g = f.grid();
  for (int j = 0; j < g.ny; ++j) detail::fill_ghosts_x(f, j, bc.left, bc.right);
  for (int i = -g.n_ghost; i < g.nx + g.n_ghost; ++i)
    detail::fill_ghosts_y(f, i, bc.bottom, bc.top);
}

inline void apply_boundary(VectorField& v, const VectorBcSet& bc) {
  apply_boundary(v.x, bc.component(0));
  apply_boundary(v.y, bc.component(1));
}

}  // namespace tcflow
