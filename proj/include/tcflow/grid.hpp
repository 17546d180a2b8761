#pragma once

#include <string>

#include "tcflow/errors.hpp"

namespace tcflow {

// Uniform Cartesian cell arrangement with a fixed ghost layer on all sides.
// Interior cells are indexed (i,j) with i in [0,nx), j in [0,ny); ghost cells
// extend the index range by n_ghost on each side. Immutable after construction.
struct Grid {
  int nx = 0, ny = 0;
  int n_ghost = 0;
  double dx = 0.0, dy = 0.0;
  double x0 = 0.0, y0 = 0.0;

  int stride_x() const { return nx + 2 * n_ghost; }
  int stride_y() const { return ny + 2 * n_ghost; }
  int cell_count() const { return stride_x() * stride_y(); }

  // Linear index for a cell, ghosts included.
  int index(int i, int j) const {
    return (j + n_ghost) * stride_x() + (i + n_ghost);
  }

  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double lx() const { return nx * dx; }
  double ly() const { return ny * dy; }
  double cell_volume() const { return dx * dy; }  // unit depth

  bool same_layout(const Grid& o) const {
    return nx == o.nx && ny == o.ny && n_ghost == o.n_ghost && dx == o.dx &&
           dy == o.dy && x0 == o.x0 && y0 == o.y0;
  }
};

inline Grid build_grid(int nx, int ny, double lx, double ly, int n_ghost,
                       double x0 = 0.0, double y0 = 0.0) {
  if (nx < 4 || ny < 4)
    throw ConfigError("build_grid: need at least 4 cells per direction, got " +
                      std::to_string(nx) + "x" + std::to_string(ny));
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ConfigError("build_grid: domain extent must be positive");
  if (n_ghost < 1) throw ConfigError("build_grid: n_ghost must be >= 1");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.n_ghost = n_ghost;
  g.dx = lx / nx;
  g.dy = ly / ny;
  g.x0 = x0;
  g.y0 = y0;
  return g;
}

enum class Side { left, right, bottom, top };

enum class BcKind { dirichlet, neumann, zero_gradient };

// Scalar boundary condition on one side. Dirichlet prescribes the face value
// (ghosts mirrored through it, so the two-point face average is exact).
// Neumann prescribes the gradient along the axis normal to the side.
struct BoundaryCondition {
  BcKind kind = BcKind::zero_gradient;
  double value = 0.0;

  static BoundaryCondition dirichlet(double v) { return {BcKind::dirichlet, v}; }
  static BoundaryCondition neumann(double grad) { return {BcKind::neumann, grad}; }
  static BoundaryCondition zero_gradient_bc() { return {BcKind::zero_gradient, 0.0}; }
};

// One condition per side; every field that owns ghosts registers one of these.
struct BcSet {
  BoundaryCondition left, right, bottom, top;

  static BcSet uniform(BoundaryCondition bc) { return {bc, bc, bc, bc}; }
  static BcSet all_zero_gradient() {
    return uniform(BoundaryCondition::zero_gradient_bc());
  }

  const BoundaryCondition& on(Side s) const {
    switch (s) {
      case Side::left: return left;
      case Side::right: return right;
      case Side::bottom: return bottom;
      default: return top;
    }
  }
};

// Vector-valued condition: no_slip pins both components to zero at the wall,
// dirichlet prescribes a wall velocity (moving lid), zero_gradient extrapolates.
enum class VectorBcKind { no_slip, dirichlet, zero_gradient };

struct VectorBc {
  VectorBcKind kind = VectorBcKind::no_slip;
  double vx = 0.0, vy = 0.0;

  static VectorBc no_slip_bc() { return {VectorBcKind::no_slip, 0.0, 0.0}; }
  static VectorBc dirichlet(double vx, double vy) {
    return {VectorBcKind::dirichlet, vx, vy};
  }
  static VectorBc zero_gradient_bc() { return {VectorBcKind::zero_gradient, 0.0, 0.0}; }
};

struct VectorBcSet {
  VectorBc left, right, bottom, top;

  static VectorBcSet uniform(VectorBc bc) { return {bc, bc, bc, bc}; }
  static VectorBcSet all_no_slip() { return uniform(VectorBc::no_slip_bc()); }

  // Per-component scalar view, used by the ghost-fill code.
  BcSet component(int c) const {
    auto conv = [c](const VectorBc& b) -> BoundaryCondition {
      switch (b.kind) {
        case VectorBcKind::no_slip: return BoundaryCondition::dirichlet(0.0);
        case VectorBcKind::dirichlet:
          return BoundaryCondition::dirichlet(c == 0 ? b.vx : b.vy);
        default: return BoundaryCondition::zero_gradient_bc();
      }
    };
    return {conv(left), conv(right), conv(bottom), conv(top)};
  }
};

}  // namespace tcflow
