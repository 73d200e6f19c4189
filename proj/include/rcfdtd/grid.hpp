#pragma once

#include <array>
#include <vector>

namespace rcfdtd {

/// Node-centered structured grid with a ghost-cell halo on each active axis.
/// Interior nodes run 0..n[d]; ghost indices extend to -ghost..n[d]+ghost.
struct StructuredGrid {
  int dims = 1;
  std::array<int, 2> n = {0, 0};
  std::array<double, 2> h = {1.0, 1.0};
  std::array<double, 2> origin = {0.0, 0.0};
  int ghost = 1;
  std::array<bool, 2> periodic = {false, false};

  int ghost_x() const { return ghost; }
  int ghost_y() const { return dims == 2 ? ghost : 0; }
  int width() const { return n[0] + 1 + 2 * ghost_x(); }
  int height() const { return n[1] + 1 + 2 * ghost_y(); }
  double x(int i) const { return origin[0] + i * h[0]; }
  double y(int j) const { return origin[1] + j * h[1]; }
  bool same_layout(const StructuredGrid& o) const {
    return dims == o.dims && n == o.n && ghost == o.ghost;
  }
};

void validate(const StructuredGrid& g);

/// Real scalar values on every node of a grid, ghosts included.
struct ScalarField {
  StructuredGrid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const StructuredGrid& g)
      : grid(g), v(static_cast<size_t>(g.width()) * g.height(), 0.0) {}

  double& at(int i, int j) {
    return v[static_cast<size_t>(j + grid.ghost_y()) * grid.width() +
             (i + grid.ghost_x())];
  }
  double at(int i, int j) const {
    return v[static_cast<size_t>(j + grid.ghost_y()) * grid.width() +
             (i + grid.ghost_x())];
  }
  void fill(double value) { std::fill(v.begin(), v.end(), value); }
};

}  // namespace rcfdtd
