#include "rcfdtd/grid_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace rcfdtd {

void validate(const StructuredGrid& g) {
  if (g.dims != 1 && g.dims != 2) throw std::invalid_argument("grid: dims must be 1 or 2");
  if (g.ghost < 1) throw std::invalid_argument("grid: ghost width must be >= 1");
  for (int d = 0; d < g.dims; ++d) {
    if (!(g.h[d] > 0.0)) throw std::invalid_argument("grid: h_d must be > 0");
    if (g.n[d] < 4 * g.ghost)
      throw std::invalid_argument("grid: need n_d >= 4*ghost interior cells");
  }
}

namespace {

void require_ghost(const ScalarField& f, int w, const char* op) {
  if (f.grid.ghost < w)
    throw std::invalid_argument(std::string(op) + ": ghost width too small");
}

struct Box {
  int ilo, ihi, jlo, jhi;
};

Box interior(const StructuredGrid& g, int pad = 0) {
  return {-pad, g.n[0] + pad, g.dims == 2 ? -pad : 0, g.dims == 2 ? g.n[1] + pad : 0};
}

template <typename F>
void apply(const Box& b, ScalarField& out, F&& fn) {
  for (int j = b.jlo; j <= b.jhi; ++j)
    for (int i = b.ilo; i <= b.ihi; ++i) out.at(i, j) = fn(i, j);
}

void lap2_box(const ScalarField& f, const Box& b, ScalarField& out) {
  const auto& g = f.grid;
  const double ax = 1.0 / (g.h[0] * g.h[0]);
  const double ay = g.dims == 2 ? 1.0 / (g.h[1] * g.h[1]) : 0.0;
  apply(b, out, [&](int i, int j) {
    double r = ax * (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j));
    if (g.dims == 2) r += ay * (f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1));
    return r;
  });
}

}  // namespace

ScalarField laplacian_2h(const ScalarField& f) {
  require_ghost(f, 1, "laplacian_2h");
  ScalarField out(f.grid);
  lap2_box(f, interior(f.grid), out);
  return out;
}

ScalarField laplacian_4h(const ScalarField& f) {
  require_ghost(f, 2, "laplacian_4h");
  const auto& g = f.grid;
  ScalarField out(g);
  const double ax = 1.0 / (12.0 * g.h[0] * g.h[0]);
  const double ay = g.dims == 2 ? 1.0 / (12.0 * g.h[1] * g.h[1]) : 0.0;
  apply(interior(g), out, [&](int i, int j) {
    double r = ax * (-f.at(i + 2, j) + 16.0 * f.at(i + 1, j) - 30.0 * f.at(i, j) +
                     16.0 * f.at(i - 1, j) - f.at(i - 2, j));
    if (g.dims == 2)
      r += ay * (-f.at(i, j + 2) + 16.0 * f.at(i, j + 1) - 30.0 * f.at(i, j) +
                 16.0 * f.at(i, j - 1) - f.at(i, j - 2));
    return r;
  });
  return out;
}

ScalarField biharmonic_2h(const ScalarField& f) {
  require_ghost(f, 2, "biharmonic_2h");
  ScalarField tmp(f.grid);
  lap2_box(f, interior(f.grid, 1), tmp);
  ScalarField out(f.grid);
  lap2_box(tmp, interior(f.grid), out);
  return out;
}

namespace {

ScalarField first_derivative(const ScalarField& f, int axis, int order) {
  const auto& g = f.grid;
  if (axis < 0 || axis >= g.dims) throw std::invalid_argument("d0: axis out of range");
  const int di = axis == 0 ? 1 : 0;
  const int dj = axis == 1 ? 1 : 0;
  const double h = g.h[axis];
  ScalarField out(g);
  if (order == 2) {
    apply(interior(g), out, [&](int i, int j) {
      return (f.at(i + di, j + dj) - f.at(i - di, j - dj)) / (2.0 * h);
    });
  } else {
    apply(interior(g), out, [&](int i, int j) {
      return (f.at(i - 2 * di, j - 2 * dj) - 8.0 * f.at(i - di, j - dj) +
              8.0 * f.at(i + di, j + dj) - f.at(i + 2 * di, j + 2 * dj)) /
             (12.0 * h);
    });
  }
  return out;
}

}  // namespace

ScalarField d0(const ScalarField& f, int axis) {
  require_ghost(f, 1, "d0");
  return first_derivative(f, axis, 2);
}

ScalarField d0_4th(const ScalarField& f, int axis) {
  require_ghost(f, 2, "d0_4th");
  return first_derivative(f, axis, 4);
}

ScalarField d0_third(const ScalarField& f, int axis) {
  require_ghost(f, 2, "d0_third");
  const auto& g = f.grid;
  if (axis < 0 || axis >= g.dims) throw std::invalid_argument("d0_third: axis out of range");
  const int di = axis == 0 ? 1 : 0;
  const int dj = axis == 1 ? 1 : 0;
  const double h3 = g.h[axis] * g.h[axis] * g.h[axis];
  ScalarField out(g);
  apply(interior(g), out, [&](int i, int j) {
    return (f.at(i + 2 * di, j + 2 * dj) - 2.0 * f.at(i + di, j + dj) +
            2.0 * f.at(i - di, j - dj) - f.at(i - 2 * di, j - 2 * dj)) /
           (2.0 * h3);
  });
  return out;
}

Norms norms(const ScalarField& f) {
  const auto& g = f.grid;
  double sum1 = 0.0, sum2 = 0.0, mx = 0.0;
  const Box b = interior(g);
  for (int j = b.jlo; j <= b.jhi; ++j)
    for (int i = b.ilo; i <= b.ihi; ++i) {
      const double a = std::abs(f.at(i, j));
      sum1 += a;
      sum2 += a * a;
      mx = std::max(mx, a);
    }
  double divisor = g.n[0];
  if (g.dims == 2) divisor *= g.n[1];
  Norms out;
  out.l1 = sum1 / divisor;
  out.l2 = std::sqrt(sum2 / divisor);
  out.linf = mx;
  return out;
}

void fill_periodic(ScalarField& f) {
  const auto& g = f.grid;
  if (g.periodic[0]) {
    // Node n[0] duplicates node 0; period is n[0] cells.
    const int p = g.n[0];
    const int jlo = g.dims == 2 ? -g.ghost_y() : 0;
    const int jhi = g.dims == 2 ? g.n[1] + g.ghost_y() : 0;
    for (int j = jlo; j <= jhi; ++j) {
      for (int k = 1; k <= g.ghost; ++k) {
        f.at(-k, j) = f.at(p - k, j);
        f.at(p + k, j) = f.at(k, j);
      }
      f.at(p, j) = f.at(0, j);
    }
  }
  if (g.dims == 2 && g.periodic[1]) {
    const int p = g.n[1];
    for (int i = -g.ghost_x(); i <= g.n[0] + g.ghost_x(); ++i) {
      for (int k = 1; k <= g.ghost; ++k) {
        f.at(i, -k) = f.at(i, p - k);
        f.at(i, p + k) = f.at(i, k);
      }
      f.at(i, p) = f.at(i, 0);
    }
  }
}

}  // namespace rcfdtd
