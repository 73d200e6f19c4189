#include "rcfdtd/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "rcfdtd/grid_ops.hpp"

namespace rcfdtd {

SchemeConfig make_scheme(int order, const MaterialParams& m) {
  if (order != 2 && order != 4) throw std::invalid_argument("scheme order must be 2 or 4");
  validate(m);
  return {order, m, m.wave_speed()};
}

FieldHistory init_history(const ExactSolution& exact, const StructuredGrid& grid, Side side,
                          int ncomp, double t0, double dt, int order) {
  validate(grid);
  if (!(dt > 0.0)) throw std::invalid_argument("init_history: dt must be > 0");
  if (order != 2 && order != 4) throw std::invalid_argument("init_history: order");
  if (grid.ghost < order / 2)
    throw std::invalid_argument("init_history: ghost width below scheme order/2");

  FieldHistory h;
  h.grid = grid;
  h.ncomp = ncomp;
  h.order = order;
  h.dt = dt;
  h.t_n = t0;
  h.E.assign(h.levels(), std::vector<ScalarField>(ncomp, ScalarField(grid)));
  h.psi.assign(ncomp, ScalarField(grid));
  if (order == 4) h.phi.assign(ncomp, ScalarField(grid));

  const int gx = grid.ghost_x(), gy = grid.ghost_y();
  for (int l = 0; l < h.levels(); ++l) {
    const double t = t0 - l * dt;
    for (int j = -gy; j <= grid.n[1] + gy; ++j)
      for (int i = -gx; i <= grid.n[0] + gx; ++i) {
        const auto s = exact.side(side, grid.x(i), grid.y(j), t);
        h.E[l][0].at(i, j) = s.Ex;
        if (ncomp == 2) h.E[l][1].at(i, j) = s.Ey;
        if (l == 0) {
          h.psi[0].at(i, j) = s.psi_x;
          if (ncomp == 2) h.psi[1].at(i, j) = s.psi_y;
          if (order == 4) {
            h.phi[0].at(i, j) = s.phi_x;
            if (ncomp == 2) h.phi[1].at(i, j) = s.phi_y;
          }
        }
      }
  }
  return h;
}

void advance_interior(const FieldHistory& h, const SchemeConfig& cfg,
                      std::vector<ScalarField>& e_new) {
  const auto& g = h.grid;
  const double dt2 = h.dt * h.dt;
  const double c2 = cfg.c * cfg.c;
  const double a = cfg.material.omega_p * cfg.material.omega_p / cfg.material.eps_r;
  const double ag = a * cfg.material.gamma;
  const int nx = g.n[0], ny = g.dims == 2 ? g.n[1] : 0;

  if (static_cast<int>(e_new.size()) != h.ncomp)
    e_new.assign(h.ncomp, ScalarField(g));

  for (int c = 0; c < h.ncomp; ++c) {
    const auto& e0 = h.E[0][c];
    const auto& e1 = h.E[1][c];
    const auto& ps = h.psi[c];
    auto& out = e_new[c];
    if (cfg.order == 2) {
      const double ax = 1.0 / (g.h[0] * g.h[0]);
      const double ay = g.dims == 2 ? 1.0 / (g.h[1] * g.h[1]) : 0.0;
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
          double lap = ax * (e0.at(i + 1, j) - 2.0 * e0.at(i, j) + e0.at(i - 1, j));
          if (g.dims == 2)
            lap += ay * (e0.at(i, j + 1) - 2.0 * e0.at(i, j) + e0.at(i, j - 1));
          out.at(i, j) = 2.0 * e0.at(i, j) - e1.at(i, j) +
                         dt2 * (c2 * lap - a * e0.at(i, j) + ag * ps.at(i, j));
        }
    } else {
      // Second-order Laplacian on an extended ring so it can be re-applied.
      ScalarField lap2(g);
      {
        const double ax = 1.0 / (g.h[0] * g.h[0]);
        const double ay = g.dims == 2 ? 1.0 / (g.h[1] * g.h[1]) : 0.0;
        const int pj = g.dims == 2 ? 1 : 0;
        for (int j = -pj; j <= ny + pj; ++j)
          for (int i = -1; i <= nx + 1; ++i) {
            double r = ax * (e0.at(i + 1, j) - 2.0 * e0.at(i, j) + e0.at(i - 1, j));
            if (g.dims == 2)
              r += ay * (e0.at(i, j + 1) - 2.0 * e0.at(i, j) + e0.at(i, j - 1));
            lap2.at(i, j) = r;
          }
      }
      const auto& ph = h.phi[c];
      const double dt4_12 = dt2 * dt2 / 12.0;
      const double c4 = c2 * c2;
      const double ax = 1.0 / (g.h[0] * g.h[0]);
      const double ay = g.dims == 2 ? 1.0 / (g.h[1] * g.h[1]) : 0.0;
      const double a4x = 1.0 / (12.0 * g.h[0] * g.h[0]);
      const double a4y = g.dims == 2 ? 1.0 / (12.0 * g.h[1] * g.h[1]) : 0.0;
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
          double lap4 = a4x * (-e0.at(i + 2, j) + 16.0 * e0.at(i + 1, j) -
                               30.0 * e0.at(i, j) + 16.0 * e0.at(i - 1, j) -
                               e0.at(i - 2, j));
          if (g.dims == 2)
            lap4 += a4y * (-e0.at(i, j + 2) + 16.0 * e0.at(i, j + 1) -
                           30.0 * e0.at(i, j) + 16.0 * e0.at(i, j - 1) -
                           e0.at(i, j - 2));
          double bih = ax * (lap2.at(i + 1, j) - 2.0 * lap2.at(i, j) + lap2.at(i - 1, j));
          if (g.dims == 2)
            bih += ay * (lap2.at(i, j + 1) - 2.0 * lap2.at(i, j) + lap2.at(i, j - 1));
          double lap_psi = ax * (ps.at(i + 1, j) - 2.0 * ps.at(i, j) + ps.at(i - 1, j));
          if (g.dims == 2)
            lap_psi += ay * (ps.at(i, j + 1) - 2.0 * ps.at(i, j) + ps.at(i, j - 1));
          out.at(i, j) =
              2.0 * e0.at(i, j) - e1.at(i, j) +
              dt2 * (c2 * lap4 - a * e0.at(i, j) + ag * ps.at(i, j)) +
              dt4_12 * (c4 * bih - 2.0 * c2 * a * lap2.at(i, j) +
                        2.0 * c2 * ag * lap_psi + a * a * e0.at(i, j) -
                        2.0 * a * ag * ps.at(i, j) + ag * ag * ph.at(i, j));
        }
    }
  }
}

double psi_enew_coeff(const FieldHistory& h) { return h.order == 2 ? h.dt / 2.0 : h.dt / 3.0; }

ScalarField psi_known_part(const FieldHistory& h, const SchemeConfig& cfg, int comp) {
  const auto& g = h.grid;
  const double G = cfg.material.gamma * h.dt;
  const double eg = std::exp(-G);
  ScalarField out(g);
  const size_t total = out.v.size();
  if (cfg.order == 2) {
    for (size_t m = 0; m < total; ++m)
      out.v[m] = 0.5 * h.dt * eg * h.E[0][comp].v[m] + eg * h.psi[comp].v[m];
    return out;
  }
  const double e2 = eg * eg, e3 = e2 * eg;
  for (size_t m = 0; m < total; ++m)
    out.v[m] = eg * h.psi[comp].v[m] +
               eg * h.dt *
                   (-e3 / 24.0 * h.E[3][comp].v[m] + 5.0 * e2 / 24.0 * h.E[2][comp].v[m] -
                    11.0 * eg / 24.0 * h.E[1][comp].v[m] + 23.0 / 24.0 * h.E[0][comp].v[m]);
  return out;
}

ScalarField phi_new(const FieldHistory& h, const SchemeConfig& cfg, int comp) {
  if (cfg.order != 4) throw std::invalid_argument("phi_new: only defined for order 4");
  const auto& g = h.grid;
  const double G = cfg.material.gamma * h.dt;
  const double eg = std::exp(-G);
  const double e2 = eg * eg, e3 = e2 * eg, e4 = e3 * eg;
  const double dt2 = h.dt * h.dt;
  ScalarField out(g);
  for (size_t m = 0; m < out.v.size(); ++m)
    out.v[m] = eg * h.phi[comp].v[m] + h.dt * eg * h.psi[comp].v[m] +
               dt2 * (-e4 / 24.0 * h.E[3][comp].v[m] + e3 / 6.0 * h.E[2][comp].v[m] -
                      7.0 * e2 / 24.0 * h.E[1][comp].v[m] +
                      2.0 * eg / 3.0 * h.E[0][comp].v[m]);
  return out;
}

void commit_step(FieldHistory& h, const SchemeConfig& cfg, std::vector<ScalarField>& e_new) {
  const bool dispersive = cfg.material.dispersive();
  const double cpsi = psi_enew_coeff(h);
  for (int c = 0; c < h.ncomp; ++c) {
    if (dispersive) {
      if (cfg.order == 4) h.phi[c] = phi_new(h, cfg, c);
      ScalarField pk = psi_known_part(h, cfg, c);
      for (size_t m = 0; m < pk.v.size(); ++m)
        h.psi[c].v[m] = cpsi * e_new[c].v[m] + pk.v[m];
    }
    // Recycle the oldest level's storage for the incoming one.
    std::swap(h.E.back()[c], e_new[c]);
  }
  std::rotate(h.E.rbegin(), h.E.rbegin() + 1, h.E.rend());
  h.t_n += h.dt;
}

void step(FieldHistory& h, const SchemeConfig& cfg, const GhostFill& ghost_fill) {
  std::vector<ScalarField> e_new(h.ncomp, ScalarField(h.grid));
  advance_interior(h, cfg, e_new);
  ghost_fill(e_new, h.t_n + h.dt);
  commit_step(h, cfg, e_new);
}

Rc4QuadratureWeights quadrature_weights_rc4() {
  Rc4QuadratureWeights w;
  w.open_start = {1.0 / 3.0, 31.0 / 24.0, 5.0 / 6.0, 25.0 / 24.0};
  w.tail = 1.0;
  w.last_interval = {9.0 / 24.0, 19.0 / 24.0, -5.0 / 24.0, 1.0 / 24.0};
  w.centered = {-1.0 / 24.0, 13.0 / 24.0, 13.0 / 24.0, -1.0 / 24.0};
  return w;
}

}  // namespace rcfdtd
