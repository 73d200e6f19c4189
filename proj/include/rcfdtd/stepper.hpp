#pragma once

#include <array>
#include <functional>
#include <vector>

#include "rcfdtd/exact.hpp"
#include "rcfdtd/grid.hpp"
#include "rcfdtd/materials.hpp"

namespace rcfdtd {

struct SchemeConfig {
  int order = 2;  // 2 or 4
  MaterialParams material;
  double c = 1.0;  // 1/sqrt(eps_r mu_r)
};

SchemeConfig make_scheme(int order, const MaterialParams& m);

/// Multilevel state: E at times n, n-1 (order 2) or n..n-3 (order 4), plus
/// the convolution fields psi (and phi for order 4) at time n.  All fields
/// share one grid and carry ghost values.
struct FieldHistory {
  StructuredGrid grid;
  int ncomp = 1;
  int order = 2;
  double dt = 0.0;
  double t_n = 0.0;
  std::vector<std::vector<ScalarField>> E;  // E[l][c], l = 0 newest
  std::vector<ScalarField> psi;
  std::vector<ScalarField> phi;  // order 4 only

  int levels() const { return order == 2 ? 2 : 4; }
};

/// Backward time levels filled from the exact solution; psi/phi from its
/// closed-form convolution values at t0.  Ghosts come from the side's own
/// analytic formula.
FieldHistory init_history(const ExactSolution& exact, const StructuredGrid& grid, Side side,
                          int ncomp, double t0, double dt, int order);

/// New-time interior values E^{n+1} on nodes 0..n per axis (ghosts of the
/// output are not touched).
void advance_interior(const FieldHistory& h, const SchemeConfig& cfg,
                      std::vector<ScalarField>& e_new);

/// Known part of the psi update at time n+1: everything except the
/// c_psi * E^{n+1} term (c_psi = dt/2 for order 2, dt/3 for order 4).
ScalarField psi_known_part(const FieldHistory& h, const SchemeConfig& cfg, int comp);
/// Full phi update at time n+1 (it has no E^{n+1} term).
ScalarField phi_new(const FieldHistory& h, const SchemeConfig& cfg, int comp);
double psi_enew_coeff(const FieldHistory& h);

/// Rotate levels in, run the psi/phi recursions on every node including
/// ghosts, advance t_n.  e_new must have valid ghosts; its storage is
/// recycled into the history.
void commit_step(FieldHistory& h, const SchemeConfig& cfg, std::vector<ScalarField>& e_new);

/// One full step for a single grid; ghost_fill receives the new-time fields
/// and the new time.
using GhostFill = std::function<void(std::vector<ScalarField>&, double)>;
void step(FieldHistory& h, const SchemeConfig& cfg, const GhostFill& ghost_fill);

/// Boundary-corrected quadrature weights of the fourth-order convolution
/// rule: open weights on the newest samples, the one-sided rule for the
/// final subinterval, and the centered rule for interior subintervals.
struct Rc4QuadratureWeights {
  std::array<double, 4> open_start;     // on v_0..v_3: 1/3, 31/24, 5/6, 25/24
  double tail;                          // 1 on v_m, m >= 4
  std::array<double, 4> last_interval;  // (dt/24)(9 v0 + 19 v1 - 5 v2 + v3)
  std::array<double, 4> centered;       // (dt/24)(-v_{m-1} + 13 v_m + 13 v_{m+1} - v_{m+2})
};
Rc4QuadratureWeights quadrature_weights_rc4();

}  // namespace rcfdtd
