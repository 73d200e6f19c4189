#include "rcfdtd/interface.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "rcfdtd/errors.hpp"

namespace rcfdtd {

Eigen::VectorXd GhostSystem::solve() const {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw NumericalError("ghost system singular");
  return lu.solve(rhs);
}

namespace {

// Offset stencil in (dx, dy).
using Stencil = std::map<std::pair<int, int>, double>;

Stencil st_id() { return {{{0, 0}, 1.0}}; }

Stencil st_d0(int axis, double h) {
  const int di = axis == 0 ? 1 : 0, dj = axis == 0 ? 0 : 1;
  return {{{-di, -dj}, -0.5 / h}, {{di, dj}, 0.5 / h}};
}

Stencil st_d0_4(int axis, double h) {
  const int di = axis == 0 ? 1 : 0, dj = axis == 0 ? 0 : 1;
  return {{{-2 * di, -2 * dj}, 1.0 / (12.0 * h)},
          {{-di, -dj}, -8.0 / (12.0 * h)},
          {{di, dj}, 8.0 / (12.0 * h)},
          {{2 * di, 2 * dj}, -1.0 / (12.0 * h)}};
}

Stencil st_dpm(int axis, double h) {
  const int di = axis == 0 ? 1 : 0, dj = axis == 0 ? 0 : 1;
  const double a = 1.0 / (h * h);
  return {{{-di, -dj}, a}, {{0, 0}, -2.0 * a}, {{di, dj}, a}};
}

Stencil st_dpm4(int axis, double h) {
  const int di = axis == 0 ? 1 : 0, dj = axis == 0 ? 0 : 1;
  const double a = 1.0 / (12.0 * h * h);
  return {{{-2 * di, -2 * dj}, -a},
          {{-di, -dj}, 16.0 * a},
          {{0, 0}, -30.0 * a},
          {{di, dj}, 16.0 * a},
          {{2 * di, 2 * dj}, -a}};
}

Stencil add(Stencil a, const Stencil& b) {
  for (const auto& [k, v] : b) a[k] += v;
  return a;
}

Stencil scale(Stencil a, double s) {
  for (auto& [k, v] : a) v *= s;
  return a;
}

Stencil compose(const Stencil& a, const Stencil& b) {
  Stencil r;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b)
      r[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
  return r;
}

Stencil st_lap2(const StructuredGrid& g) { return add(st_dpm(0, g.h[0]), st_dpm(1, g.h[1])); }
Stencil st_lap4(const StructuredGrid& g) { return add(st_dpm4(0, g.h[0]), st_dpm4(1, g.h[1])); }

enum FieldKind { kE = 0, kPsi = 1, kPhi = 2 };

struct Term {
  int comp;  // 0 = x, 1 = y
  int field;
  Stencil st;  // prefactor and row scaling folded in
};

// One side's functional for interface condition `cond`; the assembled jump
// is [left functional] - [right functional].  Rows are premultiplied by a
// power of h so the system stays well conditioned under refinement.
std::vector<Term> condition_terms(int cond, const MaterialParams& m, const StructuredGrid& g,
                                  int order) {
  const double mu = m.mu_r, er = m.eps_r;
  const double wp2 = m.omega_p * m.omega_p;
  const double ga = m.gamma;
  const double h = g.h[0];
  const double im = 1.0 / mu;
  const double iem = 1.0 / (er * mu);

  auto d0x = order == 2 ? st_d0(0, g.h[0]) : st_d0_4(0, g.h[0]);
  auto d0y = order == 2 ? st_d0(1, g.h[1]) : st_d0_4(1, g.h[1]);
  auto lap = order == 2 ? st_lap2(g) : st_lap4(g);
  auto lap2 = st_lap2(g);
  auto d0x2 = st_d0(0, g.h[0]);
  auto d0y2 = st_d0(1, g.h[1]);

  std::vector<Term> terms;
  auto push = [&](int comp, int field, Stencil st, double pre) {
    if (pre == 0.0) return;
    terms.push_back({comp, field, scale(std::move(st), pre)});
  };

  switch (cond) {
    case 0:  // [div E] = 0
      push(0, kE, d0x, h);
      push(1, kE, d0y, h);
      break;
    case 1:  // [mu^-1 curl E] = 0
      push(0, kE, d0y, im * h);
      push(1, kE, d0x, -im * h);
      break;
    case 2:  // [mu^-1 lap Ex] = 0
      push(0, kE, lap, im * h * h);
      break;
    case 3:  // [(er mu)^-1 (lap Ey - mu wp^2 Ey + mu wp^2 ga psi_y)] = 0
      push(1, kE, lap, iem * h * h);
      push(1, kE, st_id(), -iem * mu * wp2 * h * h);
      push(1, kPsi, st_id(), iem * mu * wp2 * ga * h * h);
      break;
    case 4: {  // [mu^-1 (dx lap Ex + dy lap Ey)] = 0
      const double s = im * h * h * h;
      push(0, kE, compose(d0x2, lap2), s);
      push(1, kE, compose(d0y2, lap2), s);
      break;
    }
    case 5: {  // [mu^-1 (er mu)^-1 (dy W_x - dx W_y)] with W = lap E - mu wp^2 E + mu wp^2 ga psi
      const double s = im * iem * h * h * h;
      push(0, kE, compose(d0y2, lap2), s);
      push(0, kE, d0y2, -s * mu * wp2);
      push(0, kPsi, d0y2, s * mu * wp2 * ga);
      push(1, kE, compose(d0x2, lap2), -s);
      push(1, kE, d0x2, s * mu * wp2);
      push(1, kPsi, d0x2, -s * mu * wp2 * ga);
      break;
    }
    case 6: {  // [er (er mu)^-2 lap W_x] = 0
      const double s = er * iem * iem * h * h * h * h;
      push(0, kE, compose(lap2, lap2), s);
      push(0, kE, lap2, -s * mu * wp2);
      push(0, kPsi, lap2, s * mu * wp2 * ga);
      break;
    }
    case 7: {  // [(er mu)^-2 (lap^2 Ey + 2 mu wp^2 (ga lap psi_y - lap Ey)
               //             + mu^2 wp^4 (Ey - 2 ga psi_y + ga^2 phi_y))] = 0
      const double s = iem * iem * h * h * h * h;
      push(1, kE, compose(lap2, lap2), s);
      push(1, kE, lap2, -2.0 * s * mu * wp2);
      push(1, kPsi, lap2, 2.0 * s * mu * wp2 * ga);
      push(1, kE, st_id(), s * mu * mu * wp2 * wp2);
      push(1, kPsi, st_id(), -2.0 * s * mu * mu * wp2 * wp2 * ga);
      push(1, kPhi, st_id(), s * mu * mu * wp2 * wp2 * ga * ga);
      break;
    }
    default:
      throw std::logic_error("condition_terms: bad index");
  }
  return terms;
}

}  // namespace

// Extended precision for assembly and the tridiagonal solve: the row sums
// cancel heavily, and their rounding bias would otherwise accumulate across
// thousands of steps into a visible max-norm error floor.
using LReal = long double;
using LMat = Eigen::Matrix<LReal, Eigen::Dynamic, Eigen::Dynamic>;
using LVec = Eigen::Matrix<LReal, Eigen::Dynamic, 1>;

struct InterfaceAssembler {
  const TwoDomainProblem& p;
  int order;
  int nu;                                    // unknowns per row: 4 * ghost rings
  std::vector<Term> terms[2][8];             // [side][cond]
  int iface_i[2];                            // interface x-index per side
  int dir[2];                                // ghost direction per side

  explicit InterfaceAssembler(const TwoDomainProblem& prob)
      : p(prob), order(prob.order_), nu(order == 2 ? 4 : 8) {
    const int ncond = order == 2 ? 4 : 8;
    for (int s = 0; s < 2; ++s) {
      const auto& g = p.hist_[s].grid;
      iface_i[s] = s == 0 ? g.n[0] : 0;
      dir[s] = s == 0 ? 1 : -1;
      for (int c = 0; c < ncond; ++c)
        terms[s][c] = condition_terms(c, p.cfg_[s].material, g, order);
    }
  }

  static int unknown_index(int ring, int side, int comp) {
    return 4 * (ring - 1) + 2 * side + comp;
  }

  // Assemble the conditions at row j.  diag/sub/sup hold coefficients on the
  // unknowns of rows j, j-1, j+1.
  void row(int j, LMat& diag, LMat& sub, LMat& sup, LVec& rhs, bool per_node) const {
    const int ncond = nu == 4 ? 4 : 8;
    diag.setZero(ncond, nu);
    sub.setZero(ncond, nu);
    sup.setZero(ncond, nu);
    rhs.setZero(ncond);
    const int ny = p.hist_[0].grid.n[1];
    const int ghost = p.hist_[0].grid.ghost;

    for (int s = 0; s < 2; ++s) {
      const LReal sign = s == 0 ? 1.0 : -1.0;
      const LReal cpsi = psi_enew_coeff(p.hist_[s]);
      const auto& pend = p.pending_[s];
      const auto& psik = p.psi_known_[s];
      const auto& phin = p.phi_new_[s];
      for (int k = 0; k < ncond; ++k) {
        for (const auto& term : terms[s][k]) {
          for (const auto& [off, w] : term.st) {
            const int i = iface_i[s] + off.first;
            const int jj = j + off.second;
            const LReal coeff = sign * static_cast<LReal>(w);
            const int ring = dir[s] * off.first;
            const bool unknown = ring >= 1 && ring <= ghost && jj >= 0 && jj <= ny;
            LReal known_value = 0.0;
            LReal matrix_coeff = 0.0;
            switch (term.field) {
              case kE:
                if (unknown)
                  matrix_coeff = coeff;
                else
                  known_value = pend[term.comp].at(i, jj);
                break;
              case kPsi:
                // psi^{n+1} = cpsi E^{n+1} + known part
                if (unknown)
                  matrix_coeff = coeff * cpsi;
                else
                  known_value = cpsi * static_cast<LReal>(pend[term.comp].at(i, jj));
                rhs(k) -= coeff * static_cast<LReal>(psik[term.comp].at(i, jj));
                break;
              case kPhi:
                known_value = phin[term.comp].at(i, jj);
                break;
            }
            if (matrix_coeff != 0.0) {
              const int col = unknown_index(ring, s, term.comp);
              if (off.second == 0 || per_node) {
                // Per-node systems treat neighbor-row ghosts as data.
                if (off.second == 0)
                  diag(k, col) += matrix_coeff;
                else
                  rhs(k) -= matrix_coeff * static_cast<LReal>(pend[term.comp].at(i, jj));
              } else if (off.second == 1) {
                sup(k, col) += matrix_coeff;
              } else if (off.second == -1) {
                sub(k, col) += matrix_coeff;
              } else {
                throw std::logic_error("interface stencil reaches ghosts beyond row +-1");
              }
            }
            if (known_value != 0.0) rhs(k) -= coeff * known_value;
          }
        }
      }
    }
  }
};

namespace {

void check_conforming(const DomainSpec& left, const DomainSpec& right, int order) {
  const auto& gl = left.grid;
  const auto& gr = right.grid;
  if (gl.dims != 2 || gr.dims != 2)
    throw std::invalid_argument("two-domain problem requires 2D grids");
  if (gl.n[1] != gr.n[1] || gl.h[1] != gr.h[1] || gl.origin[1] != gr.origin[1])
    throw std::invalid_argument("two-domain problem: y-node sets must match");
  const double xm_l = gl.x(gl.n[0]);
  const double xm_r = gr.x(0);
  if (std::abs(xm_l - xm_r) > 1e-12 * std::max(1.0, std::abs(xm_l)))
    throw std::invalid_argument("two-domain problem: grids must share the interface column");
  if (gl.ghost != order / 2 || gr.ghost != order / 2)
    throw std::invalid_argument("two-domain problem: ghost width must equal order/2");
}

}  // namespace

TwoDomainProblem::TwoDomainProblem(const DomainSpec& left, const DomainSpec& right, int order,
                                   double dt)
    : order_(order), dt_(dt) {
  check_conforming(left, right, order);
  validate(left.grid);
  validate(right.grid);
  cfg_[0] = make_scheme(order, left.material);
  cfg_[1] = make_scheme(order, right.material);
  x_mid_ = left.grid.x(left.grid.n[0]);
  hist_[0].grid = left.grid;
  hist_[1].grid = right.grid;
}

void TwoDomainProblem::init(const ExactSolution& exact, double t0) {
  hist_[0] = init_history(exact, hist_[0].grid, Side::left, 2, t0, dt_, order_);
  hist_[1] = init_history(exact, hist_[1].grid, Side::right, 2, t0, dt_, order_);
  for (int s = 0; s < 2; ++s) {
    pending_[s].assign(2, ScalarField(hist_[s].grid));
    psi_known_[s].assign(2, ScalarField(hist_[s].grid));
    phi_new_[s].assign(2, ScalarField(hist_[s].grid));
  }
  in_step_ = false;
}

void TwoDomainProblem::begin_step() {
  if (hist_[0].E.empty()) throw std::logic_error("begin_step: call init first");
  if (in_step_) throw std::logic_error("begin_step: previous step not committed");
  for (int s = 0; s < 2; ++s) {
    advance_interior(hist_[s], cfg_[s], pending_[s]);
    if (cfg_[s].material.dispersive()) {
      for (int c = 0; c < 2; ++c) {
        psi_known_[s][c] = psi_known_part(hist_[s], cfg_[s], c);
        if (order_ == 4) phi_new_[s][c] = phi_new(hist_[s], cfg_[s], c);
      }
    }
  }
  project_interface_column();
  in_step_ = true;
}

// The ghost systems impose derivative-level jumps only, so the duplicated
// interface-column values carry two modes nothing anchors: the difference of
// the tangential copies and the difference weighted by the material response.
// Tie them down with the two time-integrated members of the condition
// hierarchy, [E_y] = 0 and [d/dt D_x] = [eps_r dE_x/dt + wp^2 psi_x] = 0,
// applied as a minimum-norm correction of the two copies.  Left unpinned,
// their roundoff-seeded drift grows secularly and floors the max error.
void TwoDomainProblem::project_interface_column() {
  const int ny = hist_[0].grid.n[1];
  const int il = hist_[0].grid.n[0];
  const int ir = 0;
  const double dt = dt_;
  const double clead = order_ == 2 ? 1.5 : 25.0 / 12.0;

  double a[2], backward[2];
  for (int j = 0; j <= ny; ++j) {
    // Tangential continuity: replace both copies with their average.
    const double ey_l = pending_[0][1].at(il, j);
    const double ey_r = pending_[1][1].at(ir, j);
    const double ey = 0.5 * (ey_l + ey_r);
    pending_[0][1].at(il, j) = ey;
    pending_[1][1].at(ir, j) = ey;

    // Normal-D rate continuity, with psi^{n+1} eliminated by its recursion.
    for (int s = 0; s < 2; ++s) {
      const int i = s == 0 ? il : ir;
      const auto& m = cfg_[s].material;
      const double wp2 = m.omega_p * m.omega_p;
      const double cpsi = psi_enew_coeff(hist_[s]);
      double hist_part;
      if (order_ == 2)
        hist_part = (-4.0 * hist_[s].E[0][0].at(i, j) + hist_[s].E[1][0].at(i, j)) /
                    (2.0 * dt);
      else
        hist_part = (-4.0 * hist_[s].E[0][0].at(i, j) + 3.0 * hist_[s].E[1][0].at(i, j) -
                     4.0 / 3.0 * hist_[s].E[2][0].at(i, j) +
                     0.25 * hist_[s].E[3][0].at(i, j)) /
                    dt;
      a[s] = m.eps_r * clead / dt + (m.dispersive() ? wp2 * cpsi : 0.0);
      backward[s] = m.eps_r * hist_part +
                    (m.dispersive() ? wp2 * psi_known_[s][0].at(i, j) : 0.0);
    }
    const double ex_l = pending_[0][0].at(il, j);
    const double ex_r = pending_[1][0].at(ir, j);
    const double r = (a[0] * ex_l + backward[0]) - (a[1] * ex_r + backward[1]);
    const double denom = a[0] * a[0] + a[1] * a[1];
    pending_[0][0].at(il, j) = ex_l - a[0] * r / denom;
    pending_[1][0].at(ir, j) = ex_r + a[1] * r / denom;
  }
}

void TwoDomainProblem::fill_outer(const ExactSolution& exact) {
  fill_outer_boundary(*this, exact, pending_time());
}

void TwoDomainProblem::solve_interface() {
  if (!in_step_) throw std::logic_error("solve_interface: call begin_step first");
  const InterfaceAssembler as(*this);
  const int ny = hist_[0].grid.n[1];
  const int m = ny + 1;

  std::vector<LMat> diag(m), sub(m), sup(m);
  std::vector<LVec> rhs(m);
  for (int j = 0; j <= ny; ++j)
    as.row(j, diag[j], sub[j], sup[j], rhs[j], /*per_node=*/false);

  // Block-tridiagonal elimination down the interface.
  std::vector<Eigen::FullPivLU<LMat>> fact(m);
  const auto factorize = [](Eigen::FullPivLU<LMat>& lu, const LMat& a) {
    lu.compute(a);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw NumericalError("ghost system singular");
  };
  factorize(fact[0], diag[0]);
  for (int j = 1; j <= ny; ++j) {
    const LMat w = sub[j] * fact[j - 1].solve(sup[j - 1]);
    const LVec wr = sub[j] * fact[j - 1].solve(rhs[j - 1]);
    diag[j] -= w;
    rhs[j] -= wr;
    factorize(fact[j], diag[j]);
  }
  std::vector<LVec> sol(m);
  sol[ny] = fact[ny].solve(rhs[ny]);
  for (int j = ny - 1; j >= 0; --j) sol[j] = fact[j].solve(rhs[j] - sup[j] * sol[j + 1]);

  for (int j = 0; j <= ny; ++j)
    for (int s = 0; s < 2; ++s)
      for (int ring = 1; ring <= hist_[s].grid.ghost; ++ring)
        for (int c = 0; c < 2; ++c) {
          const int i = as.iface_i[s] + as.dir[s] * ring;
          pending_[s][c].at(i, j) = static_cast<double>(
              sol[j](InterfaceAssembler::unknown_index(ring, s, c)));
        }
}

void TwoDomainProblem::commit() {
  if (!in_step_) throw std::logic_error("commit: call begin_step first");
  for (int s = 0; s < 2; ++s) commit_step(hist_[s], cfg_[s], pending_[s]);
  in_step_ = false;
}

void TwoDomainProblem::step(const ExactSolution& boundary) {
  begin_step();
  fill_outer(boundary);
  solve_interface();
  commit();
}

namespace {

GhostSystem assemble_per_node(const TwoDomainProblem& p, int j_y) {
  const InterfaceAssembler as(p);
  LMat diag, sub, sup;
  LVec rhs;
  as.row(j_y, diag, sub, sup, rhs, /*per_node=*/true);
  GhostSystem sys;
  sys.matrix = diag.cast<double>();
  sys.rhs = rhs.cast<double>();
  return sys;
}

}  // namespace

GhostSystem assemble_rc2(const TwoDomainProblem& p, int j_y) {
  if (p.order() != 2) throw std::invalid_argument("assemble_rc2: problem is not order 2");
  return assemble_per_node(p, j_y);
}

GhostSystem assemble_rc4(const TwoDomainProblem& p, int j_y) {
  if (p.order() != 4) throw std::invalid_argument("assemble_rc4: problem is not order 4");
  return assemble_per_node(p, j_y);
}

Eigen::VectorXd ghost_values(const TwoDomainProblem& p, int j_y) {
  if (p.pending(Side::left).empty())
    throw std::logic_error("ghost_values: problem not initialized");
  const int nu = p.order() == 2 ? 4 : 8;
  Eigen::VectorXd out(nu);
  for (int s = 0; s < 2; ++s) {
    const auto& g = p.hist(s == 0 ? Side::left : Side::right).grid;
    const int iface = s == 0 ? g.n[0] : 0;
    const int dir = s == 0 ? 1 : -1;
    for (int ring = 1; ring <= g.ghost; ++ring)
      for (int c = 0; c < 2; ++c)
        out(InterfaceAssembler::unknown_index(ring, s, c)) =
            p.pending(s == 0 ? Side::left : Side::right)[c].at(iface + dir * ring, j_y);
  }
  return out;
}

void fill_outer_boundary(TwoDomainProblem& p, const ExactSolution& exact, double t) {
  for (int sidx = 0; sidx < 2; ++sidx) {
    const Side side = sidx == 0 ? Side::left : Side::right;
    const auto& g = p.hist(side).grid;
    auto& pend = p.pending(side);
    const int gx = g.ghost_x(), gy = g.ghost_y();
    const int nx = g.n[0], ny = g.n[1];
    for (int j = -gy; j <= ny + gy; ++j)
      for (int i = -gx; i <= nx + gx; ++i) {
        // Scheme updates own the strict interior plus the interface column;
        // the interface solve owns ghost columns at interior rows.
        const bool scheme_node =
            j >= 1 && j <= ny - 1 &&
            (side == Side::left ? (i >= 1 && i <= nx) : (i >= 0 && i <= nx - 1));
        const bool iface_ghost =
            j >= 0 && j <= ny && (side == Side::left ? i > nx : i < 0);
        if (scheme_node || iface_ghost) continue;
        const auto v = exact.side(side, g.x(i), g.y(j), t);
        pend[0].at(i, j) = v.Ex;
        pend[1].at(i, j) = v.Ey;
      }
  }
}

}  // namespace rcfdtd
