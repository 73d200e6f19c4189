#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rcfdtd/exact.hpp"
#include "rcfdtd/stepper.hpp"

namespace rcfdtd {

/// Dense compatibility system for one interface node.  Unknown layout, per
/// ghost ring and then left/right ghost columns: [Ex_L, Ey_L, Ex_R, Ey_R]
/// (ring 1, then ring 2 for the fourth-order scheme).
struct GhostSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  Eigen::VectorXd solve() const;  // throws NumericalError when singular
};

struct DomainSpec {
  StructuredGrid grid;
  MaterialParams material;
};

/// Two conforming subdomains meeting at the grid column x = x_mid.  A step
/// proceeds in phases: interior update on both sides, exact Dirichlet data on
/// outer edges/ghosts, the interface ghost solve, then the convolution
/// recursions (commit).  The phases are public so tests can drive them with
/// manufactured states.
class TwoDomainProblem {
 public:
  TwoDomainProblem(const DomainSpec& left, const DomainSpec& right, int order, double dt);

  void init(const ExactSolution& exact, double t0);

  void begin_step();
  void fill_outer(const ExactSolution& exact);
  void solve_interface();
  void commit();
  void step(const ExactSolution& boundary);

  double x_mid() const { return x_mid_; }
  int order() const { return order_; }
  double dt() const { return dt_; }
  double time() const { return hist_[0].t_n; }
  double pending_time() const { return hist_[0].t_n + dt_; }
  int rows() const { return hist_[0].grid.n[1]; }

  FieldHistory& hist(Side s) { return hist_[idx(s)]; }
  const FieldHistory& hist(Side s) const { return hist_[idx(s)]; }
  const SchemeConfig& scheme(Side s) const { return cfg_[idx(s)]; }
  std::vector<ScalarField>& pending(Side s) { return pending_[idx(s)]; }
  const std::vector<ScalarField>& pending(Side s) const { return pending_[idx(s)]; }

 private:
  static int idx(Side s) { return s == Side::left ? 0 : 1; }
  void project_interface_column();

  double x_mid_ = 0.0;
  int order_ = 2;
  double dt_ = 0.0;
  SchemeConfig cfg_[2];
  FieldHistory hist_[2];
  std::vector<ScalarField> pending_[2];
  std::vector<ScalarField> psi_known_[2];
  std::vector<ScalarField> phi_new_[2];
  bool in_step_ = false;

  friend struct InterfaceAssembler;
};

/// Per-node systems; ghost values of neighboring rows entering the wider
/// fourth-order stencils are read from the problem's current pending fields.
GhostSystem assemble_rc2(const TwoDomainProblem& p, int j_y);
GhostSystem assemble_rc4(const TwoDomainProblem& p, int j_y);

/// Current pending ghost values at row j_y in system layout.
Eigen::VectorXd ghost_values(const TwoDomainProblem& p, int j_y);

/// Exact Dirichlet data on every pending node that is neither a scheme
/// update target nor an interface ghost: outer edges, outer ghost halos, and
/// the corner ghosts where the halos meet the interface ghost columns.
void fill_outer_boundary(TwoDomainProblem& p, const ExactSolution& exact, double t);

}  // namespace rcfdtd
