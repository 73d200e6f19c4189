#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcfdtd/exact.hpp"
#include "rcfdtd/grid_ops.hpp"
#include "rcfdtd/materials.hpp"

namespace rcfdtd {

enum class Case { periodic1d, scatter2d, spp2d };

/// One experiment.  Resolution n means grid points for the 1D periodic case
/// (so n-1 cells across [-pi, pi]) and cells per unit length for the 2D
/// cases on [-1,1] x [0,1].
struct ExperimentConfig {
  Case kase = Case::periodic1d;
  int order = 2;
  int n = 101;
  double t_final = 20.0;
  double cfl_fraction = 0.99;
  MaterialParams material;              // 1D host medium
  MaterialParams mat_left, mat_right;   // 2D subdomains
  double k = 5.0;                       // 1D wavenumber
  double theta_i = M_PI / 5.0;          // scattering incidence angle
  double omega = 0.1;                   // 2D temporal frequency (scaled)
  double amplitude = 1.0;
  std::string out_dir;                  // empty: no CSV output
  std::optional<double> dt_override;
  int record_every = 0;                 // history sampling stride; 0 = auto
};

void validate(const ExperimentConfig& cfg);

ExperimentConfig default_config(Case c, int order);

struct HistoryPoint {
  double t = 0.0, max_err = 0.0;
};

struct RunResult {
  double dt = 0.0;
  double dt_bound = 0.0;  // scheme bound times cfl_fraction
  int steps = 0;
  std::vector<HistoryPoint> history;
  Norms err_ex, err_ey;  // final-time error norms per component
};

RunResult run_periodic_1d(const ExperimentConfig& cfg);
RunResult run_scatter2d(const ExperimentConfig& cfg);
RunResult run_spp2d(const ExperimentConfig& cfg);
RunResult run_case(const ExperimentConfig& cfg);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0, dt = 0.0;
  std::string field, norm;
  double err = 0.0;
  double rate = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_study(const ExperimentConfig& cfg, std::span<const int> n_list);

/// Least-squares exponential rate of the max-error tail over the final third
/// of the history, guarded by a growth-dominance test.
struct GrowthFit {
  double rate = 0.0;    // fitted d(log err)/dt
  double theory = 0.0;  // gamma^3 dt^2 / 12
  double dt = 0.0;
};
GrowthFit growth_study(const ExperimentConfig& cfg);

struct StabilityReport {
  double dt = 0.0;
  std::string binding;  // name of the constraint that set dt
  std::string scan_csv;
};
StabilityReport stability_report(const MaterialParams& m, std::span<const double> h, int order,
                                 const std::string& out_dir);

/// Largest stable time step for the scheme (safety fraction applied).
double scheme_dt_bound(int order, const MaterialParams& m, std::span<const double> h,
                       double safety);

}  // namespace rcfdtd
