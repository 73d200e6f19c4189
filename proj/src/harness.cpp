#include "rcfdtd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "rcfdtd/csv.hpp"
#include "rcfdtd/errors.hpp"
#include "rcfdtd/interface.hpp"
#include "rcfdtd/stability.hpp"
#include "rcfdtd/stepper.hpp"

namespace rcfdtd {

void validate(const ExperimentConfig& cfg) {
  if (cfg.order != 2 && cfg.order != 4) throw ConfigError("scheme must be rc2 or rc4");
  if (cfg.n < 16) throw ConfigError("resolution must be >= 16");
  if (!(cfg.t_final > 0.0)) throw ConfigError("t_final must be > 0");
  if (!(cfg.cfl_fraction > 0.0 && cfg.cfl_fraction <= 1.0))
    throw ConfigError("cfl_fraction must be in (0, 1]");
  try {
    if (cfg.kase == Case::periodic1d) {
      rcfdtd::validate(cfg.material);
    } else {
      rcfdtd::validate(cfg.mat_left);
      rcfdtd::validate(cfg.mat_right);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.kase != Case::periodic1d && cfg.mat_left.dispersive())
    throw ConfigError("left subdomain must be non-dispersive");
}

ExperimentConfig default_config(Case c, int order) {
  ExperimentConfig cfg;
  cfg.kase = c;
  cfg.order = order;
  const ScalingConvention ct{1e16};
  const MaterialParams silver =
      scale({5.0, 1.0, ev_to_angular(8.9), 1e12 / 17.0}, ct);
  switch (c) {
    case Case::periodic1d:
      cfg.material = {1.0, 1.0, 3.0, 10.0};
      cfg.n = 101;
      cfg.k = 5.0;
      cfg.t_final = 20.0;
      break;
    case Case::scatter2d:
      cfg.mat_left = {1.0, 1.0, 0.0, 0.0};
      cfg.mat_right = silver;
      cfg.omega = 0.1;  // 1000 THz at c_t = 1e16
      cfg.theta_i = M_PI / 5.0;
      cfg.n = 64;
      cfg.t_final = 12.0;
      break;
    case Case::spp2d:
      cfg.mat_left = {1.0, 1.0, 0.0, 0.0};
      cfg.mat_right = silver;
      cfg.omega = 0.06;  // 600 THz
      cfg.n = 64;
      cfg.t_final = 12.0;
      break;
  }
  return cfg;
}

double scheme_dt_bound(int order, const MaterialParams& m, std::span<const double> h,
                       double safety) {
  const double c = m.wave_speed();
  return order == 2 ? rc2_timestep(c, m.omega_p, m.eps_r, m.gamma, h, safety)
                    : rc4_timestep(c, m.omega_p, m.eps_r, m.gamma, h, safety);
}

namespace {

struct StepPlan {
  double dt = 0.0;
  double bound = 0.0;
  int steps = 0;
};

StepPlan plan_steps(const ExperimentConfig& cfg, double bound) {
  StepPlan p;
  p.bound = bound;
  double dt = cfg.dt_override ? *cfg.dt_override : bound;
  if (cfg.dt_override && dt > bound * (1.0 + 1e-12))
    std::cerr << "warning: dt override " << dt << " exceeds stability bound " << bound
              << "\n";
  p.steps = std::max(1, static_cast<int>(std::ceil(cfg.t_final / dt - 1e-9)));
  p.dt = cfg.t_final / p.steps;
  if (!cfg.dt_override && p.dt > bound * (1.0 + 1e-12))
    throw NumericalError("internal: planned dt exceeds the stability bound");
  return p;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

void write_history(const std::string& dir, const std::vector<HistoryPoint>& hist) {
  if (dir.empty()) return;
  CsvWriter w(dir + "/history.csv", {"t", "max_err"});
  for (const auto& p : hist) w.row_numbers({p.t, p.max_err});
}

int auto_stride(const ExperimentConfig& cfg, int steps) {
  if (cfg.record_every > 0) return cfg.record_every;
  if (cfg.kase == Case::periodic1d) return 1;
  return std::max(1, steps / 200);
}

}  // namespace

RunResult run_periodic_1d(const ExperimentConfig& cfg) {
  validate(cfg);
  const MaterialParams& m = cfg.material;
  const SchemeConfig sc = make_scheme(cfg.order, m);

  StructuredGrid g;
  g.dims = 1;
  g.n = {cfg.n - 1, 0};
  g.h = {2.0 * M_PI / (cfg.n - 1), 1.0};
  g.origin = {-M_PI, 0.0};
  g.ghost = cfg.order / 2;
  g.periodic = {true, false};

  const auto roots = dispersion_roots(sc.c, m.omega_p, m.eps_r, m.gamma, cfg.k);
  const PlaneWave1D wave{cfg.amplitude, cfg.k, roots.right_moving, m.gamma};
  const ExactSolution exact = ExactSolution::from(wave);

  const auto plan =
      plan_steps(cfg, scheme_dt_bound(cfg.order, m, std::array{g.h[0]}, cfg.cfl_fraction));
  FieldHistory h = init_history(exact, g, Side::left, 1, 0.0, plan.dt, cfg.order);

  RunResult res;
  res.dt = plan.dt;
  res.dt_bound = plan.bound;
  res.steps = plan.steps;
  res.history.reserve(plan.steps + 1);

  const auto max_err_now = [&](double t) {
    double mx = 0.0;
    for (int i = 0; i <= g.n[0]; ++i)
      mx = std::max(mx, std::abs(h.E[0][0].at(i, 0) - exact.at(g.x(i), 0.0, t).Ex));
    return mx;
  };
  res.history.push_back({0.0, max_err_now(0.0)});

  const GhostFill wrap = [](std::vector<ScalarField>& fields, double) {
    for (auto& f : fields) fill_periodic(f);
  };
  for (int n = 1; n <= plan.steps; ++n) {
    step(h, sc, wrap);
    const double err = max_err_now(h.t_n);
    if (!std::isfinite(err)) throw NumericalError("NaN detected in periodic 1D run");
    res.history.push_back({h.t_n, err});
  }

  ScalarField errf(g);
  for (int i = 0; i <= g.n[0]; ++i)
    errf.at(i, 0) = h.E[0][0].at(i, 0) - exact.at(g.x(i), 0.0, h.t_n).Ex;
  res.err_ex = norms(errf);

  ensure_dir(cfg.out_dir);
  write_history(cfg.out_dir, res.history);
  if (!cfg.out_dir.empty()) {
    CsvWriter w(cfg.out_dir + "/snapshot.csv", {"x", "y", "Ex", "Ey", "errEx", "errEy"});
    for (int i = 0; i <= g.n[0]; ++i)
      w.row_numbers({g.x(i), 0.0, h.E[0][0].at(i, 0), 0.0, errf.at(i, 0), 0.0});
  }
  return res;
}

namespace {

struct TwoDomainSetup {
  DomainSpec left, right;
  ExactSolution exact;
};

TwoDomainSetup make_two_domain(const ExperimentConfig& cfg) {
  const int N = cfg.n;
  const double h = 1.0 / N;
  StructuredGrid gl;
  gl.dims = 2;
  gl.n = {N, N};
  gl.h = {h, h};
  gl.origin = {-1.0, 0.0};
  gl.ghost = cfg.order / 2;
  StructuredGrid gr = gl;
  gr.origin = {0.0, 0.0};

  if (cfg.kase == Case::scatter2d) {
    const auto sol = scattering_build(cfg.theta_i, cfg.omega, cfg.amplitude, 0.0,
                                      cfg.mat_left, cfg.mat_right);
    return {{gl, cfg.mat_left}, {gr, cfg.mat_right}, ExactSolution::from(sol)};
  }
  const auto sol = spp_build(cfg.omega, cfg.amplitude, 0.0, cfg.mat_left, cfg.mat_right);
  return {{gl, cfg.mat_left}, {gr, cfg.mat_right}, ExactSolution::from(sol)};
}

struct ErrAccum {
  double sum1 = 0.0, sum2 = 0.0, mx = 0.0;
  long count_cells = 0;
};

RunResult run_two_domain(const ExperimentConfig& cfg) {
  validate(cfg);
  auto setup = make_two_domain(cfg);
  const double h = setup.left.grid.h[0];
  const std::array<double, 2> hs{h, h};
  const double bound =
      std::min(scheme_dt_bound(cfg.order, cfg.mat_left, hs, cfg.cfl_fraction),
               scheme_dt_bound(cfg.order, cfg.mat_right, hs, cfg.cfl_fraction));
  const auto plan = plan_steps(cfg, bound);

  TwoDomainProblem problem(setup.left, setup.right, cfg.order, plan.dt);
  problem.init(setup.exact, 0.0);

  RunResult res;
  res.dt = plan.dt;
  res.dt_bound = plan.bound;
  res.steps = plan.steps;

  const auto max_err_now = [&](double t) {
    double mx = 0.0;
    for (const Side s : {Side::left, Side::right}) {
      const auto& hist = problem.hist(s);
      const auto& g = hist.grid;
      for (int j = 0; j <= g.n[1]; ++j)
        for (int i = 0; i <= g.n[0]; ++i) {
          const auto v = setup.exact.side(s, g.x(i), g.y(j), t);
          mx = std::max(mx, std::abs(hist.E[0][0].at(i, j) - v.Ex));
          mx = std::max(mx, std::abs(hist.E[0][1].at(i, j) - v.Ey));
        }
    }
    return mx;
  };

  const int stride = auto_stride(cfg, plan.steps);
  res.history.push_back({0.0, max_err_now(0.0)});
  for (int n = 1; n <= plan.steps; ++n) {
    problem.step(setup.exact);
    if (n % stride == 0 || n == plan.steps) {
      const double err = max_err_now(problem.time());
      if (!std::isfinite(err)) throw NumericalError("NaN detected in two-domain run");
      res.history.push_back({problem.time(), err});
    }
  }

  // Final error norms per component, both subdomains merged; the divisor is
  // the product of total cell counts as in the printed norms.
  ErrAccum acc[2];
  for (const Side s : {Side::left, Side::right}) {
    const auto& hist = problem.hist(s);
    const auto& g = hist.grid;
    for (int c = 0; c < 2; ++c)
      for (int j = 0; j <= g.n[1]; ++j)
        for (int i = 0; i <= g.n[0]; ++i) {
          const auto v = setup.exact.side(s, g.x(i), g.y(j), problem.time());
          const double e = std::abs(hist.E[0][c].at(i, j) - (c == 0 ? v.Ex : v.Ey));
          acc[c].sum1 += e;
          acc[c].sum2 += e * e;
          acc[c].mx = std::max(acc[c].mx, e);
        }
  }
  const auto& gl = problem.hist(Side::left).grid;
  const auto& gr = problem.hist(Side::right).grid;
  const double divisor = static_cast<double>(gl.n[0] + gr.n[0]) * gl.n[1];
  res.err_ex = {acc[0].sum1 / divisor, std::sqrt(acc[0].sum2 / divisor), acc[0].mx};
  res.err_ey = {acc[1].sum1 / divisor, std::sqrt(acc[1].sum2 / divisor), acc[1].mx};

  ensure_dir(cfg.out_dir);
  write_history(cfg.out_dir, res.history);
  if (!cfg.out_dir.empty()) {
    CsvWriter w(cfg.out_dir + "/snapshot.csv", {"x", "y", "Ex", "Ey", "errEx", "errEy"});
    for (const Side s : {Side::left, Side::right}) {
      const auto& hist = problem.hist(s);
      const auto& g = hist.grid;
      for (int j = 0; j <= g.n[1]; ++j)
        for (int i = 0; i <= g.n[0]; ++i) {
          const auto v = setup.exact.side(s, g.x(i), g.y(j), problem.time());
          w.row_numbers({g.x(i), g.y(j), hist.E[0][0].at(i, j), hist.E[0][1].at(i, j),
                         hist.E[0][0].at(i, j) - v.Ex, hist.E[0][1].at(i, j) - v.Ey});
        }
    }
  }
  return res;
}

}  // namespace

RunResult run_scatter2d(const ExperimentConfig& cfg) {
  if (cfg.kase != Case::scatter2d) throw ConfigError("run_scatter2d: wrong case");
  return run_two_domain(cfg);
}

RunResult run_spp2d(const ExperimentConfig& cfg) {
  if (cfg.kase != Case::spp2d) throw ConfigError("run_spp2d: wrong case");
  return run_two_domain(cfg);
}

RunResult run_case(const ExperimentConfig& cfg) {
  switch (cfg.kase) {
    case Case::periodic1d:
      return run_periodic_1d(cfg);
    case Case::scatter2d:
      return run_scatter2d(cfg);
    case Case::spp2d:
      return run_spp2d(cfg);
  }
  throw ConfigError("unknown case");
}

ConvergenceReport convergence_study(const ExperimentConfig& cfg, std::span<const int> n_list) {
  if (n_list.size() < 3) throw ConfigError("convergence_study: need at least 3 resolutions");
  ConvergenceReport report;
  const bool two_d = cfg.kase != Case::periodic1d;
  const std::vector<std::string> fields =
      two_d ? std::vector<std::string>{"Ex", "Ey"} : std::vector<std::string>{"Ex"};
  const std::vector<std::string> norm_names = {"Linf", "L1", "L2"};

  for (int n : n_list) {
    ExperimentConfig c = cfg;
    c.n = n;
    c.out_dir.clear();
    const RunResult r = run_case(c);
    const double h = two_d ? 1.0 / n : 2.0 * M_PI / (n - 1);
    for (const auto& field : fields) {
      const Norms& nm = field == "Ex" ? r.err_ex : r.err_ey;
      const std::array<double, 3> errs = {nm.linf, nm.l1, nm.l2};
      for (size_t k = 0; k < 3; ++k) {
        ConvergenceRow row;
        row.n = n;
        row.h = h;
        row.dt = r.dt;
        row.field = field;
        row.norm = norm_names[k];
        row.err = errs[k];
        report.rows.push_back(row);
      }
    }
  }

  // Successive rates within each (field, norm) group, ordered by n.
  for (auto& row : report.rows) {
    const ConvergenceRow* prev = nullptr;
    for (const auto& other : report.rows)
      if (other.field == row.field && other.norm == row.norm && other.h > row.h &&
          (!prev || other.h < prev->h))
        prev = &other;
    if (prev && row.err > 0.0 && prev->err > 0.0)
      row.rate = std::log(prev->err / row.err) / std::log(prev->h / row.h);
  }

  if (!cfg.out_dir.empty()) {
    ensure_dir(cfg.out_dir);
    CsvWriter w(cfg.out_dir + "/convergence.csv",
                {"N", "h", "dt", "field", "norm", "err", "rate"});
    for (const auto& r : report.rows)
      w.row({format_number(r.n), format_number(r.h), format_number(r.dt), r.field, r.norm,
             format_number(r.err), format_number(r.rate)});
  }
  return report;
}

GrowthFit growth_study(const ExperimentConfig& cfg) {
  const RunResult r = run_periodic_1d(cfg);
  const double t_lo = cfg.t_final * 2.0 / 3.0;
  std::vector<HistoryPoint> win;
  for (const auto& p : r.history)
    if (p.t >= t_lo && p.max_err > 0.0) win.push_back(p);
  if (win.size() < 8) throw NumericalError("growth_study: fit window too small");

  int increases = 0;
  for (size_t i = 1; i < win.size(); ++i)
    if (win[i].max_err > win[i - 1].max_err) ++increases;
  const double frac = static_cast<double>(increases) / (win.size() - 1);
  if (frac < 0.6 || win.back().max_err < 2.0 * win.front().max_err)
    throw NumericalError("growth_study: growth never dominates the fit window");

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& p : win) {
    const double y = std::log(p.max_err);
    st += p.t;
    sy += y;
    stt += p.t * p.t;
    sty += p.t * y;
  }
  const double nw = static_cast<double>(win.size());
  GrowthFit fit;
  fit.rate = (nw * sty - st * sy) / (nw * stt - st * st);
  fit.dt = r.dt;
  const double g = cfg.material.gamma;
  fit.theory = g * g * g * r.dt * r.dt / 12.0;
  return fit;
}

StabilityReport stability_report(const MaterialParams& m, std::span<const double> h, int order,
                                 const std::string& out_dir) {
  rcfdtd::validate(m);
  StabilityReport rep;
  const double c = m.wave_speed();
  double sum_inv = 0.0;
  for (double hd : h) sum_inv += 1.0 / (hd * hd);
  const double sq = std::sqrt(sum_inv);
  const double inf = std::numeric_limits<double>::infinity();

  if (order == 2) {
    const double full = rc2_timestep(c, m.omega_p, m.eps_r, m.gamma, h, 1.0);
    const double cap = m.gamma > 0.0 ? 0.5 / m.gamma : inf;
    rep.dt = full;
    rep.binding = full < cap * (1.0 - 1e-12) ? "cfl" : "gamma-cap";
  } else {
    const double full = rc4_timestep(c, m.omega_p, m.eps_r, m.gamma, h, 1.0);
    const double cap_o = m.omega_p > 0.0 ? 2.0 * std::sqrt(m.eps_r) / m.omega_p : inf;
    const double cap_g = m.gamma > 0.0 ? 0.68 / m.gamma : inf;
    rep.dt = full;
    if (std::abs(full - cap_g) < 1e-12 * full)
      rep.binding = "gamma-cap";
    else if (std::abs(full - cap_o * (1.0 - 1e-9)) < 1e-10 * full)
      rep.binding = "omega-cap";
    else
      rep.binding = "cfl-quartic";
  }
  (void)sq;

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    rep.scan_csv = out_dir + "/scan.csv";
    CsvWriter w(rep.scan_csv, {"Lambda", "Omega", "Gamma", "xi", "absA_max", "class"});
    const int nl = 9, no = 9, ng = 9, nxi = order == 2 ? 17 : 9;
    const double lmax = 1.1, omax = 2.0, gmax = order == 2 ? 0.6 : 0.7;
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < no; ++b)
        for (int d = 0; d < ng; ++d) {
          DimensionlessTriple p;
          p.lambda = {lmax * a / (nl - 1)};
          p.omega_nd = omax * b / (no - 1);
          p.gamma_nd = gmax * d / (ng - 1);
          for (int q = 0; q < nxi; ++q) {
            const double xi = -M_PI + 2.0 * M_PI * q / (nxi - 1);
            if (order == 2) {
              const auto spec = rc2_roots(rc2_char_coeffs(p, GridWavenumber{{xi}}));
              double a0 = 0.0, apm = 0.0;
              for (size_t i = 0; i < spec.roots.size(); ++i) {
                const double v = std::abs(spec.roots[i]);
                if (spec.cls[i] == RootClass::a0)
                  a0 = std::max(a0, v);
                else
                  apm = std::max(apm, v);
              }
              w.row({format_number(p.lambda[0]), format_number(p.omega_nd),
                     format_number(p.gamma_nd), format_number(xi), format_number(a0), "A0"});
              w.row({format_number(p.lambda[0]), format_number(p.omega_nd),
                     format_number(p.gamma_nd), format_number(xi), format_number(apm),
                     "Apm"});
            } else {
              const auto spec = rc4_roots(p, GridWavenumber{{xi}});
              double mx = 0.0;
              for (const auto& r : spec.roots) mx = std::max(mx, std::abs(r));
              w.row({format_number(p.lambda[0]), format_number(p.omega_nd),
                     format_number(p.gamma_nd), format_number(xi), format_number(mx),
                     "rc4"});
            }
          }
        }
  }
  return rep;
}

}  // namespace rcfdtd
