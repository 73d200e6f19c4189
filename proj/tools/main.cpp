#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcfdtd/errors.hpp"
#include "rcfdtd/exact.hpp"
#include "rcfdtd/harness.hpp"
#include "rcfdtd/stability.hpp"
#include "rcfdtd/svg.hpp"

namespace {

using namespace rcfdtd;

struct MaterialFlags {
  double eps_r = -1.0, mu_r = -1.0, omega_p = -1.0, gamma = -1.0;
  double omega_p_ev = -1.0, gamma_si = -1.0, ct = 1e16;

  void add(CLI::App* app, const std::string& prefix = "") {
    app->add_option("--" + prefix + "eps-r", eps_r, "relative permittivity");
    app->add_option("--" + prefix + "mu-r", mu_r, "relative permeability");
    app->add_option("--" + prefix + "omega-p", omega_p, "scaled plasma frequency");
    app->add_option("--" + prefix + "gamma", gamma, "scaled damping rate");
    app->add_option("--" + prefix + "omega-p-ev", omega_p_ev, "plasma frequency in eV");
    app->add_option("--" + prefix + "gamma-si", gamma_si, "damping rate in 1/s");
    app->add_option("--" + prefix + "ct", ct, "time-scale factor c_t (1/s)");
  }

  // Apply over a default material; physical flags are converted through the
  // scaling convention, scaled flags win if both appear.
  MaterialParams resolve(MaterialParams base) const {
    if (omega_p_ev >= 0.0 || gamma_si >= 0.0) {
      PhysicalMaterial p{base.eps_r, base.mu_r, base.omega_p * ct, base.gamma * ct};
      if (omega_p_ev >= 0.0) p.omega_p_si = ev_to_angular(omega_p_ev);
      if (gamma_si >= 0.0) p.gamma_si = gamma_si;
      base = scale(p, ScalingConvention{ct});
    }
    if (eps_r > 0.0) base.eps_r = eps_r;
    if (mu_r > 0.0) base.mu_r = mu_r;
    if (omega_p >= 0.0) base.omega_p = omega_p;
    if (gamma >= 0.0) base.gamma = gamma;
    return base;
  }
};

struct CommonFlags {
  std::string case_name = "periodic1d";
  std::string scheme = "rc2";
  int n = 0;
  double t_final = -1.0;
  double cfl_fraction = 0.99;
  double k = -1.0, theta_i = -1.0, omega = -1.0, omega_thz = -1.0;
  double dt = -1.0;
  std::string out;
  MaterialFlags mat, mat_left;

  void add(CLI::App* app) {
    app->add_option("--case", case_name, "periodic1d | scatter2d | spp2d");
    app->add_option("--scheme", scheme, "rc2 | rc4");
    app->add_option("--n", n, "resolution");
    app->add_option("--tfinal", t_final, "final time (scaled units)");
    app->add_option("--cfl-fraction", cfl_fraction, "fraction of the stability bound");
    app->add_option("--k", k, "1D wavenumber");
    app->add_option("--theta-i", theta_i, "incidence angle (rad)");
    app->add_option("--omega", omega, "temporal frequency (scaled)");
    app->add_option("--omega-thz", omega_thz, "temporal frequency in THz (x 1e12 rad/s)");
    app->add_option("--dt", dt, "time step override");
    app->add_option("--out", out, "output directory for CSV files");
    mat.add(app);
    mat_left.add(app, "left-");
  }

  Case parse_case() const {
    if (case_name == "periodic1d") return Case::periodic1d;
    if (case_name == "scatter2d") return Case::scatter2d;
    if (case_name == "spp2d") return Case::spp2d;
    throw ConfigError("unknown case: " + case_name);
  }

  int parse_order() const {
    if (scheme == "rc2") return 2;
    if (scheme == "rc4") return 4;
    throw ConfigError("unknown scheme: " + scheme);
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg = default_config(parse_case(), parse_order());
    if (n > 0) cfg.n = n;
    if (t_final > 0.0) cfg.t_final = t_final;
    cfg.cfl_fraction = cfl_fraction;
    if (k > 0.0) cfg.k = k;
    if (theta_i >= 0.0) cfg.theta_i = theta_i;
    if (omega > 0.0) cfg.omega = omega;
    if (omega_thz > 0.0) cfg.omega = omega_thz * 1e12 / mat.ct;
    if (dt > 0.0) cfg.dt_override = dt;
    cfg.out_dir = out;
    if (cfg.kase == Case::periodic1d) {
      cfg.material = mat.resolve(cfg.material);
    } else {
      cfg.mat_right = mat.resolve(cfg.mat_right);
      cfg.mat_left = mat_left.resolve(cfg.mat_left);
    }
    return cfg;
  }
};

void print_norms(const char* label, const Norms& n) {
  std::printf("%s  Linf=%.6e  L1=%.6e  L2=%.6e\n", label, n.linf, n.l1, n.l2);
}

int cmd_run(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.build();
  const RunResult r = run_case(cfg);
  std::printf("case done: steps=%d dt=%.8g (bound %.8g)\n", r.steps, r.dt, r.dt_bound);
  print_norms("err Ex:", r.err_ex);
  if (cfg.kase != Case::periodic1d) print_norms("err Ey:", r.err_ey);
  return 0;
}

int cmd_converge(const CommonFlags& flags, const std::string& n_list_str) {
  ExperimentConfig cfg = flags.build();
  std::vector<int> n_list;
  std::stringstream ss(n_list_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) n_list.push_back(std::stoi(tok));
  const auto report = convergence_study(cfg, n_list);
  std::printf("%6s %12s %12s %4s %5s %14s %8s\n", "N", "h", "dt", "fld", "norm", "err",
              "rate");
  for (const auto& r : report.rows)
    std::printf("%6d %12.5e %12.5e %4s %5s %14.6e %8.3f\n", r.n, r.h, r.dt, r.field.c_str(),
                r.norm.c_str(), r.err, r.rate);
  return 0;
}

int cmd_growth(const CommonFlags& flags) {
  ExperimentConfig cfg = flags.build();
  if (cfg.kase != Case::periodic1d) throw ConfigError("growth: only periodic1d");
  const auto fit = growth_study(cfg);
  std::printf("fitted tail rate: %.6g per unit time\n", fit.rate);
  std::printf("theory gamma^3 dt^2 / 12: %.6g (dt = %.6g)\n", fit.theory, fit.dt);
  return 0;
}

int cmd_stability(const CommonFlags& flags, const std::vector<double>& h) {
  if (h.empty()) throw ConfigError("stability: need at least one --h spacing");
  const ExperimentConfig cfg = flags.build();
  const MaterialParams m =
      cfg.kase == Case::periodic1d ? cfg.material : cfg.mat_right;
  const auto rep = stability_report(m, h, flags.parse_order(), flags.out);
  std::printf("dt bound = %.8g (binding constraint: %s)\n", rep.dt, rep.binding.c_str());
  if (!rep.scan_csv.empty()) std::printf("scan written to %s\n", rep.scan_csv.c_str());
  return 0;
}

int cmd_dispersion(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.build();
  const MaterialParams m = cfg.kase == Case::periodic1d ? cfg.material : cfg.mat_right;
  const double kk = flags.k > 0.0 ? flags.k : cfg.k;
  const auto roots = dispersion_roots(m.wave_speed(), m.omega_p, m.eps_r, m.gamma, kk);
  std::printf("right-moving: %+.9g %+.9gi\n", roots.right_moving.real(),
              roots.right_moving.imag());
  std::printf("left-moving:  %+.9g %+.9gi\n", roots.left_moving.real(),
              roots.left_moving.imag());
  std::printf("real-decaying: %+.9g\n", roots.real_decaying.real());
  return 0;
}

}  // namespace

namespace {

// Flat key = value config support: file-derived flags are injected right
// after the subcommand token, so explicit flags (parsed later with a
// take-last policy) override the file.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw rcfdtd::ConfigError("--config needs a file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  if (config_path.empty()) return args;
  if (args.empty()) throw rcfdtd::ConfigError("--config requires a subcommand");

  std::ifstream in(config_path);
  if (!in) throw rcfdtd::ConfigError("cannot open config file: " + config_path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive-convolution FDTD solver for Drude-dispersive media"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonFlags flags;
  std::string n_list = "51,101,201,401";
  std::vector<double> h_list;
  std::string plot_in, plot_kind = "history", plot_out;

  auto* run = app.add_subcommand("run", "run one experiment");
  flags.add(run);
  auto* conv = app.add_subcommand("converge", "grid refinement study");
  flags.add(conv);
  conv->add_option("--n-list", n_list, "comma-separated resolutions");
  auto* growth = app.add_subcommand("growth", "fit the spurious growth rate");
  flags.add(growth);
  auto* stab = app.add_subcommand("stability", "time-step bound and amplification scan");
  flags.add(stab);
  stab->add_option("--spacing", h_list, "grid spacing (repeat for 2D)");
  auto* disp = app.add_subcommand("dispersion", "dispersion cubic roots");
  flags.add(disp);
  auto* plot = app.add_subcommand("plot", "render a CSV file to SVG");
  plot->add_option("--in", plot_in, "input CSV")->required();
  plot->add_option("--kind", plot_kind, "history | convergence | scan | snapshot");
  plot->add_option("--out-svg", plot_out, "output SVG path")->required();

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reverse order
    app.parse(args);
    if (run->parsed()) return cmd_run(flags);
    if (conv->parsed()) return cmd_converge(flags, n_list);
    if (growth->parsed()) return cmd_growth(flags);
    if (stab->parsed()) return cmd_stability(flags, h_list);
    if (disp->parsed()) return cmd_dispersion(flags);
    if (plot->parsed()) {
      rcfdtd::plot_emit(plot_in, plot_kind, plot_out);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const rcfdtd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rcfdtd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
