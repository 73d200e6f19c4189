#pragma once

#include <complex>

namespace rcfdtd {

/// Drude material constants in scaled units (epsilon_0 = mu_0 = 1, vacuum
/// light speed 1).  omega_p and gamma carry 1/scaled-time units.
struct MaterialParams {
  double eps_r = 1.0;
  double mu_r = 1.0;
  double omega_p = 0.0;
  double gamma = 0.0;

  bool dispersive() const { return omega_p > 0.0; }
  double wave_speed() const;
};

/// Laboratory-unit material description; converted once at the CLI boundary.
struct PhysicalMaterial {
  double eps_r = 1.0;
  double mu_r = 1.0;
  double omega_p_si = 0.0;  // rad/s
  double gamma_si = 0.0;    // 1/s
};

/// Time-scale factor c_t (1/s) of the nondimensionalization.
struct ScalingConvention {
  double c_t = 1e16;
};

void validate(const MaterialParams& m);

/// Frequency-domain relative permittivity of the Drude medium activated by
/// fields ~ e^{i omega t}: eps_r - omega_p^2 / (omega (omega - i gamma)).
/// For fields ~ e^{-i omega t} pass -omega.  Non-dispersive materials return
/// eps_r for every omega.  Throws std::domain_error at the omega = 0 pole of
/// a dispersive material.
std::complex<double> permittivity_hat(const MaterialParams& m, std::complex<double> omega);

/// Rescale plasma frequency and damping by c_t; eps_r, mu_r are unchanged.
MaterialParams scale(const PhysicalMaterial& p, const ScalingConvention& s);

/// Photon energy in eV to angular frequency in rad/s.
double ev_to_angular(double e_ev);

}  // namespace rcfdtd
