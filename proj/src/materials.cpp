#include "rcfdtd/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace rcfdtd {

namespace {
constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kHbar = 1.054571817e-34;              // J s
}  // namespace

double MaterialParams::wave_speed() const { return 1.0 / std::sqrt(eps_r * mu_r); }

void validate(const MaterialParams& m) {
  if (!(m.eps_r > 0.0)) throw std::invalid_argument("material: eps_r must be > 0");
  if (!(m.mu_r > 0.0)) throw std::invalid_argument("material: mu_r must be > 0");
  if (m.omega_p < 0.0) throw std::invalid_argument("material: omega_p must be >= 0");
  if (m.gamma < 0.0) throw std::invalid_argument("material: gamma must be >= 0");
}

std::complex<double> permittivity_hat(const MaterialParams& m, std::complex<double> omega) {
  if (m.omega_p == 0.0) return {m.eps_r, 0.0};
  if (omega == std::complex<double>(0.0, 0.0))
    throw std::domain_error("permittivity_hat: omega = 0 pole of the Drude susceptibility");
  const std::complex<double> i(0.0, 1.0);
  return m.eps_r - m.omega_p * m.omega_p / (omega * (omega - i * m.gamma));
}

MaterialParams scale(const PhysicalMaterial& p, const ScalingConvention& s) {
  if (!(s.c_t > 0.0)) throw std::invalid_argument("scale: c_t must be > 0");
  MaterialParams m;
  m.eps_r = p.eps_r;
  m.mu_r = p.mu_r;
  m.omega_p = p.omega_p_si / s.c_t;
  m.gamma = p.gamma_si / s.c_t;
  validate(m);
  return m;
}

double ev_to_angular(double e_ev) { return e_ev * kElementaryCharge / kHbar; }

}  // namespace rcfdtd
