#include "rcfdtd/exact.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "rcfdtd/errors.hpp"
#include "rcfdtd/polyroots.hpp"

namespace rcfdtd {

using cplx = std::complex<double>;
namespace {
const cplx kI(0.0, 1.0);
}

DispersionRoots dispersion_roots(double c, double omega_p, double eps_r, double gamma,
                                 double k) {
  if (!(eps_r > 0.0) || c < 0.0 || omega_p < 0.0 || gamma < 0.0)
    throw std::invalid_argument("dispersion_roots: invalid parameters");
  const double c2k2 = c * c * k * k;
  const std::array<double, 4> coeffs = {gamma * c2k2, c2k2 + omega_p * omega_p / eps_r,
                                        gamma, 1.0};
  auto roots = poly_roots(std::span<const double>(coeffs));

  // The strictly real root has the smallest |Im|; the remaining conjugate
  // pair is split by the sign of Im.
  size_t real_idx = 0;
  for (size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i].imag()) < std::abs(roots[real_idx].imag())) real_idx = i;

  DispersionRoots out;
  out.real_decaying = cplx(roots[real_idx].real(), 0.0);
  std::vector<cplx> pair;
  for (size_t i = 0; i < roots.size(); ++i)
    if (i != real_idx) pair.push_back(roots[i]);
  if (pair[0].imag() >= pair[1].imag()) {
    out.right_moving = pair[0];
    out.left_moving = pair[1];
  } else {
    out.right_moving = pair[1];
    out.left_moving = pair[0];
  }
  return out;
}

AuxTriple plane_wave_eval(const PlaneWave1D& w, double x, double t) {
  const cplx sg = w.growth_rate + w.gamma;
  if (!(sg.real() > 0.0))
    throw std::domain_error("plane_wave_eval: Re(s + gamma) <= 0, convolution diverges");
  const cplx E = w.amplitude * std::exp(kI * w.wavenumber * x) * std::exp(w.growth_rate * t);
  return {E, E / sg, E / (sg * sg)};
}

ScatteringSolution scattering_build(double theta_i, double omega, double amplitude,
                                    double x_mid, const MaterialParams& left,
                                    const MaterialParams& right) {
  if (!(theta_i >= 0.0 && theta_i < M_PI / 2.0))
    throw std::invalid_argument("scattering_build: theta_i outside [0, pi/2)");
  if (!(omega > 0.0)) throw std::invalid_argument("scattering_build: omega must be > 0");
  if (left.dispersive())
    throw std::invalid_argument("scattering_build: left material must be non-dispersive");
  validate(left);
  validate(right);

  ScatteringSolution s;
  s.theta_i = theta_i;
  s.omega = omega;
  s.amplitude = amplitude;
  s.x_mid = x_mid;
  s.left = left;
  s.right = right;

  // Fields carry e^{-i omega t}; the matching permittivity is eps_hat(-omega).
  s.eps1 = permittivity_hat(left, -omega);
  s.eps2 = permittivity_hat(right, -omega);

  const cplx n1 = std::sqrt(s.eps1 * left.mu_r);
  const cplx n2 = std::sqrt(s.eps2 * right.mu_r);

  s.sin_theta_t = n1 / n2 * std::sin(theta_i);
  s.cos_theta_t = std::sqrt(1.0 - (s.eps1 * left.mu_r) / (s.eps2 * right.mu_r) *
                                      std::sin(theta_i) * std::sin(theta_i));

  s.k_ix = omega * n1 * std::cos(theta_i);
  s.k_iy = omega * n1 * std::sin(theta_i);
  s.k_tx = omega * n2 * s.cos_theta_t;
  s.k_ty = omega * n2 * s.sin_theta_t;

  const cplx denom = n1 * s.cos_theta_t + n2 * std::cos(theta_i);
  if (std::abs(denom) < 1e-14 * (std::abs(n1) + std::abs(n2)))
    throw NumericalError("scattering_build: singular interface configuration");

  s.R = std::exp(2.0 * kI * s.k_ix * x_mid) * (n1 * s.cos_theta_t - n2 * std::cos(theta_i)) /
        denom;
  s.T = std::exp(kI * (s.k_ix - s.k_tx) * x_mid) * (2.0 * n1 * std::cos(theta_i)) / denom;

  s.A_x1 = amplitude * std::sin(theta_i);
  s.A_y1 = -amplitude * std::cos(theta_i);
  s.A_x2 = amplitude * s.sin_theta_t;
  s.A_y2 = -amplitude * s.cos_theta_t;
  return s;
}

ComplexSix scattering_eval_side(const ScatteringSolution& s, Side side, double x, double y,
                                double t) {
  ComplexSix out;
  if (side == Side::left) {
    const cplx inc = std::exp(kI * (s.k_ix * x + s.k_iy * y) - kI * s.omega * t);
    const cplx ref = std::exp(kI * (-s.k_ix * x + s.k_iy * y) - kI * s.omega * t);
    out.Ex = s.A_x1 * (inc - s.R * ref);
    out.Ey = s.A_y1 * (inc + s.R * ref);
    // Non-dispersive side: convolution histories are unused, kept at zero.
    return out;
  }
  const cplx tr = std::exp(kI * (s.k_tx * x + s.k_ty * y) - kI * s.omega * t);
  out.Ex = s.A_x2 * s.T * tr;
  out.Ey = s.A_y2 * s.T * tr;
  const cplx g = cplx(s.right.gamma, 0.0) - kI * s.omega;  // e^{-i omega t} history kernel
  out.psi_x = out.Ex / g;
  out.psi_y = out.Ey / g;
  out.phi_x = out.Ex / (g * g);
  out.phi_y = out.Ey / (g * g);
  return out;
}

ComplexPair scattering_eval(const ScatteringSolution& s, double x, double y, double t) {
  const auto v = scattering_eval_side(s, x <= s.x_mid ? Side::left : Side::right, x, y, t);
  return {v.Ex, v.Ey};
}

SppSolution spp_build(double omega, cplx amplitude, double x_mid, const MaterialParams& left,
                      const MaterialParams& right) {
  if (!(omega > 0.0)) throw std::invalid_argument("spp_build: omega must be > 0");
  if (left.dispersive())
    throw std::invalid_argument("spp_build: left material must be non-dispersive");
  validate(left);
  validate(right);

  SppSolution s;
  s.omega = omega;
  s.amplitude = amplitude;
  s.x_mid = x_mid;
  s.left = left;
  s.right = right;
  s.eps1 = permittivity_hat(left, omega);
  s.eps2 = permittivity_hat(right, omega);
  if (!(s.eps2.real() < 0.0))
    throw NumericalError("spp_build: Re(eps2_hat) >= 0, no localized mode at this omega");

  const cplx e1 = s.eps1, e2 = s.eps2;
  const double mu1 = left.mu_r, mu2 = right.mu_r;
  const cplx denom = e2 * e2 - e1 * e1;
  if (std::abs(denom) < 1e-12 * (std::norm(e1) + std::norm(e2)))
    throw NumericalError("spp_build: eps2^2 - eps1^2 = 0, surface-plasmon resonance pole");

  cplx beta = omega * std::sqrt(e1 * e2 * (mu1 * e2 - mu2 * e1) / denom);
  // Propagating-decaying branch: fields ~ e^{i beta y}, so Im(beta) > 0.
  if (beta.imag() < 0.0 || (beta.imag() == 0.0 && beta.real() < 0.0)) beta = -beta;
  s.beta = beta;

  cplx alpha1 = std::sqrt(beta * beta - omega * omega * mu1 * e1);
  if (alpha1.real() < 0.0) alpha1 = -alpha1;
  s.alpha1 = alpha1;
  s.alpha2 = alpha1 * e2 / e1;
  if (!(s.alpha1.real() > 0.0 && s.alpha2.real() < 0.0))
    throw NumericalError("spp_build: no branch with Re(alpha1) > 0 > Re(alpha2)");

  // Construction invariants of the mode.
  const cplx res2 = s.alpha2 * s.alpha2 - (beta * beta - omega * omega * mu2 * e2);
  if (std::abs(res2) > 1e-10 * std::max(1.0, std::norm(s.alpha2)))
    throw NumericalError("spp_build: alpha2 dispersion residual too large");
  return s;
}

ComplexSix spp_eval_side(const SppSolution& s, Side side, double x, double y, double t) {
  ComplexSix out;
  const cplx phase = std::exp(kI * s.beta * y + kI * s.omega * t);
  if (side == Side::left) {
    const cplx ex = std::exp(s.alpha1 * (x - s.x_mid));
    out.Ex = s.amplitude * ex * phase;
    out.Ey = kI * s.alpha1 / s.beta * s.amplitude * ex * phase;
    return out;
  }
  const cplx ex = std::exp(s.alpha2 * (x - s.x_mid));
  out.Ex = s.eps1 / s.eps2 * s.amplitude * ex * phase;
  out.Ey = kI * s.alpha1 / s.beta * s.amplitude * ex * phase;
  const cplx g = cplx(s.right.gamma, 0.0) + kI * s.omega;  // e^{+i omega t} history kernel
  out.psi_x = out.Ex / g;
  out.psi_y = out.Ey / g;
  out.phi_x = out.Ex / (g * g);
  out.phi_y = out.Ey / (g * g);
  return out;
}

ComplexSix spp_eval(const SppSolution& s, double x, double y, double t) {
  return spp_eval_side(s, x <= s.x_mid ? Side::left : Side::right, x, y, t);
}

namespace {
FieldSample to_sample(const ComplexSix& v) {
  return {v.Ex.real(),    v.Ey.real(),    v.psi_x.real(),
          v.psi_y.real(), v.phi_x.real(), v.phi_y.real()};
}
}  // namespace

ExactSolution ExactSolution::from(const PlaneWave1D& w) {
  // Marginal waves with Re(s + gamma) = 0 arise for non-dispersive media,
  // where the histories are never used; evaluate the field alone there.
  const bool has_aux = (w.growth_rate + w.gamma).real() > 0.0;
  return ExactSolution(
      [w, has_aux](Side, double x, double /*y*/, double t) {
        FieldSample out;
        if (has_aux) {
          const auto v = plane_wave_eval(w, x, t);
          out.Ex = v.E.real();
          out.psi_x = v.psi.real();
          out.phi_x = v.phi.real();
        } else {
          const cplx E = w.amplitude * std::exp(kI * w.wavenumber * x) *
                         std::exp(w.growth_rate * t);
          out.Ex = E.real();
        }
        return out;
      },
      0.0, 1);
}

ExactSolution ExactSolution::from(const ScatteringSolution& s) {
  return ExactSolution(
      [s](Side side, double x, double y, double t) {
        return to_sample(scattering_eval_side(s, side, x, y, t));
      },
      s.x_mid, 2);
}

ExactSolution ExactSolution::from(const SppSolution& s) {
  return ExactSolution(
      [s](Side side, double x, double y, double t) {
        return to_sample(spp_eval_side(s, side, x, y, t));
      },
      s.x_mid, 2);
}

}  // namespace rcfdtd
