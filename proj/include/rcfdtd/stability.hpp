#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rcfdtd {

/// Per-axis Courant numbers lambda_d = c dt / h_d plus the scaled plasma
/// frequency Omega = dt omega_p / sqrt(eps_r) and damping Gamma = dt gamma.
struct DimensionlessTriple {
  std::vector<double> lambda;
  double omega_nd = 0.0;
  double gamma_nd = 0.0;

  double aggregate() const;  // Lambda = sqrt(sum lambda_d^2)
};

struct GridWavenumber {
  std::vector<double> xi;  // each in [-pi, pi]
};

void validate(const DimensionlessTriple& p);
void validate(const GridWavenumber& xi);

enum class RootClass { a0, a_pm, rc4 };

struct AmplificationSpectrum {
  std::vector<std::complex<double>> roots;
  std::vector<RootClass> cls;
};

/// Monic cubic A^3 + b2 A^2 + b1 A + b0 for the three-level scheme.
struct Rc2Coeffs {
  double b2 = 0.0, b1 = 0.0, b0 = 0.0;
};

Rc2Coeffs rc2_char_coeffs(const DimensionlessTriple& p, const GridWavenumber& xi);

/// Closed-form radicals for the cubic (principal branches); retained as the
/// classifier and as a cross-check of the companion-matrix roots.
struct Rc2ClosedForm {
  std::complex<double> a0, ap, am;
};
Rc2ClosedForm rc2_roots_closed_form(const Rc2Coeffs& c);

AmplificationSpectrum rc2_roots(const Rc2Coeffs& c);

struct Rc2MaxAmp {
  double max_a0 = 0.0;
  double max_apm = 0.0;
};

/// Maximum |A| per root class over xi in [-pi,pi]^D sampled at n points per
/// axis (D = p.lambda.size()).
Rc2MaxAmp rc2_max_amp(const DimensionlessTriple& p, int n);

/// dt = safety * min(dt_m, 0.5/gamma), with dt_m the positive root of
/// (omega_p^2/(4 eps_r)) dt^2 + c dt sqrt(sum 1/h_d^2) - 1 = 0.
double rc2_timestep(double c, double omega_p, double eps_r, double gamma,
                    std::span<const double> h, double safety);

/// Ascending coefficients of the degree-10 determinant polynomial of the
/// five-level scheme's Fourier matrix; the four lowest-order entries vanish.
std::vector<std::complex<double>> rc4_det_poly(const DimensionlessTriple& p,
                                               const GridWavenumber& xi);

/// The six nontrivial roots (trivial A = 0 quadruple removed).
AmplificationSpectrum rc4_roots(const DimensionlessTriple& p, const GridWavenumber& xi);

struct Rc4MaxAmp {
  double max_abs = 0.0;
  std::vector<double> argmax_xi;
};

Rc4MaxAmp rc4_max_amp(const DimensionlessTriple& p, int n);

/// dt = safety * min(dt_q, (2 sqrt(eps_r)/omega_p)(1 - 1e-9), 0.68/gamma),
/// where dt_q is the first zero of
/// (4/5) Omega^4 + 16 Lambda^2 - (72/5) Omega^2 - 64 Lambda + 48.
double rc4_timestep(double c, double omega_p, double eps_r, double gamma,
                    std::span<const double> h, double safety);

/// Left-hand side of the transcendental Gamma-limit curve.
double rc4_gamma_residual(double omega_nd, double gamma_nd);

/// Smallest Gamma > 0 solving the limit curve at given Omega (|Omega| < 2).
double rc4_gamma_limit(double omega_nd);

}  // namespace rcfdtd
