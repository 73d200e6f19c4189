#pragma once

#include <complex>
#include <functional>

#include "rcfdtd/materials.hpp"

namespace rcfdtd {

enum class Side { left, right };

/// Three roots of s^3 + gamma s^2 + (c^2 k^2 + omega_p^2/eps_r) s
///                 + gamma c^2 k^2 = 0, labeled by mode character.
struct DispersionRoots {
  std::complex<double> right_moving;  // Im s > 0 branch paired with e^{ikx}
  std::complex<double> left_moving;   // conjugate branch
  std::complex<double> real_decaying; // strictly real root
};
DispersionRoots dispersion_roots(double c, double omega_p, double eps_r, double gamma, double k);

/// E(x,t) = E0 e^{ikx} e^{st} for a homogeneous Drude medium.
struct PlaneWave1D {
  std::complex<double> amplitude;    // E0
  double wavenumber = 0.0;           // k
  std::complex<double> growth_rate;  // s
  double gamma = 0.0;                // kernel decay rate of the host material
};

struct AuxTriple {
  std::complex<double> E, psi, phi;
};

/// Field plus closed-form convolution values psi = E/(s+gamma),
/// phi = E/(s+gamma)^2.  Requires Re(s+gamma) > 0.
AuxTriple plane_wave_eval(const PlaneWave1D& w, double x, double t);

/// Incident/reflected/transmitted plane-wave solution at a planar interface
/// (TE_z components, fields ~ e^{i k.x - i omega t}).  The left material must
/// be non-dispersive.
struct ScatteringSolution {
  double theta_i = 0.0;
  double omega = 0.0;
  double amplitude = 0.0;
  double x_mid = 0.0;
  MaterialParams left, right;
  // Derived (all in the e^{-i omega t} convention):
  std::complex<double> eps1, eps2;
  std::complex<double> k_ix, k_iy;   // k_r = (-k_ix, k_iy)
  std::complex<double> k_tx, k_ty;
  std::complex<double> sin_theta_t, cos_theta_t;
  std::complex<double> R, T;
  std::complex<double> A_x1, A_y1, A_x2, A_y2;
};

ScatteringSolution scattering_build(double theta_i, double omega, double amplitude,
                                    double x_mid, const MaterialParams& left,
                                    const MaterialParams& right);

struct ComplexPair {
  std::complex<double> Ex, Ey;
};

/// Piecewise field value, side selected by x vs x_mid.
ComplexPair scattering_eval(const ScatteringSolution& s, double x, double y, double t);

struct ComplexSix {
  std::complex<double> Ex, Ey, psi_x, psi_y, phi_x, phi_y;
};

/// One side's analytic formula evaluated anywhere (used for ghost data).
ComplexSix scattering_eval_side(const ScatteringSolution& s, Side side, double x, double y,
                                double t);

/// Surface mode bound to the interface: evanescent in x, propagating in y,
/// fields ~ e^{i beta y} e^{i omega t}.  Requires Re(eps2_hat) < 0.
struct SppSolution {
  double omega = 0.0;
  std::complex<double> amplitude;
  double x_mid = 0.0;
  MaterialParams left, right;
  std::complex<double> eps1, eps2;  // e^{+i omega t} convention
  std::complex<double> beta;        // branch with Im(beta) > 0
  std::complex<double> alpha1;      // Re > 0
  std::complex<double> alpha2;      // Re < 0
};

SppSolution spp_build(double omega, std::complex<double> amplitude, double x_mid,
                      const MaterialParams& left, const MaterialParams& right);

ComplexSix spp_eval(const SppSolution& s, double x, double y, double t);
ComplexSix spp_eval_side(const SppSolution& s, Side side, double x, double y, double t);

/// Real parts of fields and convolution histories at one point.
struct FieldSample {
  double Ex = 0.0, Ey = 0.0;
  double psi_x = 0.0, psi_y = 0.0;
  double phi_x = 0.0, phi_y = 0.0;
};

/// Type-erased closed-form solution; evaluable per side so ghost regions get
/// the smooth continuation of their own domain's formula.
class ExactSolution {
 public:
  using EvalFn = std::function<FieldSample(Side, double, double, double)>;

  ExactSolution(EvalFn fn, double x_mid, int components)
      : fn_(std::move(fn)), x_mid_(x_mid), components_(components) {}

  FieldSample side(Side s, double x, double y, double t) const { return fn_(s, x, y, t); }
  FieldSample at(double x, double y, double t) const {
    return fn_(x <= x_mid_ ? Side::left : Side::right, x, y, t);
  }
  double x_mid() const { return x_mid_; }
  int components() const { return components_; }

  static ExactSolution from(const PlaneWave1D& w);
  static ExactSolution from(const ScatteringSolution& s);
  static ExactSolution from(const SppSolution& s);

 private:
  EvalFn fn_;
  double x_mid_;
  int components_;
};

}  // namespace rcfdtd
