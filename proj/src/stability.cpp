#include "rcfdtd/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rcfdtd/errors.hpp"
#include "rcfdtd/polyroots.hpp"

namespace rcfdtd {

using cplx = std::complex<double>;

double DimensionlessTriple::aggregate() const {
  double s = 0.0;
  for (double l : lambda) s += l * l;
  return std::sqrt(s);
}

void validate(const DimensionlessTriple& p) {
  if (p.lambda.empty() || p.lambda.size() > 2)
    throw std::invalid_argument("DimensionlessTriple: need 1 or 2 Courant numbers");
  for (double l : p.lambda)
    if (l < 0.0) throw std::invalid_argument("DimensionlessTriple: lambda_d must be >= 0");
  if (p.omega_nd < 0.0 || p.gamma_nd < 0.0)
    throw std::invalid_argument("DimensionlessTriple: Omega, Gamma must be >= 0");
}

void validate(const GridWavenumber& xi) {
  for (double v : xi.xi)
    if (!(v >= -M_PI - 1e-12 && v <= M_PI + 1e-12))
      throw std::invalid_argument("GridWavenumber: xi_d outside [-pi, pi]");
}

Rc2Coeffs rc2_char_coeffs(const DimensionlessTriple& p, const GridWavenumber& xi) {
  validate(p);
  validate(xi);
  if (xi.xi.size() != p.lambda.size())
    throw std::invalid_argument("rc2_char_coeffs: xi/lambda dimension mismatch");
  double S = 0.0;
  for (size_t d = 0; d < p.lambda.size(); ++d) {
    const double sn = std::sin(0.5 * xi.xi[d]);
    S += 4.0 * p.lambda[d] * p.lambda[d] * sn * sn;
  }
  const double O2 = p.omega_nd * p.omega_nd;
  const double G = p.gamma_nd;
  const double eg = std::exp(-G);
  Rc2Coeffs c;
  c.b2 = S + O2 - eg - 2.0 - 0.5 * O2 * G;
  c.b1 = -S * eg - O2 * eg + 2.0 * eg + 1.0 - 0.5 * O2 * G * eg;
  c.b0 = -eg;
  return c;
}

Rc2ClosedForm rc2_roots_closed_form(const Rc2Coeffs& c) {
  const cplx b2 = c.b2, b1 = c.b1, b0 = c.b0;
  const cplx disc = 12.0 * b0 * b2 * b2 * b2 - 3.0 * b1 * b1 * b2 * b2 -
                    54.0 * b2 * b1 * b0 + 12.0 * b1 * b1 * b1 + 81.0 * b0 * b0;
  const cplx inner = 36.0 * b1 * b2 - 108.0 * b0 - 8.0 * b2 * b2 * b2 + 12.0 * std::sqrt(disc);
  const cplx eta = std::pow(inner, 1.0 / 3.0);
  const double scale = std::max({1.0, std::abs(b1), std::abs(b2) * std::abs(b2)});
  Rc2ClosedForm out;
  if (std::abs(eta) < 1e-10 * std::cbrt(scale)) {
    // Triple-root degeneracy; all radicals collapse.
    out.a0 = out.ap = out.am = -b2 / 3.0;
    return out;
  }
  const cplx zm = eta / 6.0 - 6.0 * (3.0 * b1 - b2 * b2) / (9.0 * eta);
  const cplx zp = eta / 6.0 + 6.0 * (3.0 * b1 - b2 * b2) / (9.0 * eta);
  out.a0 = zm - b2 / 3.0;
  out.ap = -zm / 2.0 - b2 / 3.0 + 0.5 * cplx(0.0, 1.0) * zp * std::sqrt(3.0);
  out.am = -zm / 2.0 - b2 / 3.0 - 0.5 * cplx(0.0, 1.0) * zp * std::sqrt(3.0);
  return out;
}

AmplificationSpectrum rc2_roots(const Rc2Coeffs& c) {
  const std::array<double, 4> coeffs = {c.b0, c.b1, c.b2, 1.0};
  auto roots = poly_roots(std::span<const double>(coeffs));
  const auto closed = rc2_roots_closed_form(c);

  // Tag the root nearest the closed-form A0; the other two form the pair.
  size_t i0 = 0, i1 = 0;
  double best = std::numeric_limits<double>::max();
  double second = best;
  for (size_t i = 0; i < roots.size(); ++i) {
    const double d = std::abs(roots[i] - closed.a0);
    if (d < best) {
      second = best;
      i1 = i0;
      best = d;
      i0 = i;
    } else if (d < second) {
      second = d;
      i1 = i;
    }
  }
  // Ambiguous only when two distinct values are equally close.
  if (std::abs(second - best) < 1e-12 * (1.0 + best) &&
      std::abs(roots[i0] - roots[i1]) > 1e-9 * (1.0 + std::abs(roots[i0])))
    throw NumericalError("rc2_roots: ambiguous A0 classification");

  AmplificationSpectrum s;
  s.roots.push_back(roots[i0]);
  s.cls.push_back(RootClass::a0);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (i == i0) continue;
    s.roots.push_back(roots[i]);
    s.cls.push_back(RootClass::a_pm);
  }
  return s;
}

namespace {

template <typename F>
void for_each_xi(size_t dims, int n, F&& fn) {
  std::vector<double> xi(dims, 0.0);
  if (dims == 1) {
    for (int i = 0; i < n; ++i) {
      xi[0] = -M_PI + 2.0 * M_PI * i / (n - 1);
      fn(xi);
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    xi[0] = -M_PI + 2.0 * M_PI * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      xi[1] = -M_PI + 2.0 * M_PI * j / (n - 1);
      fn(xi);
    }
  }
}

}  // namespace

Rc2MaxAmp rc2_max_amp(const DimensionlessTriple& p, int n) {
  validate(p);
  if (n < 3) throw std::invalid_argument("rc2_max_amp: need n >= 3");
  Rc2MaxAmp out;
  for_each_xi(p.lambda.size(), n, [&](const std::vector<double>& xi) {
    const auto spec = rc2_roots(rc2_char_coeffs(p, GridWavenumber{xi}));
    for (size_t i = 0; i < spec.roots.size(); ++i) {
      const double a = std::abs(spec.roots[i]);
      if (spec.cls[i] == RootClass::a0)
        out.max_a0 = std::max(out.max_a0, a);
      else
        out.max_apm = std::max(out.max_apm, a);
    }
  });
  return out;
}

double rc2_timestep(double c, double omega_p, double eps_r, double gamma,
                    std::span<const double> h, double safety) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("rc2_timestep: safety must be in (0, 1]");
  double sum_inv_h2 = 0.0;
  for (double hd : h) {
    if (!(hd > 0.0)) throw std::invalid_argument("rc2_timestep: h_d must be > 0");
    sum_inv_h2 += 1.0 / (hd * hd);
  }
  const double sq = std::sqrt(sum_inv_h2);
  const double a = omega_p * omega_p / (4.0 * eps_r);
  const double b = c * sq;
  double dt_m;
  if (a > 0.0)
    dt_m = (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a);
  else
    dt_m = 1.0 / b;
  const double cap = gamma > 0.0 ? 0.5 / gamma : std::numeric_limits<double>::infinity();
  return safety * std::min(dt_m, cap);
}

// ---------------------------------------------------------------------------
// Five-level scheme Fourier analysis.

namespace {

using Poly = std::vector<double>;  // ascending real coefficients

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly pscale(Poly a, double s) {
  for (double& v : a) v *= s;
  return a;
}

struct Rc4Symbols {
  double rho2 = 0.0, rho4 = 0.0;
};

Rc4Symbols rc4_symbols(const DimensionlessTriple& p, const GridWavenumber& xi) {
  Rc4Symbols s;
  for (size_t d = 0; d < p.lambda.size(); ++d) {
    const double l2 = p.lambda[d] * p.lambda[d];
    const double sn = std::sin(0.5 * xi.xi[d]);
    const double cs = std::cos(xi.xi[d]);
    s.rho2 += l2 * (-4.0 * sn * sn);
    s.rho4 += l2 * (-7.0 / 3.0 + 8.0 / 3.0 * cs - 1.0 / 3.0 * cs * cs);
  }
  return s;
}

}  // namespace

std::vector<cplx> rc4_det_poly(const DimensionlessTriple& p, const GridWavenumber& xi) {
  validate(p);
  validate(xi);
  if (xi.xi.size() != p.lambda.size())
    throw std::invalid_argument("rc4_det_poly: xi/lambda dimension mismatch");
  const auto [rho2, rho4] = rc4_symbols(p, xi);
  const double O2 = p.omega_nd * p.omega_nd;
  const double O4 = O2 * O2;
  const double G = p.gamma_nd;
  const double eg = std::exp(-G);
  const double eg2 = eg * eg, eg3 = eg2 * eg, eg4 = eg3 * eg;

  const Poly mee = {-1.0,
                    2.0 + rho4 - O2 + (rho2 * rho2 - 2.0 * rho2 * O2 + O4) / 12.0, -1.0};
  const Poly mep = {0.0, O2 + (2.0 * O2 * rho2 - 2.0 * O4) / 12.0};
  const Poly mef = {0.0, O4 / 12.0};
  const Poly mpe = {-G / 24.0 * eg4, 5.0 * G / 24.0 * eg3, -11.0 * G / 24.0 * eg2,
                    23.0 * G / 24.0 * eg, G / 3.0};
  const Poly mpp = {0.0, 0.0, 0.0, eg, -1.0};
  const Poly mfe = {-G * G / 24.0 * eg4, G * G / 6.0 * eg3, -7.0 * G * G / 24.0 * eg2,
                    2.0 * G * G / 3.0 * eg};
  const Poly mfp = {0.0, 0.0, 0.0, G * eg};
  const Poly mff = mpp;

  // det = mee (mpp mff) - mep (mpe mff) + mef (mpe mfp - mpp mfe); M_{psi,phi}=0.
  Poly det = pmul(mee, pmul(mpp, mff));
  det = padd(det, pscale(pmul(mep, pmul(mpe, mff)), -1.0));
  det = padd(det, pmul(mef, padd(pmul(mpe, mfp), pscale(pmul(mpp, mfe), -1.0))));
  det.resize(11, 0.0);

  std::vector<cplx> out(det.size());
  for (size_t i = 0; i < det.size(); ++i) out[i] = det[i];
  return out;
}

AmplificationSpectrum rc4_roots(const DimensionlessTriple& p, const GridWavenumber& xi) {
  const auto det = rc4_det_poly(p, xi);
  double cmax = 0.0;
  for (const auto& c : det) cmax = std::max(cmax, std::abs(c));
  for (int i = 0; i < 4; ++i)
    if (std::abs(det[i]) > 1e-12 * std::max(1.0, cmax))
      throw NumericalError("rc4_roots: trivial roots did not deflate");
  std::vector<cplx> reduced(det.begin() + 4, det.end());
  auto roots = poly_roots(std::span<const cplx>(reduced));
  AmplificationSpectrum s;
  for (const auto& r : roots) {
    s.roots.push_back(r);
    s.cls.push_back(RootClass::rc4);
  }
  return s;
}

Rc4MaxAmp rc4_max_amp(const DimensionlessTriple& p, int n) {
  validate(p);
  if (n < 3) throw std::invalid_argument("rc4_max_amp: need n >= 3");
  Rc4MaxAmp out;
  out.argmax_xi.assign(p.lambda.size(), 0.0);
  for_each_xi(p.lambda.size(), n, [&](const std::vector<double>& xi) {
    const auto spec = rc4_roots(p, GridWavenumber{xi});
    for (const auto& r : spec.roots) {
      const double a = std::abs(r);
      if (a > out.max_abs) {
        out.max_abs = a;
        out.argmax_xi = xi;
      }
    }
  });
  return out;
}

double rc4_timestep(double c, double omega_p, double eps_r, double gamma,
                    std::span<const double> h, double safety) {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("rc4_timestep: safety must be in (0, 1]");
  double sum_inv_h2 = 0.0;
  for (double hd : h) {
    if (!(hd > 0.0)) throw std::invalid_argument("rc4_timestep: h_d must be > 0");
    sum_inv_h2 += 1.0 / (hd * hd);
  }
  const double sq = std::sqrt(sum_inv_h2);
  const double inf = std::numeric_limits<double>::infinity();
  const double cap_omega =
      omega_p > 0.0 ? 2.0 * std::sqrt(eps_r) / omega_p * (1.0 - 1e-9) : inf;
  const double cap_gamma = gamma > 0.0 ? 0.68 / gamma : inf;

  const auto f = [&](double dt) {
    const double lam = c * dt * sq;
    const double om = dt * omega_p / std::sqrt(eps_r);
    const double om2 = om * om;
    return 0.8 * om2 * om2 + 16.0 * lam * lam - 14.4 * om2 - 64.0 * lam + 48.0;
  };

  // March to the first sign change, then bisect; f(0) = 48 > 0 and f < 0 at
  // Lambda = 2 for every admissible Omega.
  double dt_q = inf;
  const double hi = std::min({cap_omega, cap_gamma, 2.0 / (c * sq)});
  const int nscan = 2048;
  double prev = f(0.0);
  for (int i = 1; i <= nscan; ++i) {
    const double dt = hi * i / nscan;
    const double cur = f(dt);
    if (prev > 0.0 && cur <= 0.0) {
      double lo_b = hi * (i - 1) / nscan, hi_b = dt;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo_b + hi_b);
        if (f(mid) > 0.0)
          lo_b = mid;
        else
          hi_b = mid;
        if (hi_b - lo_b <= 1e-12 * hi_b) break;
      }
      dt_q = 0.5 * (lo_b + hi_b);
      break;
    }
    prev = cur;
  }
  return safety * std::min({dt_q, cap_omega, cap_gamma});
}

double rc4_gamma_residual(double omega_nd, double gamma_nd) {
  const double O2 = omega_nd * omega_nd;
  const double G = gamma_nd;
  const double e1 = std::exp(-G), e2 = e1 * e1, e3 = e2 * e1, e4 = e3 * e1, e5 = e4 * e1;
  return 2.0 / 3.0 * G * O2 + O2 + 4.0 * G - 12.0 +
         e1 * (G * G * O2 + G * (-1.25 * O2 + 7.5) - 2.0 * O2 + 24.0) +
         e2 * (17.0 / 6.0 * G * O2 + O2 - 17.0 * G - 12.0) +
         e3 * G * (-4.0 / 3.0 * O2 + 8.0) + e4 * G * (0.5 * O2 - 3.0) -
         e5 * G * (O2 - 6.0) / 12.0;
}

double rc4_gamma_limit(double omega_nd) {
  if (!(std::abs(omega_nd) < 2.0))
    throw std::invalid_argument("rc4_gamma_limit: requires |Omega| < 2");
  const double lo0 = 1e-6, hi0 = 5.0;
  // The residual has a high-order zero at Gamma = 0; arm the sign detector
  // only once it is clearly resolved above rounding noise.
  const int nscan = 5000;
  double lo = lo0, hi = -1.0;
  double prev = 0.0;
  bool armed = false;
  for (int i = 0; i <= nscan; ++i) {
    const double g = lo0 + (hi0 - lo0) * i / nscan;
    const double r = rc4_gamma_residual(omega_nd, g);
    if (!armed) {
      if (std::abs(r) > 1e-9) {
        armed = true;
        prev = r;
        lo = g;
      }
      continue;
    }
    if ((prev > 0.0) != (r > 0.0)) {
      hi = g;
      break;
    }
    prev = r;
    lo = g;
  }
  if (hi < 0.0)
    throw NumericalError("rc4_gamma_limit: residual does not change sign on [1e-6, 5]");
  const bool lo_pos = rc4_gamma_residual(omega_nd, lo) > 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((rc4_gamma_residual(omega_nd, mid) > 0.0) == lo_pos)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rcfdtd
