#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "rcfdtd/stability.hpp"

using namespace rcfdtd;
using cplx = std::complex<double>;

namespace {

DimensionlessTriple triple1d(double lam, double om, double ga) {
  DimensionlessTriple p;
  p.lambda = {lam};
  p.omega_nd = om;
  p.gamma_nd = ga;
  return p;
}

// Independent expansion of the 2x2 Fourier-matrix determinant into cubic
// coefficients, via polynomial multiplication of its entries.
Rc2Coeffs det_expand(double S, double om, double ga) {
  const double O2 = om * om;
  const double eg = std::exp(-ga);
  // row 1: -A^2 + (2 - S - O2) A - 1          and  O2 A
  // row 2: (ga/2)(A + eg)                     and  -A + eg
  const std::array<double, 3> a = {-1.0, 2.0 - S - O2, -1.0};
  const std::array<double, 2> b = {0.0, O2};
  const std::array<double, 2> c = {0.5 * ga * eg, 0.5 * ga};
  const std::array<double, 2> d = {eg, -1.0};
  std::array<double, 4> det{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 2; ++j) det[i + j] += a[i] * d[j];
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) det[i + j] -= b[i] * c[j];
  // Normalize to a monic cubic.
  Rc2Coeffs out;
  out.b2 = det[2] / det[3];
  out.b1 = det[1] / det[3];
  out.b0 = det[0] / det[3];
  return out;
}

}  // namespace

TEST_CASE("rc2 coefficients: quiescent limit is (A-1)^3") {
  const auto c = rc2_char_coeffs(triple1d(0.7, 0.0, 0.0), GridWavenumber{{0.0}});
  CHECK(c.b2 == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(c.b1 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(c.b0 == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("rc2 coefficients: P(1) identity at lambda=1, xi=pi") {
  const auto c = rc2_char_coeffs(triple1d(1.0, 0.0, 0.0), GridWavenumber{{M_PI}});
  // P(1) = 1 + b2 + b1 + b0 = S (1 - e^-G) + O^2 (1 - e^-G) - O^2 G (1 + e^-G)/2
  const double p1 = 1.0 + c.b2 + c.b1 + c.b0;
  CHECK(p1 == doctest::Approx(0.0).epsilon(1e-14));

  const auto cg = rc2_char_coeffs(triple1d(1.0, 0.5, 0.25), GridWavenumber{{M_PI}});
  const double G = 0.25, O2 = 0.25, eg = std::exp(-G);
  const double expect = 4.0 * (1.0 - eg) + O2 * (1.0 - eg) - 0.5 * O2 * G * (1.0 + eg);
  CHECK(1.0 + cg.b2 + cg.b1 + cg.b0 == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("rc2 coefficients match the determinant expansion") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ul(0.0, 1.2), uo(0.0, 2.0), ug(0.0, 0.6),
      ux(-M_PI, M_PI);
  for (int trial = 0; trial < 40; ++trial) {
    const double lam = ul(rng), om = uo(rng), ga = ug(rng), xi = ux(rng);
    const auto c = rc2_char_coeffs(triple1d(lam, om, ga), GridWavenumber{{xi}});
    const double S = 4.0 * lam * lam * std::sin(0.5 * xi) * std::sin(0.5 * xi);
    const auto e = det_expand(S, om, ga);
    CHECK(std::abs(c.b2 - e.b2) < 1e-14 * std::max(1.0, std::abs(e.b2)));
    CHECK(std::abs(c.b1 - e.b1) < 1e-14 * std::max(1.0, std::abs(e.b1)));
    CHECK(std::abs(c.b0 - e.b0) < 1e-14);
  }
  // The specific oracle point Omega = 1, Gamma = 0.1, xi = 0.
  const auto c = rc2_char_coeffs(triple1d(0.3, 1.0, 0.1), GridWavenumber{{0.0}});
  const auto e = det_expand(0.0, 1.0, 0.1);
  CHECK(std::abs(c.b2 - e.b2) < 1e-14);
  CHECK(std::abs(c.b1 - e.b1) < 1e-14);
  CHECK(std::abs(c.b0 - e.b0) < 1e-14);
}

TEST_CASE("rc2 roots: triple one") {
  const auto s = rc2_roots({-3.0, 3.0, -1.0});
  REQUIRE(s.roots.size() == 3);
  for (const auto& r : s.roots) CHECK(std::abs(r - cplx(1.0, 0.0)) < 2e-5);
}

TEST_CASE("rc2 roots: A0 expansion value") {
  const auto c = rc2_char_coeffs(triple1d(0.0, 1.0, 0.2), GridWavenumber{{0.0}});
  const auto s = rc2_roots(c);
  double a0 = 0.0;
  for (size_t i = 0; i < s.roots.size(); ++i)
    if (s.cls[i] == RootClass::a0) {
      CHECK(std::abs(s.roots[i].imag()) < 1e-10);
      a0 = s.roots[i].real();
    }
  const double g4 = 0.2 * 0.2 * 0.2 * 0.2;
  CHECK(std::abs(a0 - (1.0 + 0.2 * 0.2 * 0.2 / 12.0)) <= 5.0 * g4);
}

TEST_CASE("rc2 roots: Omega = 0 gives {1, 1, e^-G} with A0 = 1") {
  const auto c = rc2_char_coeffs(triple1d(0.0, 0.0, 0.3), GridWavenumber{{0.0}});
  const auto s = rc2_roots(c);
  double a0 = -1.0;
  int ones = 0, decays = 0;
  for (size_t i = 0; i < s.roots.size(); ++i) {
    if (std::abs(s.roots[i] - cplx(1.0, 0.0)) < 1e-6) ++ones;
    if (std::abs(s.roots[i] - cplx(std::exp(-0.3), 0.0)) < 1e-9) ++decays;
    if (s.cls[i] == RootClass::a0) a0 = std::abs(s.roots[i]);
  }
  CHECK(ones == 2);
  CHECK(decays == 1);
  CHECK(a0 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rc2 roots: residual and symmetric-function consistency") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ul(0.0, 1.1), uo(0.0, 1.9), ug(0.0, 0.55),
      ux(-M_PI, M_PI);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c =
        rc2_char_coeffs(triple1d(ul(rng), uo(rng), ug(rng)), GridWavenumber{{ux(rng)}});
    const auto s = rc2_roots(c);
    cplx sum = 0.0, prod = 1.0;
    for (const auto& r : s.roots) {
      sum += r;
      prod *= r;
      const cplx res = ((r + c.b2) * r + c.b1) * r + c.b0;
      CHECK(std::abs(res) < 1e-12 * std::max(1.0, std::pow(std::abs(r), 3)));
    }
    CHECK(std::abs(sum - cplx(-c.b2, 0)) < 1e-10 * std::max(1.0, std::abs(c.b2)));
    CHECK(std::abs(prod - cplx(-c.b0, 0)) < 1e-10);
  }
}

TEST_CASE("rc2 max amplification") {
  {
    const auto m = rc2_max_amp(triple1d(0.5, 0.0, 0.0), 41);
    CHECK(m.max_apm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.max_a0 <= 1.0 + 1e-12);
  }
  {
    const auto m = rc2_max_amp(triple1d(1.2, 0.0, 0.0), 41);
    CHECK(m.max_apm > 1.0 + 1e-3);
  }
  {
    const auto m = rc2_max_amp(triple1d(0.9, 0.4, 0.2), 41);
    CHECK(m.max_apm <= 1.0 + 1e-12);
    CHECK(m.max_a0 > 1.0);
    CHECK(m.max_a0 == doctest::Approx(1.0 + 0.2 * 0.2 * 0.2 / 12.0).epsilon(2e-3));
  }
}

TEST_CASE("rc2 growth root |A0| > 1 for Gamma > 0, 0 < Omega < 2") {
  for (double ga : {0.05, 0.2, 0.45})
    for (double om : {0.15, 0.8, 1.6}) {
      const auto s = rc2_roots(rc2_char_coeffs(triple1d(0.0, om, ga), GridWavenumber{{0.0}}));
      for (size_t i = 0; i < s.roots.size(); ++i)
        if (s.cls[i] == RootClass::a0) CHECK(std::abs(s.roots[i]) > 1.0);
    }
}

TEST_CASE("rc2 stability region: max |A_pm| <= 1 inside the practical bound") {
  const int ng = 20;
  double worst = 0.0;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int c = 0; c < ng; ++c) {
        const double lam = 0.999 * a / (ng - 1);
        const double om = 2.0 * b / (ng - 1);
        const double ga = 0.5 * c / (ng - 1);
        if (lam + 0.25 * om * om > 0.999) continue;
        const auto m = rc2_max_amp(triple1d(lam, om, ga), 33);
        worst = std::max(worst, m.max_apm);
      }
  CHECK(worst <= 1.0 + 1e-10);
}

TEST_CASE("rc2 A0 expansion coefficient bound") {
  for (double ga : {0.05, 0.1, 0.2, 0.4})
    for (double om : {0.5, 1.0, 1.5}) {
      const auto s = rc2_roots(rc2_char_coeffs(triple1d(0.0, om, ga), GridWavenumber{{0.0}}));
      for (size_t i = 0; i < s.roots.size(); ++i)
        if (s.cls[i] == RootClass::a0) {
          const double err = std::abs(s.roots[i].real() - (1.0 + ga * ga * ga / 12.0));
          CHECK(err <= 10.0 * ga * ga * ga * ga);
        }
    }
}

TEST_CASE("rc2 time step") {
  CHECK(rc2_timestep(1.0, 0.0, 1.0, 0.0, std::array{0.1}, 1.0) ==
        doctest::Approx(0.1).epsilon(1e-14));
  const double h = 2.0 * M_PI / 100.0;
  const double dtm = rc2_timestep(1.0, 3.0, 1.0, 0.0, std::array{h}, 1.0);
  CHECK(dtm == doctest::Approx(0.062282).epsilon(1e-4));
  CHECK(rc2_timestep(1.0, 3.0, 1.0, 10.0, std::array{h}, 1.0) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(rc2_timestep(1.0, 0.0, 1.0, 0.0, std::array{0.1, 0.1}, 0.99) ==
        doctest::Approx(0.99 * 0.1 / std::sqrt(2.0)).epsilon(1e-12));
  // Returned dt satisfies Lambda + Omega^2/4 <= safety and Gamma <= 0.5.
  const double dt = rc2_timestep(1.0, 3.0, 1.0, 10.0, std::array{h}, 0.99);
  const double lam = dt / h, om = 3.0 * dt;
  CHECK(lam + 0.25 * om * om <= 0.99 + 1e-12);
  CHECK(10.0 * dt <= 0.5 + 1e-12);
}

TEST_CASE("rc4 determinant polynomial") {
  // Trivial roots deflate and the quiescent scheme is neutrally stable.
  const auto spec = rc4_roots(triple1d(0.0, 0.0, 0.0), GridWavenumber{{0.0}});
  REQUIRE(spec.roots.size() == 6);
  for (const auto& r : spec.roots) CHECK(std::abs(r) <= 1.0 + 1e-9);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ur(-1.0, 1.0);
  const auto p = triple1d(0.5, 0.3, 0.1);
  const GridWavenumber xi{{M_PI / 3.0}};
  const auto det = rc4_det_poly(p, xi);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(det[static_cast<size_t>(i)]) < 1e-13);

  const double O2 = 0.09, O4 = O2 * O2, G = 0.1, eg = std::exp(-G);
  const double l2 = 0.25;
  const double sn = std::sin(M_PI / 6.0), cs = std::cos(M_PI / 3.0);
  const double rho2 = l2 * (-4.0 * sn * sn);
  const double rho4 = l2 * (-7.0 / 3.0 + 8.0 / 3.0 * cs - cs * cs / 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const cplx A(ur(rng), ur(rng));
    Eigen::Matrix3cd M;
    M(0, 0) = -A * A + 2.0 * A - 1.0 + A * rho4 - A * O2 +
              A / 12.0 * (rho2 * rho2 - 2.0 * rho2 * O2 + O4);
    M(0, 1) = A * O2 + A / 12.0 * (2.0 * O2 * rho2 - 2.0 * O4);
    M(0, 2) = A * O4 / 12.0;
    M(1, 0) = G / 3.0 * A * A * A * A +
              eg * G *
                  (-std::exp(-3.0 * G) / 24.0 + 5.0 * A * std::exp(-2.0 * G) / 24.0 -
                   11.0 * A * A * eg / 24.0 + 23.0 * A * A * A / 24.0);
    M(1, 1) = -A * A * A * A + A * A * A * eg;
    M(1, 2) = 0.0;
    M(2, 0) = G * G *
              (-std::exp(-4.0 * G) / 24.0 + A * std::exp(-3.0 * G) / 6.0 -
               7.0 * A * A * std::exp(-2.0 * G) / 24.0 + 2.0 * A * A * A * eg / 3.0);
    M(2, 1) = A * A * A * G * eg;
    M(2, 2) = -A * A * A * A + A * A * A * eg;
    const cplx direct = M.determinant();
    cplx horner = 0.0;
    for (int k = 10; k >= 0; --k) horner = horner * A + det[static_cast<size_t>(k)];
    CHECK(std::abs(direct - horner) <= 1e-11 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("rc4 max amplification and CFL edge") {
  CHECK(rc4_max_amp(triple1d(0.5, 0.0, 0.0), 33).max_abs <= 1.0 + 1e-10);
  CHECK(rc4_max_amp(triple1d(0.99, 0.0, 0.0), 41).max_abs <= 1.0 + 1e-9);
  CHECK(rc4_max_amp(triple1d(1.05, 0.0, 0.0), 41).max_abs > 1.0 + 1e-6);
}

TEST_CASE("rc4 max over xi sits at 0 or +-pi") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ul(0.05, 0.95), uo(0.0, 1.5), ug(0.0, 0.6);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 50; ++trial) {
    const double lam = ul(rng), om = uo(rng), ga = ug(rng);
    const double q = 0.8 * std::pow(om, 4) + 16.0 * lam * lam - 14.4 * om * om -
                     64.0 * lam + 48.0;
    if (q < 0.0) continue;  // keep to admissible triples
    ++checked;
    const auto m = rc4_max_amp(triple1d(lam, om, ga), 101);
    const double xi = std::abs(m.argmax_xi[0]);
    const bool at_ends = xi < 1e-9 || std::abs(xi - M_PI) < 1e-9;
    // The scan grid contains 0 and +-pi exactly, so the argmax must land there.
    CHECK(at_ends);
  }
  CHECK(checked == 50);
}

TEST_CASE("rc4 time step") {
  CHECK(rc4_timestep(1.0, 0.0, 1.0, 0.0, std::array{0.1}, 1.0) ==
        doctest::Approx(0.1).epsilon(1e-9));
  const double h = 2.0 * M_PI / 100.0;
  const double dt = rc4_timestep(1.0, 3.0, 1.0, 10.0, std::array{h}, 1.0);
  const double dt_nocap = rc4_timestep(1.0, 3.0, 1.0, 0.0, std::array{h}, 1.0);
  CHECK(dt == doctest::Approx(std::min(dt_nocap, 0.068)).epsilon(1e-9));
  CHECK(rc4_timestep(1.0, 0.0, 1.0, 0.0, std::array{0.1}, 0.99) ==
        doctest::Approx(0.099).epsilon(1e-9));
}

TEST_CASE("rc4 stability region: no growth under the practical bound") {
  const int ng = 15;
  double worst = 0.0;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b)
      for (int c = 0; c < ng; ++c) {
        const double lam = 1.0 * a / (ng - 1);
        const double om = 1.95 * b / (ng - 1);
        const double ga = 0.68 * c / (ng - 1);
        const double q = 0.8 * std::pow(om, 4) + 16.0 * lam * lam - 14.4 * om * om -
                         64.0 * lam + 48.0;
        if (q < 0.0) continue;
        worst = std::max(worst, rc4_max_amp(triple1d(lam, om, ga), 17).max_abs);
      }
  CHECK(worst <= 1.0 + 1e-9);
}

TEST_CASE("rc4 Gamma limit curve") {
  const double g0 = rc4_gamma_limit(0.0);
  CHECK(g0 == doctest::Approx(0.6889953407).epsilon(1e-8));
  CHECK(std::abs(rc4_gamma_residual(0.0, 0.6889953407)) < 1e-7);
  CHECK(0.68 <= g0);
}
