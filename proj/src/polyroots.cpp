#include "rcfdtd/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "rcfdtd/errors.hpp"

namespace rcfdtd {

using cplx = std::complex<double>;

std::complex<double> poly_eval(std::span<const cplx> coeffs, cplx z) {
  cplx p = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * z + *it;
  return p;
}

namespace {

cplx poly_deriv_eval(std::span<const cplx> coeffs, cplx z) {
  cplx p = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k)
    p = p * z + static_cast<double>(k) * coeffs[static_cast<size_t>(k)];
  return p;
}

void newton_polish(std::span<const cplx> coeffs, cplx& root) {
  // Keep the best-residual iterate; near multiple roots the computed p/p'
  // ratio degenerates to rounding noise and a raw Newton step can jump away.
  cplx best = root;
  double best_res = std::abs(poly_eval(coeffs, root));
  cplx cur = root;
  for (int it = 0; it < 8; ++it) {
    const cplx p = poly_eval(coeffs, cur);
    const cplx dp = poly_deriv_eval(coeffs, cur);
    if (std::abs(dp) == 0.0) break;
    const cplx step = p / dp;
    cur -= step;
    const double res = std::abs(poly_eval(coeffs, cur));
    if (res < best_res) {
      best_res = res;
      best = cur;
    }
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(cur))) break;
  }
  root = best;
}

std::vector<cplx> differentiate(std::span<const cplx> coeffs) {
  std::vector<cplx> d;
  for (size_t k = 1; k < coeffs.size(); ++k) d.push_back(static_cast<double>(k) * coeffs[k]);
  return d;
}

// An m-fold root is a simple root of the (m-1)-th derivative, where Newton
// converges to machine precision.  Detect root clusters, refine their
// centroid that way, and substitute only when the residual does not degrade
// (so genuinely close-but-distinct roots are left alone).
void refine_clusters(std::span<const cplx> coeffs, std::vector<cplx>& roots) {
  const size_t n = roots.size();
  std::vector<bool> done(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<size_t> cluster{i};
    const double tol = 2e-3 * (1.0 + std::abs(roots[i]));
    for (size_t j = i + 1; j < n; ++j)
      if (!done[j] && std::abs(roots[j] - roots[i]) < tol) cluster.push_back(j);
    if (cluster.size() < 2) continue;

    cplx centroid = 0.0;
    double worst_res = 0.0;
    for (size_t j : cluster) {
      centroid += roots[j];
      worst_res = std::max(worst_res, std::abs(poly_eval(coeffs, roots[j])));
    }
    centroid /= static_cast<double>(cluster.size());

    std::vector<cplx> d(coeffs.begin(), coeffs.end());
    for (size_t k = 1; k < cluster.size(); ++k) d = differentiate(d);
    cplx z = centroid;
    for (int it = 0; it < 30; ++it) {
      const cplx p = poly_eval(d, z);
      const cplx dp = poly_deriv_eval(d, z);
      if (std::abs(dp) == 0.0) break;
      const cplx step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    if (std::abs(z - centroid) < 4.0 * tol &&
        std::abs(poly_eval(coeffs, z)) <= std::max(worst_res, 1e-13)) {
      for (size_t j : cluster) {
        roots[j] = z;
        done[j] = true;
      }
    }
  }
}

}  // namespace

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
  // Strip negligible leading coefficients.
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) throw NumericalError("poly_roots: zero polynomial");
  size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) < 1e-14 * cmax) --deg;

  std::vector<cplx> c(coeffs.begin(), coeffs.begin() + static_cast<long>(deg) + 1);
  std::vector<cplx> roots;

  // Deflate exact zero roots coming from vanishing low-order coefficients.
  size_t lo = 0;
  while (lo < deg && std::abs(c[lo]) == 0.0) {
    roots.emplace_back(0.0, 0.0);
    ++lo;
  }
  if (lo > 0) c.erase(c.begin(), c.begin() + static_cast<long>(lo));
  const size_t n = c.size() - 1;
  if (n == 0) return roots;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
  for (size_t i = 1; i < n; ++i) companion(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
  for (size_t i = 0; i < n; ++i)
    companion(static_cast<long>(i), static_cast<long>(n - 1)) = -c[i] / c[n];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("poly_roots: eigenvalue iteration failed");

  std::vector<cplx> polished;
  for (long i = 0; i < static_cast<long>(n); ++i) {
    cplx r = es.eigenvalues()(i);
    newton_polish(c, r);
    polished.push_back(r);
  }
  refine_clusters(std::span<const cplx>(c), polished);
  roots.insert(roots.end(), polished.begin(), polished.end());
  return roots;
}

std::vector<cplx> poly_roots(std::span<const double> coeffs) {
  std::vector<cplx> c(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
  return poly_roots(std::span<const cplx>(c));
}

}  // namespace rcfdtd
