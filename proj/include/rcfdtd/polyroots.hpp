#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rcfdtd {

/// All complex roots of c[0] + c[1] A + ... + c[n] A^n.
///
/// Roots come from the eigenvalues of the companion matrix and are then
/// polished with a few Newton steps.  Leading coefficients that are
/// negligible relative to the largest one are trimmed; trailing zero
/// coefficients produce exact zero roots.
std::vector<std::complex<double>> poly_roots(std::span<const std::complex<double>> coeffs);

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

/// Horner evaluation of the same ascending-coefficient convention.
std::complex<double> poly_eval(std::span<const std::complex<double>> coeffs,
                               std::complex<double> z);

}  // namespace rcfdtd
