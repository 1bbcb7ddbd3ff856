#pragma once

#include <complex>
#include <vector>

namespace hptoda {

/// All complex roots of sum_k coeffs[k] z^k (coefficients low to high; the
/// leading one must be nonzero). Companion-matrix eigenvalues, then a few
/// Newton iterations on each root.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace hptoda
