#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hptoda {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  explicit GaussLegendre(int order);
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Integral over s in [0, 1] of numer(s) / sqrt(radicand(s)), where the
/// square root is continued along s starting from root_start (a value of
/// sqrt(radicand(0))). Consecutive evaluations may turn the root by at most
/// pi/4; otherwise the panel is halved.
struct TrackedIntegral {
  std::complex<double> value;
  std::complex<double> root_end;  // continued sqrt(radicand(1))
};

using ComplexFn = std::function<std::complex<double>(double)>;

/// Adaptive Gauss-Legendre. Throws SheetTrackingLost if the root cannot be
/// followed or the panel tree gets too deep.
TrackedIntegral integrate_tracked(const ComplexFn& radicand, const ComplexFn& numer,
                                  std::complex<double> root_start, double tol = 1e-14);

/// Fixed composite rule with `panels` equal panels of the given order; used
/// where node doubling is the convergence test.
TrackedIntegral integrate_tracked_composite(const ComplexFn& radicand, const ComplexFn& numer,
                                            std::complex<double> root_start, int panels,
                                            int order = 16);

/// sqrt(z) chosen as the sign closest to `previous`.
std::complex<double> continue_sqrt(std::complex<double> z, std::complex<double> previous);

}  // namespace hptoda
