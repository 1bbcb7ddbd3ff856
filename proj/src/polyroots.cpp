#include "hptoda/polyroots.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hptoda {

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs) {
  using cd = std::complex<double>;
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == cd(0)) --deg;
  if (deg == 0) throw std::invalid_argument("polynomial_roots: zero polynomial");
  --deg;
  if (deg == 0) return {};
  const cd lead = coeffs[deg];

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cd> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);

  auto eval = [&](cd z, cd& dp) {
    cd p = coeffs[deg];
    dp = 0.0;
    for (std::size_t k = deg; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + coeffs[k];
    }
    return p;
  };
  for (cd& z : roots) {
    cd dp;
    cd pz = eval(z, dp);
    for (int it = 0; it < 4 && pz != cd(0) && dp != cd(0); ++it) {
      const cd cand = z - pz / dp;
      cd dp_cand;
      const cd p_cand = eval(cand, dp_cand);
      if (!(std::abs(p_cand) < std::abs(pz))) break;
      z = cand;
      pz = p_cand;
      dp = dp_cand;
    }
  }
  return roots;
}

}  // namespace hptoda
