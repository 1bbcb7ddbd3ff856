#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hptoda {

/// theta(z; omega) = sum_n exp(pi i n^2 omega + 2 pi i n z), genus one.
/// The sum is centred on the dominant term and truncated where the Gaussian
/// tail drops below 1e-16 relative; `extra_radius` widens it (for stability
/// checks). Throws BadPeriodMatrix unless Im omega > 0.
std::complex<double> riemann_theta(std::complex<double> z, std::complex<double> omega,
                                   int extra_radius = 0);

/// General genus: sum over the integer box |n_i| <= radius. radius <= 0 picks
/// one from the smallest eigenvalue of Im omega. Throws BadPeriodMatrix if
/// Im omega is not symmetric positive definite.
std::complex<double> riemann_theta(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& omega,
                                   int radius = 0);

/// Truncation radius used by the general-genus sum for this omega.
int theta_radius(const Eigen::MatrixXcd& omega);

/// |theta(z)| * exp(-pi y^2 Im omega) with z = x + omega y; lattice periodic,
/// so it measures how close z is to the theta divisor.
double theta_modulus(std::complex<double> z, std::complex<double> omega);

/// Nearest n + omega m to v.
struct LatticeDecomposition {
  long n;
  long m;
  double residual;
};

/// Throws NotLatticePoint if the residual exceeds max_residual.
LatticeDecomposition lattice_decompose(std::complex<double> v, std::complex<double> omega,
                                       double max_residual = 1e-6);

/// Distance from v to the lattice (no throw).
double lattice_distance(std::complex<double> v, std::complex<double> omega);

}  // namespace hptoda
