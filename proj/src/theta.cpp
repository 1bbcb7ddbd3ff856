#include "hptoda/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hptoda/error.hpp"

namespace hptoda {

using cd = std::complex<double>;
using std::numbers::pi;

namespace {

constexpr double kTailLog = 37.0;  // exp(-37) ~ 1e-16
const cd kI(0.0, 1.0);

void require_upper(cd omega) {
  if (!(omega.imag() > 0)) {
    std::ostringstream os;
    os << "Im omega must be positive, got " << omega;
    throw Error(ErrorKind::BadPeriodMatrix, os.str());
  }
}

}  // namespace

cd riemann_theta(cd z, cd omega, int extra_radius) {
  require_upper(omega);
  const double b = omega.imag();
  // |term n| = exp(-pi b n^2 - 2 pi n Im z) peaks at n = -Im z / b.
  const double centre = -z.imag() / b;
  const long c = std::lround(centre);
  const long half = static_cast<long>(std::ceil(std::sqrt(kTailLog / (pi * b)))) + 1 + extra_radius;
  // Factor out the largest term's real exponent to keep partial sums scaled.
  const double peak = pi * b * centre * centre;
  cd sum = 0;
  for (long n = c - half; n <= c + half; ++n) {
    const double nd = static_cast<double>(n);
    const cd e = kI * pi * nd * nd * omega + 2.0 * kI * pi * nd * z;
    sum += std::exp(e - peak);
  }
  return sum * std::exp(peak);
}

double theta_modulus(cd z, cd omega) {
  require_upper(omega);
  // The modulus form is lattice periodic; shift into the strip |y| <= 1/2
  // first so nothing overflows.
  const cd shifted = z - omega * std::round(z.imag() / omega.imag());
  const double ys = shifted.imag() / omega.imag();
  return std::abs(riemann_theta(shifted, omega)) * std::exp(-pi * ys * ys * omega.imag());
}

int theta_radius(const Eigen::MatrixXcd& omega) {
  const Eigen::MatrixXd im = omega.imag();
  if (!im.isApprox(im.transpose(), 1e-12))
    throw Error(ErrorKind::BadPeriodMatrix, "Im omega is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im);
  const double lmin = es.eigenvalues().minCoeff();
  if (!(lmin > 0)) throw Error(ErrorKind::BadPeriodMatrix, "Im omega is not positive definite");
  return static_cast<int>(std::ceil(std::sqrt(kTailLog / (pi * lmin)))) + 1;
}

cd riemann_theta(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& omega, int radius) {
  const int g = static_cast<int>(omega.rows());
  if (omega.cols() != g || z.size() != g)
    throw Error(ErrorKind::BadPeriodMatrix, "dimension mismatch between z and omega");
  const int r = std::max(theta_radius(omega), radius);
  Eigen::VectorXd n = Eigen::VectorXd::Constant(g, -r);
  cd sum = 0;
  while (true) {
    const Eigen::VectorXcd nc = n.cast<cd>();
    const cd quad = nc.dot(omega * nc);  // dot conjugates the first argument; n is real
    sum += std::exp(kI * pi * quad + 2.0 * kI * pi * nc.dot(z));
    int k = 0;
    while (k < g && n(k) == r) n(k++) = -r;
    if (k == g) break;
    n(k) += 1;
  }
  return sum;
}

LatticeDecomposition lattice_decompose(cd v, cd omega, double max_residual) {
  require_upper(omega);
  const double m = v.imag() / omega.imag();
  const double n = v.real() - m * omega.real();
  LatticeDecomposition d{std::lround(n), std::lround(m), 0.0};
  d.residual = std::abs(v - (static_cast<double>(d.n) + omega * static_cast<double>(d.m)));
  if (d.residual > max_residual) {
    std::ostringstream os;
    os << "nearest lattice point to " << v << " is " << d.n << " + " << d.m
       << " omega at distance " << d.residual;
    throw Error(ErrorKind::NotLatticePoint, os.str());
  }
  return d;
}

double lattice_distance(cd v, cd omega) {
  return lattice_decompose(v, omega, std::numeric_limits<double>::infinity()).residual;
}

}  // namespace hptoda
