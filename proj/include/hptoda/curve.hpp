#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "hptoda/lattice.hpp"
#include "hptoda/laurent_matrix.hpp"

namespace hptoda {

using cd = std::complex<double>;

/// A point (x, y) on F(x, y) = 0 together with |F(x, y)|.
struct CurvePoint {
  cd x;
  cd y;
  double residual = 0;
};

Eigen::MatrixXcd evaluate(const LaurentMatrix& m, cd y);

/// 1 + |x|^N + |y|^d with N the x-degree and d the largest |y-degree| of F.
double residual_scale(const BivarLaurent& F, cd x, cd y);
CurvePoint make_curve_point(const BivarLaurent& F, cd x, cd y);

/// The N points of the curve over a fixed y != 0. Throws IllConditionedFiber
/// if a root fails the residual bound.
std::vector<CurvePoint> x_fiber(const BivarLaurent& F, cd y);

/// Eigenvector of X_t(y) for eigenvalue x, carried to times t+1 and t+M by
/// the transfer relations g^{t+1} = R_t g^t and g^{t+M} = L_t^{-1} g^t.
struct EigenChain {
  Eigen::VectorXcd g_t;
  Eigen::VectorXcd g_t1;
  Eigen::VectorXcd g_tM;
};

EigenChain eigen_chain(const TodaState& state, const CurvePoint& p);

/// Psi~(p) = g_1^t g_N^{t+1} / (g_N^t g_1^{t+1}).
cd psi_ratio_function(const EigenChain& chain);
/// Phi~(p) = g_N^t g_N^{t+M} / (g_1^t g_{N-1}^{t+M} y).
cd phi_ratio_function(const EigenChain& chain, cd y);

/// Geometric radius schedule, "start:stop:count" on the command line.
struct RadiusSchedule {
  double start = 1e2;
  double stop = 1e8;
  int count = 12;

  std::vector<double> radii() const;
  static RadiusSchedule parse(const std::string& text);
};

struct BoundarySample {
  double radius = 0;
  cd y;
  cd x;
  cd psi;
  cd phi;
  std::vector<double> abs_ratio;  // |g_i / g_N|, i = 1..N-1
};

struct BoundarySide {
  std::vector<BoundarySample> samples;
  cd psi_limit;
  cd phi_limit;
  std::vector<double> slopes;  // d log|g_i/g_N| / d log|k|, i = 1..N-1
};

struct BoundaryLimits {
  BoundarySide at_P;  // |y| -> infinity
  BoundarySide at_Q;  // |y| -> 0
  cd psi_ratio;       // psi(Q) / psi(P)
  cd phi_ratio;       // phi(Q) / phi(P)
};

/// Approaches P and Q along the ray arg(y) = direction. Limits are
/// extrapolated in the local parameter |k| = r^{-1/N}; throws NoConvergence
/// when two consecutive extrapolations differ by more than tol (relative).
/// Requires gcd(N, M) = 1.
BoundaryLimits boundary_limits(const TodaState& state, const RadiusSchedule& schedule,
                               double direction = 0.3, double tol = 1e-5);

/// Polynomial extrapolation to h = 0 through (h_i, f_i) (Neville).
cd extrapolate_to_zero(const std::vector<double>& h, const std::vector<cd>& f);

/// Affine poles of g_1/g_2 for a 2x2 Lax matrix: roots y0 of X_21 paired with
/// x0 = X_11(y0). Throws DegenerateDivisor on multiple roots or when the
/// number of points differs from the genus.
std::vector<CurvePoint> divisor_points(const LaurentMatrix& x_matrix, const BivarLaurent& F,
                                       int genus);
std::vector<CurvePoint> divisor_points(const TodaState& state);

}  // namespace hptoda
