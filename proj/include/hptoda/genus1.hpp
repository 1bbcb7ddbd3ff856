#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "hptoda/curve.hpp"
#include "hptoda/lattice.hpp"
#include "hptoda/rational.hpp"
#include "hptoda/theta.hpp"

namespace hptoda {

/// F = p(x) - y - c/y with p monic quadratic, rewritten as w^2 = q(x) where
/// w = 2y - p(x) and q = p^2 - 4c. P is the point over x = infinity with
/// w/x^2 -> +1 (y ~ x^2), Q the one with w/x^2 -> -1 (y -> 0).
struct HyperellipticModel {
  std::array<Rat, 3> p_coeffs;    // p0, p1, p2 = 1
  Rat c;
  std::array<double, 5> q_coeffs;  // low to high, monic
  std::array<cd, 4> branch_points;

  cd p(cd x) const;
  cd q(cd x) const;  // evaluated as the product over branch points
  cd w(const CurvePoint& pt) const { return 2.0 * pt.y - p(pt.x); }
  double scale() const;  // 1 + max |branch point|
};

/// Requires N = 2, M = 1. Throws CurveSingular if branch points collide.
HyperellipticModel hyperelliptic_model(const TodaState& state);
HyperellipticModel hyperelliptic_model(const BivarLaurent& F);

/// A = integral of dx/w over the cycle around the cut (e0, e1), B around the
/// adjacent cut (e1, e2), oriented so Im omega > 0.
struct PeriodData {
  cd a_period;
  cd b_period;
  cd omega;
  std::array<int, 3> cycle{};  // indices of e0, e1, e2 into branch_points
  int panels = 0;              // composite panels at convergence
  double doubling_delta = 0;   // |omega(2 * panels) - omega(panels)|
};

/// Throws QuadratureNoConverge if node doubling never settles below 1e-9.
PeriodData periods(const HyperellipticModel& model);
PeriodData periods(const std::array<cd, 4>& branch_points);

enum class InfinitePoint { P, Q };

/// Normalized Abel integrals of dx/w from a branch point along fixed
/// piecewise-straight paths. Results are representatives modulo Z + omega Z.
class AbelMap {
 public:
  AbelMap(const HyperellipticModel& model, const PeriodData& periods);

  int base_index() const { return base_; }
  cd base_point() const { return model_.branch_points[base_]; }
  const HyperellipticModel& model() const { return model_; }
  const PeriodData& period_data() const { return periods_; }

  /// Finite point (x, w) with w^2 = q(x). Throws SheetTrackingLost if the
  /// tracked square root does not land on +-w.
  cd operator()(cd x, cd w) const;
  cd operator()(const CurvePoint& pt) const { return (*this)(pt.x, model_.w(pt)); }
  cd operator()(InfinitePoint pt) const;

  /// Normalized integral along the polygon through `vertices`, starting on
  /// the sheet where sqrt(q(vertices[0])) = w_start. No vertex or edge may
  /// touch a branch point.
  cd path_integral(const std::vector<cd>& vertices, cd w_start) const;

 private:
  // Unnormalized integral from the base point to x, plus the tracked w at x.
  std::pair<cd, cd> from_base(cd x) const;
  cd segment(cd from, cd to, cd& w) const;
  cd leave_base(cd to, cd& w) const;
  double clearance(cd a, cd b, bool skip_base) const;
  cd to_infinity(InfinitePoint pt) const;

  HyperellipticModel model_;
  PeriodData periods_;
  int base_;
};

/// Abel images of the special points and of the divisor point of X_0.
struct AbelImages {
  cd base_x;
  cd u_P, u_Q, u_A0, u_B, u_D0;
  cd u_delta;  // (1 + omega) / 2
  CurvePoint divisor;
};

AbelImages abel_images(const TodaState& state, const AbelMap& abel);

/// Lattice decompositions of the two principal divisors: N (P - Q) from y and
/// A0 + B - P - Q from x.
struct Principality {
  LatticeDecomposition y_divisor;
  LatticeDecomposition x_divisor;
};

Principality principality(const AbelImages& images, cd omega, int sites = 2);

/// tau_n^t = theta(z(n, t)) with
/// z(n, t) = u_D0 + (n + 1)(u_P - u_Q) + t (u_P - u_A0) - u_P - u_delta.
class TauGrid {
 public:
  TauGrid(const AbelImages& images, cd omega, int sites = 2);
  cd z(long n, long t) const;
  cd tau(long n, long t) const { return riemann_theta(z(n, t), omega_); }
  /// Predicted tau_{n+N}^t / tau_n^t.
  cd quasi_period_factor(long n, long t) const;
  const LatticeDecomposition& period_shift() const { return shift_; }
  cd omega() const { return omega_; }

 private:
  AbelImages images_;
  cd omega_;
  int sites_;
  LatticeDecomposition shift_;  // N (u_P - u_Q) = n + omega m
};

struct LinearizationReport {
  CurvePoint d_x0, d_sigma, d_x1;  // divisor points of X_0, sigma X_0, X_1
  cd space_shift, time_shift;      // Abel differences
  double space_residual = 0;       // vs u_P - u_Q
  double time_residual = 0;        // vs u_P - u_A0
  double time_residual_b = 0;      // vs u_B - u_Q
};

/// Requires N = 2, M = 1.
LinearizationReport linearization_check(const TodaState& state);

struct ReconstructionRow {
  long n;
  long t;
  char var;  // 'I' or 'V'
  Rat exact;
  cd reconstructed;
  double rel_err;
};

struct ReconstructionReport {
  HyperellipticModel model;
  PeriodData periods;
  AbelImages images;
  cd d, d_prime;
  double d_spread = 0, d_prime_spread = 0;
  std::vector<ReconstructionRow> rows;
  double max_rel_err = 0;
  LatticeDecomposition shift{};
  double max_prod_i_err = 0;  // product identity for I, relative
  double max_prod_v_err = 0;
  double max_quasi_period_err = 0;
};

/// Theta-function reconstruction of t = 0..steps for an N = 2, M = 1 state.
/// Throws ThetaZeroHit if a tau value sits on the theta divisor and
/// CalibrationDrift if d or d' vary by more than 1e-8.
ReconstructionReport reconstruct_and_verify(const TodaState& state, int steps);

/// JSON object with the model, periods and Abel images.
std::string periods_json(const HyperellipticModel& model, const PeriodData& periods,
                         const AbelImages& images);

}  // namespace hptoda
