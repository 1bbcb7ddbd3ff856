#pragma once

#include <array>
#include <vector>

#include "hptoda/lattice.hpp"
#include "hptoda/laurent.hpp"
#include "hptoda/rational.hpp"

namespace hptoda {

/// Toda(N, M) state whose front layer is (zeta, ..., zeta), followed by the
/// I layers of a Toda(N, M - 1) base state; V is the base V. Throws
/// ConstraintViolated if the lifted state fails validation.
TodaState lift_with_zeta(const TodaState& base, const Rat& zeta);

/// Residuals at block k, site n (1-based n, k >= 1), exact:
///   r1 = I_n^{kM+M-1} - I_n^{kM-1} - V_n^{kM-1} + V_{n-1}^{kM+1}
///   r2 = V_n^{kM+1} I_n^{kM+M-1} - I_{n+1}^{kM-1} V_n^{kM-1}
///   r3 = V_n^{kM+1} - V_n^{kM}
///   r4 = I_n^{kM+M} / zeta - 1
struct ResidualRow {
  int k;
  int n;
  std::array<Rat, 4> r;
};

struct ResidualTable {
  std::vector<ResidualRow> rows;
  std::array<double, 4> max_abs{};  // max |r_i| over the table
};

/// Needs a trajectory covering times up to blocks * M + M.
ResidualTable lift_residuals(const std::vector<TodaState>& trajectory, int blocks, const Rat& zeta);

struct ZetaRow {
  Rat zeta;
  std::array<double, 4> max_abs{};
  double subsequence_deviation = 0;  // vs a direct Toda(N, M - 1) run
  bool spectrum_conserved = false;   // F(x, y) exact along the lifted run
};

struct ZetaReport {
  std::vector<ZetaRow> rows;
  double slope = 0;     // least-squares slope of log max(r1, r2) against log zeta
  bool monotone = false;  // max(r1, r2) strictly decreasing in zeta
};

/// Runs lift + exact evolution for each zeta (at least three, increasing).
/// Evolution failures are rethrown with the offending zeta.
ZetaReport zeta_sweep(const TodaState& base, const std::vector<Rat>& zetas, int blocks = 3);

/// The displayed closed form of det(X_0 - x E) for the N = 2, M = 3 lift of
/// a Toda(2, 2) base, in terms of U_1 .. U_6 of the base.
BivarLaurent lifted_charpoly_display(const TodaState& base, const Rat& zeta);

/// U_1 .. U_6 of a Toda(2, 2) state.
std::array<Rat, 6> lifted_u_quantities(const TodaState& base);

struct LiftedCharpolyVerdict {
  std::vector<Rat> zetas;
  std::array<Rat, 6> u;
  bool identity = false;
};

/// Compares the exact charpoly of the lifted state with the display at each
/// zeta. Both sides have degree at most 2 in zeta, so agreement at five
/// distinct samples proves the identity. Throws IdentityMismatch naming the
/// first differing coefficient.
LiftedCharpolyVerdict lifted_charpoly_identity(const TodaState& base, const std::vector<Rat>& zetas);

}  // namespace hptoda
