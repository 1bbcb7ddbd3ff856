#pragma once

#include <array>
#include <vector>

#include "hptoda/lattice.hpp"
#include "hptoda/laurent_matrix.hpp"

namespace hptoda {

struct LaxMatrices {
  LaurentMatrix L;
  std::vector<LaurentMatrix> R;  // R[j] built from I^{t+j}
  LaurentMatrix X;               // L R[M-1] ... R[0]
};

LaurentMatrix lax_L(const TodaState& state);
LaurentMatrix lax_R(const TodaState& state, int layer);
LaxMatrices lax_matrices(const TodaState& state);

/// Cyclic shift S (superdiagonal ones, y in the bottom-left corner) and its
/// exact inverse over the Laurent ring.
LaurentMatrix shift_matrix(std::size_t n);
LaurentMatrix shift_matrix_inverse(std::size_t n);

enum class Conjugation {
  Sigma,  // S X S^{-1}: lattice shift n -> n+1
  Mu,     // R_t X R_t^{-1}: time shift t -> t+1
  Nu,     // L_t^{-1} X L_t: time shift t -> t+M
};

LaurentMatrix conjugate(const LaurentMatrix& x, Conjugation kind, const TodaState& state);

int gcd_int(int a, int b);
/// ((N-1)(M+1) - gcd(N,M) + 1) / 2
int spectral_genus(int sites, int depth);

struct SpectralData {
  BivarLaurent F;
  int genus = 0;
  int gcd_m = 0;
  std::vector<Rat> a_points_y;  // A_j = (0, (-1)^N prod_n I_n^{t+j})
  Rat b_point_y;                // B = (0, (-1)^N prod_n V_n^t)
  Rat q_constant;               // E = prod of all I times prod V
};

/// Throws SpecialPointMismatch if y F(0, y) does not factor over the
/// predicted special points.
SpectralData spectral_data(const TodaState& state);

struct InvariantReport {
  std::vector<BivarLaurent> per_step;
  bool exact = true;
};

InvariantReport invariant_report(const std::vector<TodaState>& trajectory);

struct Gcd2Diagnostics {
  std::array<Rat, 5> U;  // U_1..U_5
  std::array<bool, 5> conserved{};
  bool matches_charpoly = false;
};

/// Only for N = M = 2. U_1..U_4 are the charpoly coefficients; U_5 is the sum
/// of all entries, conserved without appearing in F.
std::array<Rat, 5> gcd2_quantities(const TodaState& state);
Gcd2Diagnostics gcd2_diagnostics(const TodaState& state, int steps = 25);

}  // namespace hptoda
