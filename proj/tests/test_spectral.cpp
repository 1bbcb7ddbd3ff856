#include <gtest/gtest.h>

#include "hptoda/error.hpp"
#include "hptoda/spectral.hpp"
#include "test_support.hpp"

using namespace hptoda;
using hptoda::testing::random_state;
using hptoda::testing::worked_state;

namespace {

BivarLaurent worked_F() {
  return BivarLaurent::monomial(1, 2, 0) - BivarLaurent::monomial(10, 1, 0) + BivarLaurent(14) -
         BivarLaurent::monomial(1, 0, 1) - BivarLaurent::monomial(24, 0, -1);
}

}  // namespace

TEST(LaxMatrices, WorkedProduct) {
  auto lax = lax_matrices(worked_state());
  EXPECT_EQ(lax.X(0, 0), LaurentPoly(5));
  EXPECT_EQ(lax.X(0, 1), LaurentPoly(1) + LaurentPoly::monomial(8, -1));
  EXPECT_EQ(lax.X(1, 0), LaurentPoly(3) + LaurentPoly::y());
  EXPECT_EQ(lax.X(1, 1), LaurentPoly(5));
  EXPECT_EQ(laurent_det(lax.L), LaurentPoly(1) - LaurentPoly::monomial(12, -1));
  EXPECT_EQ(charpoly(lax.X), worked_F());
}

TEST(LaxMatrices, StructureForDeeperStates) {
  std::mt19937_64 rng(1);
  auto s = random_state(rng, 4, 3);
  auto lax = lax_matrices(s);
  ASSERT_EQ(lax.R.size(), 3u);
  EXPECT_EQ(lax.X, lax.L * lax.R[2] * lax.R[1] * lax.R[0]);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(lax.L(i, i), LaurentPoly(1));
  EXPECT_EQ(lax.L(0, 3), LaurentPoly::monomial(s.V(3), -1));
  EXPECT_EQ(lax.R[1](3, 0), LaurentPoly::y());
  EXPECT_EQ(lax.R[1](2, 3), LaurentPoly(1));
  // det L = 1 + (-1)^{N+1} (prod V) / y
  EXPECT_EQ(laurent_det(lax.L), LaurentPoly(1) - LaurentPoly::monomial(s.v_product(), -1));
}

TEST(Conjugate, UniformStateIsShiftInvariant) {
  auto s = make_state({{Rat(5, 2), Rat(5, 2)}}, {Rat(1, 3), Rat(1, 3)});
  auto X = lax_matrices(s).X;
  EXPECT_EQ(conjugate(X, Conjugation::Sigma, s), X);
}

TEST(Conjugate, SigmaSquaredIsIdentityForTwoSites) {
  auto s = worked_state();
  auto X = lax_matrices(s).X;
  EXPECT_EQ(conjugate(conjugate(X, Conjugation::Sigma, s), Conjugation::Sigma, s), X);
  EXPECT_EQ(shift_matrix(2) * shift_matrix(2), LaurentMatrix::identity(2).scaled(LaurentPoly::y()));
  EXPECT_EQ(shift_matrix(5) * shift_matrix_inverse(5), LaurentMatrix::identity(5));
}

TEST(Conjugate, MuIsOneTimeStep) {
  auto s = worked_state();
  auto X = lax_matrices(s).X;
  auto mu = conjugate(X, Conjugation::Mu, s);
  EXPECT_EQ(mu, lax_matrices(make_state({{Rat(4, 3), Rat(3, 2)}}, {Rat(9, 2), Rat(8, 3)})).X);
  // M = 1: nu and mu coincide.
  EXPECT_EQ(conjugate(X, Conjugation::Nu, s), mu);
}

TEST(Conjugate, MuAndNuMatchEvolutionOnRandomStates) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 12; ++i) {
    const int N = 2 + i % 3, M = 1 + i % 3;
    auto s = random_state(rng, N, M);
    std::vector<TodaState> traj;
    try {
      traj = evolve(s, M);
    } catch (const Error&) {
      continue;
    }
    auto X = lax_matrices(s).X;
    EXPECT_EQ(conjugate(X, Conjugation::Mu, s), lax_matrices(traj[1]).X);
    EXPECT_EQ(conjugate(X, Conjugation::Nu, s), lax_matrices(traj[M]).X);
    const BivarLaurent F = charpoly(X);
    for (auto kind : {Conjugation::Sigma, Conjugation::Mu, Conjugation::Nu})
      EXPECT_EQ(charpoly(conjugate(X, kind, s)), F);
  }
}

TEST(Genus, SpotValues) {
  EXPECT_EQ(spectral_genus(2, 1), 1);
  EXPECT_EQ(spectral_genus(3, 2), 3);
  EXPECT_EQ(spectral_genus(2, 2), 1);
  EXPECT_EQ(spectral_genus(2, 3), 2);
  for (int N = 2; N <= 6; ++N)
    for (int M = 1; M <= 6; ++M) {
      const int twice = (N - 1) * (M + 1) - gcd_int(N, M) + 1;
      EXPECT_EQ(twice % 2, 0);
      EXPECT_GE(twice, 0);
    }
}

TEST(SpectralData, WorkedState) {
  auto d = spectral_data(worked_state());
  EXPECT_EQ(d.F, worked_F());
  EXPECT_EQ(d.genus, 1);
  EXPECT_EQ(d.gcd_m, 1);
  ASSERT_EQ(d.a_points_y.size(), 1u);
  EXPECT_EQ(d.a_points_y[0], Rat(2));
  EXPECT_EQ(d.b_point_y, Rat(12));
  EXPECT_EQ(d.q_constant, Rat(24));
  EXPECT_EQ(d.F.x_coefficient(0).eval(Rat(2)), Rat(0));
  EXPECT_EQ(d.F.x_coefficient(0).eval(Rat(12)), Rat(0));
  EXPECT_EQ(d.F.coeff(0, -1), -d.q_constant);
}

TEST(SpectralData, SpecialPointsOnRandomStates) {
  std::mt19937_64 rng(3);
  for (int N = 2; N <= 5; ++N)
    for (int M = 1; M <= 3; ++M) {
      auto s = random_state(rng, N, M);
      auto d = spectral_data(s);  // throws on a root multiset mismatch
      const LaurentPoly f0 = d.F.x_coefficient(0);
      for (const Rat& y : d.a_points_y) EXPECT_TRUE(f0.eval(y).is_zero());
      EXPECT_TRUE(f0.eval(d.b_point_y).is_zero());
      // Only the x^0 y^-1 coefficient carries y^-1; its sign is (-1)^{N-1}.
      EXPECT_EQ(d.F.coeff(0, -1), (N % 2 == 0 ? -d.q_constant : d.q_constant));
      EXPECT_EQ(d.F.x_degree(), N);
    }
}

TEST(InvariantReport, WorkedTrajectoryIsExact) {
  auto rep = invariant_report(evolve(worked_state(), 25));
  EXPECT_TRUE(rep.exact);
  ASSERT_EQ(rep.per_step.size(), 26u);
  for (const auto& F : rep.per_step) EXPECT_EQ(F, worked_F());
}

TEST(InvariantReport, DeepStateIsExact) {
  auto s = make_state({{1, 2, 1}, {2, 1, 3}}, {1, 1, 3});
  EXPECT_TRUE(invariant_report(evolve(s, 25)).exact);
}

TEST(InvariantReport, DetectsMismatch) {
  auto a = worked_state();
  auto b = make_state({{1, 2}}, {3, 5});
  EXPECT_FALSE(invariant_report({a, b}).exact);
}

TEST(Gcd2, HiddenInvariant) {
  auto s = make_state({{1, 2}, {3, 1}}, {2, 5});
  auto diag = gcd2_diagnostics(s);
  EXPECT_EQ(diag.U[4], Rat(14));
  EXPECT_EQ(diag.U[3], Rat(60));
  EXPECT_TRUE(diag.matches_charpoly);
  for (bool c : diag.conserved) EXPECT_TRUE(c);
}

TEST(Gcd2, UniformLikeStateStaysConstant) {
  auto s = make_state({{3, 3}, {3, 3}}, {Rat(1, 2), Rat(1, 2)});
  auto diag = gcd2_diagnostics(s);
  for (bool c : diag.conserved) EXPECT_TRUE(c);
  EXPECT_TRUE(diag.matches_charpoly);
}

TEST(Gcd2, RequiresTwoByTwo) {
  EXPECT_THROW((void)gcd2_quantities(worked_state()), Error);
}
