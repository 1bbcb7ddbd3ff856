#include <gtest/gtest.h>

#include "float_oracle.hpp"
#include "hptoda/error.hpp"
#include "hptoda/lattice.hpp"
#include "test_support.hpp"

using namespace hptoda;
using hptoda::testing::random_state;
using hptoda::testing::worked_state;

TEST(Validate, AcceptsAndRejects) {
  EXPECT_FALSE(validate(worked_state()).has_value());
  EXPECT_TRUE(validate(make_state({{1, 2}}, {1, 2})).has_value());
  EXPECT_FALSE(validate(make_state({{1, 2, 1}, {2, 1, 3}}, {1, 1, 3})).has_value());
  EXPECT_TRUE(validate(make_state({{1, 0}}, {3, 4})).has_value());
  EXPECT_TRUE(validate(make_state({{1, 2}}, {3})).has_value());
  // Every layer is checked, not only the front one.
  auto bad_back = validate(make_state({{1, 2}, {3, 4}}, {3, 4}));
  ASSERT_TRUE(bad_back.has_value());
  EXPECT_NE(bad_back->reason.find("layer 1"), std::string::npos);
}

TEST(Step, UniformStateIsFixed) {
  auto s = make_state({{2, 2}}, {1, 1});
  auto next = step(s);
  EXPECT_EQ(next.i_layers, s.i_layers);
  EXPECT_EQ(next.v, s.v);
  EXPECT_EQ(next.time, 1);
}

TEST(Step, WorkedExample) {
  StepTrace trace;
  auto next = step(worked_state(), &trace);
  EXPECT_EQ(trace.transfer.a, Rat(-4));
  EXPECT_EQ(trace.transfer.b, Rat(16));
  EXPECT_EQ(trace.transfer.c, Rat(-6));
  EXPECT_EQ(trace.transfer.d, Rat(18));
  EXPECT_EQ(trace.trivial_root, Rat(1));
  EXPECT_EQ(trace.selected_root, Rat(8, 3));
  EXPECT_EQ(next.i_layers[0], (std::vector<Rat>{Rat(4, 3), Rat(3, 2)}));
  EXPECT_EQ(next.v, (std::vector<Rat>{Rat(9, 2), Rat(8, 3)}));
}

TEST(Step, DeepStateConservesProducts) {
  auto s = make_state({{1, 2, 1}, {2, 1, 3}}, {1, 1, 3});
  auto next = step(s);
  EXPECT_EQ(next.layer_product(1), Rat(2));
  EXPECT_EQ(next.v_product(), Rat(3));
  EXPECT_EQ(next.i_layers[0], s.i_layers[1]);
  EXPECT_TRUE(satisfies_evolution(s, next));
  auto oracle = hptoda::testing::float_oracle_step(s);
  for (int n = 0; n < 3; ++n) {
    EXPECT_NEAR(next.I(1, n).to_double(), oracle.i_new[n], 1e-12);
    EXPECT_NEAR(next.V(n).to_double(), oracle.v_new[n], 1e-12);
  }
}

TEST(Step, RejectsConstraintViolation) {
  try {
    (void)step(make_state({{1, 2}}, {1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
  }
}

TEST(Step, TrivialRootSolvesTheFixedPointQuadratic) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    auto s = random_state(rng, 2 + i % 4, 1 + i % 3);
    const Mobius g = ring_transfer(s);
    const Rat r0 = s.I(0, 0);
    EXPECT_TRUE((g.c * r0 * r0 + (g.d - g.a) * r0 - g.b).is_zero());
  }
}

TEST(Step, MatchesFloatingPointOracle) {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 100; ++i) {
    auto s = random_state(rng, 2 + i % 4, 1 + i % 3);
    TodaState next;
    try {
      next = step(s);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::SingularEvolution);
      continue;
    }
    auto oracle = hptoda::testing::float_oracle_step(s);
    for (int n = 0; n < s.sites; ++n) {
      const double exact_i = next.I(s.depth - 1, n).to_double();
      const double exact_v = next.V(n).to_double();
      EXPECT_LE(std::abs(exact_i - oracle.i_new[n]), 1e-10 * std::abs(exact_i));
      EXPECT_LE(std::abs(exact_v - oracle.v_new[n]), 1e-10 * std::abs(exact_v));
    }
  }
}

TEST(Evolve, UniformTrajectoryIsConstant) {
  auto s = make_state({{2, 2}}, {1, 1});
  auto traj = evolve(s, 10);
  ASSERT_EQ(traj.size(), 11u);
  for (const auto& x : traj) {
    EXPECT_EQ(x.i_layers, s.i_layers);
    EXPECT_EQ(x.v, s.v);
  }
}

TEST(Evolve, ProductsConservedOnWorkedState) {
  auto traj = evolve(worked_state(), 2);
  ASSERT_EQ(traj.size(), 3u);
  EXPECT_EQ(traj[2].layer_product(0), Rat(2));
  EXPECT_EQ(traj[2].v_product(), Rat(12));
}

TEST(Evolve, ConsecutivePairsSatisfyEquations) {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 10; ++i) {
    auto s = random_state(rng, 2 + i % 3, 1 + i % 3);
    std::vector<TodaState> traj;
    try {
      traj = evolve(s, 25);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::SingularEvolution) << e.what();
      continue;
    }
    for (std::size_t k = 1; k < traj.size(); ++k) {
      EXPECT_TRUE(satisfies_evolution(traj[k - 1], traj[k]));
      EXPECT_EQ(traj[k].v_product(), s.v_product());
      for (int j = 0; j < s.depth; ++j) EXPECT_NE(traj[k].layer_product(j), s.v_product());
    }
  }
}

TEST(Evolve, ReportsFailingStepIndex) {
  // I_2 + V_2 = 0 puts the nontrivial fixed point at infinity.
  try {
    (void)evolve(make_state({{1, -4}}, {3, 4}), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularEvolution);
    EXPECT_NE(std::string(e.what()).find("at step 0"), std::string::npos);
  }
}
