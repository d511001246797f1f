#include <gtest/gtest.h>

#include <cmath>

#include "levyembed/blj.hpp"
#include "levyembed/embedding.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace levyembed;

TEST(Blj, LocalTimeBeforeZero) {
  const auto s = build_scale(LevyModel::brownian(), 20.0, 0.0025);
  const auto mu = TargetMeasure::two_point(-1.0, 1.0, 0.5);
  const BljQuantities q(mu, s);
  EXPECT_NEAR(q.v(1.0, 2.0), 2.0, 1e-12);
  EXPECT_NEAR(q.v(-1.0, 1.0), 0.0, 1e-15);
  // V(y) = |y| on [-1, 1] and 1 outside
  for (double y : {-0.75, -0.2, 0.4, 0.9}) EXPECT_NEAR(q.V(y), std::abs(y), 1e-9);
  EXPECT_NEAR(q.V(3.0), 1.0, 1e-9);
  EXPECT_NEAR(q.lambda(), 1.0, 1e-8);
}

TEST(Blj, LambdaEqualsExpectedLocalTimeForAdmissibleTargets) {
  const auto bm = build_scale(LevyModel::brownian(), 20.0, 0.0025);
  const auto jd = build_scale(LevyModel(1.0, 1.0, 1.0, JumpLaw::exponential(1.0)), 20.0, 0.0025);
  const double p = 3.0 / (4.0 + 2.0 * std::exp(-3.0));
  struct Case {
    TargetMeasure mu;
    const ScaleFunction* s;
  };
  const Case cases[] = {{TargetMeasure::two_point(-1.0, 1.0, 0.5), &bm},
                        {TargetMeasure::uniform(-1.0, 1.0), &bm},
                        {TargetMeasure::exponential(1.0), &bm},
                        {TargetMeasure::two_point(-1.0, 1.0, p), &jd},
                        {TargetMeasure::exponential(1.0), &jd}};
  for (const auto& c : cases) {
    const BljQuantities q(c.mu, *c.s);
    EXPECT_NEAR(q.lambda(), expected_local_time(c.mu, *c.s), 1e-4);
  }
  EXPECT_NEAR(expected_local_time(TargetMeasure::two_point(-1.0, 1.0, p), jd), p * oracle::jd_w(1.0), 1e-9);
}

TEST(Blj, RatioAndGrid) {
  const auto s = build_scale(LevyModel::brownian(), 20.0, 0.0025);
  const auto mu = TargetMeasure::uniform(-1.0, 1.0);
  const BljQuantities q(mu, s, 101);
  ASSERT_EQ(q.y_grid().size(), 101u);
  ASSERT_EQ(q.V_table().size(), 101u);
  for (double v : q.V_table()) EXPECT_LE(v, q.lambda() + 1e-12);
  // V(0) = 0; V(1/2) = 3/8 against lambda = 1/2
  EXPECT_NEAR(q.blj_ratio(0.0), 1.0, 1e-9);
  EXPECT_NEAR(q.blj_ratio(0.5), 4.0, 1e-3);
}

TEST(Blj, DiscountedReducesToUndiscounted) {
  const auto s = ScaleFunction::build(LevyModel::brownian(1.0, 0.5), {20.0, 0.0025}, {1e-6});
  const BljQuantities q(TargetMeasure::uniform(-1.0, 1.0), s);
  for (auto [x, y] : {std::pair{0.5, -0.5}, {1.0, 0.3}, {-0.4, -1.0}})
    EXPECT_NEAR(q.v_q(1e-6, x, y), q.v(x, y), 1e-4);
}
