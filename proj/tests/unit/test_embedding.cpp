#include <gtest/gtest.h>

#include <cmath>

#include "levyembed/embedding.hpp"
#include "levyembed/errors.hpp"
#include "levyembed/excursion.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace levyembed;

namespace {
const ScaleFunction& bm() {
  static const auto s = build_scale(LevyModel::brownian(), 20.0, 0.0025);
  return s;
}
const ScaleFunction& jds() {
  static const auto s = build_scale(test_support::jd(), 20.0, 0.0025);
  return s;
}
}  // namespace

TEST(Embedding, BrownianTwoPointSignCondition) {
  const auto mu = TargetMeasure::two_point(-1.0, 1.0, 0.5);
  const auto qc = QuantileConstruction::thm1(mu, bm());
  EXPECT_NEAR(qc.a_star(), 0.5, 1e-15);
  EXPECT_NEAR(qc.alpha(0.75), 0.25, 1e-9);
  EXPECT_NEAR(qc.alpha_inverse(0.25), 0.75, 1e-9);
  EXPECT_LT(qc.balance_mismatch(), 1e-8);
  const auto b = build_boundary_thm1(mu, bm());
  for (double l : {0.0, 0.3, 1.0, 4.0}) {
    EXPECT_NEAR(b.phi_plus(l), 1.0, 1e-12) << l;
    EXPECT_NEAR(b.phi_minus(l), 1.0, 1e-12) << l;
  }
  const ExcursionLaw n(bm());
  for (auto [l, s] : law_of_LT(b, n))
    if (l < 10.0) EXPECT_NEAR(s, std::exp(-l), 1e-6) << l;
  EXPECT_NEAR(expected_local_time(mu, bm()), 1.0, 1e-10);
}

TEST(Embedding, BrownianUniformDensityRule) {
  const auto mu = TargetMeasure::uniform(-1.0, 1.0);
  const auto b = build_boundary_thm2(mu, bm());
  EXPECT_EQ(b.variant(), BoundaryVariant::Thm2);
  // symmetric target: g(y) = -y and psi_+(y) = -y - log(1 - y)
  for (double y : {0.1, 0.4, 0.7, 0.95}) {
    const double l = -y - std::log1p(-y);
    EXPECT_NEAR(b.phi_plus(l), y, 1e-5) << y;
    EXPECT_NEAR(b.phi_minus(l), y, 1e-5) << y;
    EXPECT_NEAR(b.psi_plus(y), l, 1e-4 * (1 + l)) << y;
  }
}

TEST(Embedding, OneSidedExponential) {
  const auto mu = TargetMeasure::exponential(1.0);
  const auto b = build_boundary_thm3(mu, bm());
  EXPECT_EQ(b.variant(), BoundaryVariant::Thm3);
  for (double l : {0.01, 0.25, 1.0, 4.0, 9.0}) EXPECT_NEAR(b.phi_plus(l), std::sqrt(l), 1e-5) << l;
  // truncation at x_max = 20 drops 42 e^-20
  EXPECT_NEAR(expected_local_time(mu, bm()), 2.0, 1e-6);
}

TEST(Embedding, JumpTwoPoint) {
  const auto mu = TargetMeasure::two_point(-1.0, 1.0, test_support::jd_two_point_p());
  const auto rep = check_admissible_thm1(mu, jds());
  EXPECT_TRUE(rep.ok);
  EXPECT_NEAR(rep.lhs, rep.rhs, 1e-6 * rep.rhs);
  const auto b = build_boundary_thm1(mu, jds());
  for (double l : {0.0, 0.2, 0.9, 3.0}) {
    EXPECT_NEAR(b.phi_plus(l), 1.0, 1e-12);
    EXPECT_NEAR(b.phi_minus(l), 1.0, 1e-12);
  }
  EXPECT_NEAR(expected_local_time(mu, jds()), test_support::jd_two_point_p() * oracle::jd_w(1.0), 1e-9);
}

TEST(Embedding, JumpUniformDensityRuleIsInadmissible) {
  EXPECT_THROW(build_boundary_thm2(TargetMeasure::uniform(-1.0, 1.0), jds()), InadmissibleError);
}

TEST(Embedding, InadmissibleTwoPoint) {
  const auto mu = TargetMeasure::two_point(-1.0, 2.0, 0.5);
  const auto rep = check_admissible_thm1(mu, bm());
  EXPECT_FALSE(rep.ok);
  EXPECT_NEAR(rep.lhs, 2.0, 1e-9);
  EXPECT_NEAR(rep.rhs, 1.0, 1e-9);
  EXPECT_THROW(build_boundary_thm1(mu, bm()), InadmissibleError);
}

TEST(Embedding, QuantileAndXSpaceRoutesAgree) {
  const auto mu = TargetMeasure::uniform(-1.0, 1.0);
  const auto fast = build_boundary_thm1(mu, bm());
  const auto slow = build_boundary_thm1_nonatomic(mu, bm());
  const double lmax = std::min(fast.l_max(), slow.l_max());
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double l = lmax * i / 400.0 * 0.99;
    worst = std::max(worst, std::abs(fast.phi_plus(l) - slow.phi_plus(l)));
    worst = std::max(worst, std::abs(fast.phi_minus(l) - slow.phi_minus(l)));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Embedding, DomainErrors) {
  EXPECT_THROW(build_boundary_thm3(TargetMeasure::uniform(-1.0, 1.0), bm()), DomainError);
  EXPECT_THROW(build_boundary_thm2(TargetMeasure::two_point(-1.0, 1.0, 0.5), bm()), DomainError);
  EXPECT_THROW(build_boundary_thm1(TargetMeasure::exponential(1.0), bm()), DomainError);
}

TEST(Embedding, InverseLocalTimeMean) {
  EXPECT_NEAR(expected_inverse_local_time(LevyModel::brownian(1.0, 1.0)), 1.0, 1e-12);
  EXPECT_NEAR(expected_inverse_local_time(LevyModel::brownian(1.0, 2.0)), 0.25, 1e-12);
  EXPECT_THROW(expected_inverse_local_time(LevyModel::brownian()), UnsupportedError);
}

TEST(Embedding, Integrability) {
  EXPECT_FALSE(check_integrability_thm1(TargetMeasure::uniform(-1.0, 1.0), bm()).applicable);
  const auto s = build_scale(LevyModel::brownian(1.0, 1.0), 20.0, 0.0025);
  const auto r = check_integrability_thm1(TargetMeasure::uniform(-1.0, 1.0), s);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.finite);
  const auto w = [](double y) { return oracle::bm_w(y, 1.0, 1.0); };
  EXPECT_NEAR(r.positive_part, oracle::simpson([&](double y) { return 0.5 * y * w(y); }, 0.0, 1.0), 1e-7);
  EXPECT_NEAR(r.negative_part,
              oracle::simpson([&](double y) { return 0.5 * y * w(y) / (2.0 * std::exp(-2.0 * y)); }, 0.0, 1.0),
              1e-7);
}

TEST(Embedding, Shift) {
  const auto r = shift_embedding(MeasureSpec{{{1.0, 1.0}}, {}}, LevyModel::brownian(1.0, 1.0));
  EXPECT_NEAR(r.offset, 1.0, 1e-12);
  EXPECT_NEAR(r.shifted.atoms[0].first, 0.0, 1e-12);
  EXPECT_THROW(shift_embedding(MeasureSpec{{{1.0, 1.0}}, {}}, LevyModel::brownian()), UnsupportedError);
  // m rounds to 1
  EXPECT_THROW(shift_embedding(MeasureSpec{{{1e3, 1.0}}, {}}, LevyModel::brownian(1.0, 1.0)), DomainError);
}
