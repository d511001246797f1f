#include <gtest/gtest.h>

#include <cmath>

#include "levyembed/errors.hpp"
#include "levyembed/excursion.hpp"
#include "oracles.hpp"

using namespace levyembed;

namespace {
const ScaleFunction& jd_scale() {
  static const ScaleFunction s = ScaleFunction::build(
      LevyModel(1.0, 1.0, 1.0, JumpLaw::exponential(1.0)), {10.0, 0.0025}, {0.1});
  return s;
}
const ScaleFunction& bm_scale() {
  static const ScaleFunction s = ScaleFunction::build(LevyModel::brownian(), {10.0, 0.0025}, {0.5});
  return s;
}
const ScaleFunction& drift_scale() {
  static const ScaleFunction s =
      ScaleFunction::build(LevyModel::brownian(1.0, 1.0), {10.0, 0.0025}, {1e-3, 2e-3});
  return s;
}
}  // namespace

TEST(Excursion, SupremumAndInfimumMasses) {
  const ExcursionLaw b(bm_scale()), j(jd_scale()), d(drift_scale());
  EXPECT_NEAR(b.n_sup_ge(1.0), 0.5, 1e-12);
  EXPECT_NEAR(j.n_sup_ge(1.0), 1.0 / oracle::jd_w(1.0), 1e-10);
  EXPECT_NEAR(j.n_sup_ge(1.0), 0.918287, 1e-6);
  EXPECT_NEAR(b.n_inf_le(2.0), 0.25, 1e-12);
  EXPECT_NEAR(d.n_inf_le(1.0), 1.0 / (1.0 - std::exp(-2.0)) - 1.0, 1e-10);
  EXPECT_NEAR(d.n_sup_ge(9.5), 1.0, 1e-6);
  EXPECT_THROW(b.n_sup_ge(0.0), DomainError);
}

TEST(Excursion, JointMasses) {
  const ExcursionLaw b(bm_scale()), j(jd_scale());
  EXPECT_NEAR(b.n_joint(1.0, 1.0), 0.5, 1e-12);
  const double w1 = oracle::jd_w(1.0), w2 = oracle::jd_w(2.0);
  EXPECT_NEAR(j.n_joint(1.0, 1.0), (w2 / w1 - 1.0) / w1, 1e-10);
  EXPECT_NEAR(j.n_qjoint(0.0, 1.0, 1.0), w2 / (w1 * w1), 1e-10);
}

TEST(Excursion, TotalMassDecomposition) {
  for (const ScaleFunction* s : {&bm_scale(), &jd_scale(), &drift_scale()}) {
    const ExcursionLaw n(*s);
    for (double eta : {0.1, 0.5, 1.0, 3.0})
      for (double delta : {0.2, 1.0, 2.5})
        EXPECT_NEAR(n.n_qjoint(0.0, eta, delta), n.n_sup_ge(eta) + n.n_joint(eta, delta), 1e-8);
  }
}

TEST(Excursion, SignedMaximum) {
  const ExcursionLaw b(bm_scale()), j(jd_scale());
  auto [up, down] = b.n_signed_max(1.0);
  EXPECT_NEAR(up, 0.5, 1e-12);
  EXPECT_NEAR(down, 0.5, 1e-10);
  std::tie(up, down) = j.n_signed_max(1.0);
  EXPECT_NEAR(up, 0.918287, 1e-6);
  EXPECT_NEAR(down, oracle::jd_wp(1.0) / (oracle::jd_w(1.0) * 2.0), 1e-9);
  EXPECT_NEAR(down, 0.336575, 1e-6);
  // negative excursions are the eta -> 0 limit of the joint mass
  for (const ExcursionLaw* n : {&b, &j}) {
    const double lim = n->n_joint(1e-4, 1.0);
    EXPECT_NEAR(lim / n->n_signed_max(1.0).second, 1.0, 1e-3);
  }
  const LevyModel bv(0.0, 2.0, 1.0, JumpLaw::exponential(1.0));
  const auto sbv = build_scale(bv, 5.0, 0.01);
  EXPECT_THROW(ExcursionLaw(sbv).n_signed_max(1.0), UnsupportedError);
}

TEST(Excursion, DiscountedMassesReduceAtZero) {
  const ExcursionLaw b(bm_scale()), j(jd_scale());
  EXPECT_NEAR(b.n_hit_up_q(0.5, 1.0), 1.0 / (2.0 * std::sinh(1.0)), 1e-10);
  EXPECT_NEAR(b.n_hit_up_q(0.0, 1.0), b.n_sup_ge(1.0), 1e-14);
  EXPECT_NEAR(j.n_hit_down_q(0.0, 0.7, 1.3), j.n_joint(0.7, 1.3), 1e-12);
  EXPECT_NEAR(j.n_qjoint(0.0, 0.7, 1.3), j.n_qjoint(0.0, 1.3, 0.7), 1e-12);
  EXPECT_LT(j.n_qjoint(0.1, 0.5, 0.5), j.n_qjoint(0.0, 0.5, 0.5) + 1.0);
  EXPECT_GT(j.n_qjoint(0.1, 0.5, 0.5), j.n_qjoint(0.0, 0.5, 0.5));
}

TEST(Excursion, ExpectedHittingTimes) {
  const ExcursionLaw b(bm_scale()), j(jd_scale());
  EXPECT_NEAR(b.n_exp_hit_up(1.0), (2.0 / 3.0) / 4.0, 1e-9);
  const double conv = oracle::simpson([](double y) { return oracle::jd_w(y) * oracle::jd_w(1.0 - y); }, 0.0, 1.0);
  EXPECT_NEAR(j.n_exp_hit_up(1.0), conv / std::pow(oracle::jd_w(1.0), 2), 1e-8);
  EXPECT_LT(b.n_exp_hit_up(1e-3), 1e-3);
}

TEST(Excursion, ExpectedDownHitIsMinusQDerivative) {
  const ExcursionLaw d(drift_scale());
  const double eta = 0.8, delta = 1.2, h = 1e-3;
  const double f0 = d.n_hit_down_q(0.0, eta, delta);
  const double f1 = d.n_hit_down_q(h, eta, delta);
  const double f2 = d.n_hit_down_q(2 * h, eta, delta);
  const double slope = (4.0 * (f1 - f0) - (f2 - f0)) / (2.0 * h);
  EXPECT_NEAR(d.n_exp_hit_down(eta, delta), -slope, 1e-4 * std::abs(slope));
  EXPECT_GT(d.n_exp_hit_down(eta, delta), 0.0);
  EXPECT_GT(d.n_exp_hit_down_neg(1.0), 0.0);
  EXPECT_TRUE(std::isfinite(d.n_exp_hit_down_neg(1.0)));
}

TEST(Excursion, OscillatingPhiPrimeUnsupported) {
  const ExcursionLaw b(bm_scale()), d(drift_scale());
  EXPECT_THROW(b.phi_prime_zero(), UnsupportedError);
  EXPECT_THROW(b.n_exp_hit_down(1.0, 1.0), UnsupportedError);
  EXPECT_THROW(b.n_exp_hit_down_neg(1.0), UnsupportedError);
  EXPECT_NEAR(d.phi_prime_zero(), 1.0, 1e-15);
}

TEST(Excursion, MassesDecreaseInLevel) {
  const ExcursionLaw j(jd_scale());
  double prev = j.n_sup_ge(0.01);
  for (double eta = 0.02; eta < 9.0; eta += 0.05) {
    const double v = j.n_sup_ge(eta);
    EXPECT_LT(v, prev);
    EXPECT_GE(j.n_inf_le(eta), 0.0);
    prev = v;
  }
}
