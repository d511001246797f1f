#include <gtest/gtest.h>

#include <cmath>

#include "levyembed/errors.hpp"
#include "levyembed/scale_function.hpp"
#include "oracles.hpp"

using namespace levyembed;

namespace {
LevyModel jd() { return LevyModel(1.0, 1.0, 1.0, JumpLaw::exponential(1.0)); }

const ScaleFunction& jd_closed() {
  static const ScaleFunction s = build_scale(jd(), 10.0, 0.005);
  return s;
}
const ScaleFunction& jd_numeric() {
  static const ScaleFunction s =
      ScaleFunction::build(jd(), {10.0, 0.005}, {}, ScaleRoute::ForceNumeric);
  return s;
}
const ScaleFunction& bm() {
  static const ScaleFunction s = ScaleFunction::build(LevyModel::brownian(), {10.0, 0.005}, {0.5, 2.0});
  return s;
}
}  // namespace

TEST(ScaleFunction, ClosedFormGoldenValues) {
  EXPECT_EQ(jd_closed().mode(), ScaleMode::ClosedForm);
  EXPECT_EQ(jd_closed().closed_form_kind(), ClosedFormKind::ExponentialJumpDiffusion);
  EXPECT_NEAR(jd_closed().w(1.0), 2.0 / 3.0 + 4.0 / 9.0 * (1.0 - std::exp(-3.0)), 1e-12);
  EXPECT_NEAR(jd_closed().w(1.0), 1.088984, 1e-6);
  const auto b = build_scale(LevyModel::brownian(), 5.0, 0.01);
  EXPECT_NEAR(b.w(0.5), 1.0, 1e-14);
  const auto bd = build_scale(LevyModel::brownian(1.0, 1.0), 5.0, 0.01);
  EXPECT_NEAR(bd.w(1.0), 1.0 - std::exp(-2.0), 1e-13);
}

TEST(ScaleFunction, ClosedFormExponentSum) {
  const auto cf = closed_form_scale(jd());
  ASSERT_TRUE(cf.has_value());
  for (double x : {0.0, 0.3, 1.0, 4.0}) {
    EXPECT_NEAR(cf->value(x), oracle::jd_w(x), 1e-13);
    EXPECT_NEAR(cf->derivative(x), oracle::jd_wp(x), 1e-13);
  }
  const LevyModel pt(1.0, 1.0, 1.0, JumpLaw::point(1.0));
  EXPECT_FALSE(closed_form_scale(pt).has_value());
}

TEST(ScaleFunction, NumericRouteMatchesClosedForm) {
  EXPECT_EQ(jd_numeric().mode(), ScaleMode::NumericSeries);
  double err = 0.0, derr = 0.0;
  for (double x = 0.0; x <= 5.0; x += 0.0137) {
    err = std::max(err, std::abs(jd_numeric().w(x) - oracle::jd_w(x)));
    derr = std::max(derr, std::abs(jd_numeric().w_prime(x) - oracle::jd_wp(x)));
  }
  EXPECT_LT(err, 1e-6);
  EXPECT_LT(derr, 1e-6);
}

TEST(ScaleFunction, DerivativeAtZeroIsInjected) {
  EXPECT_EQ(jd_numeric().w_prime_at_zero(), 2.0);
  EXPECT_EQ(jd_closed().w_prime(0.0), 2.0);
  const auto b = build_scale(LevyModel::brownian(0.25, 0.0), 5.0, 0.01);
  EXPECT_EQ(b.w_prime_at_zero(), 8.0);
}

TEST(ScaleFunction, ZeroBelowOrigin) {
  EXPECT_EQ(jd_closed().w(-0.5), 0.0);
  EXPECT_EQ(jd_closed().w_bar(0.0), 0.0);
  EXPECT_THROW(jd_closed().w(11.0), DomainError);
}

TEST(ScaleFunction, LaplaceIdentity) {
  for (double th : {1.0, 2.0, 4.0}) {
    EXPECT_LT(std::abs(jd_numeric().laplace_transform(0.0, th) * oracle::jd_psi(th) - 1.0), 1e-4);
    EXPECT_LT(std::abs(jd_closed().laplace_transform(0.0, th) * oracle::jd_psi(th) - 1.0), 1e-4);
  }
  EXPECT_NEAR(bm().laplace_transform(0.0, std::sqrt(3.0)), 2.0 / 3.0, 1e-6);
}

TEST(ScaleFunction, IntegralsMatchQuadrature) {
  EXPECT_NEAR(bm().conv_ww(1.0), 2.0 / 3.0, 1e-8);
  EXPECT_NEAR(bm().conv_ww(3.0), 18.0, 1e-6);
  for (double x : {0.5, 1.0, 2.5}) {
    EXPECT_NEAR(jd_closed().w_bar(x), oracle::simpson(oracle::jd_w, 0.0, x), 1e-8);
    const double conv = oracle::simpson([x](double y) { return oracle::jd_w(y) * oracle::jd_w(x - y); }, 0.0, x);
    EXPECT_NEAR(jd_closed().conv_ww(x), conv, 1e-7);
    const double convp = oracle::simpson([x](double y) { return oracle::jd_w(y) * oracle::jd_wp(x - y); }, 0.0, x);
    EXPECT_NEAR(jd_closed().conv_wwprime(x), convp, 1e-7);
  }
}

TEST(ScaleFunction, QSeriesMatchesBrownianClosedForm) {
  for (double q : {0.5, 2.0}) {
    ASSERT_TRUE(bm().has_q(q));
    EXPECT_GT(bm().series_terms(q), 1);
    for (double x : {0.25, 1.0, 3.0}) EXPECT_NEAR(bm().w_q(q, x) / oracle::bm_wq(q, x), 1.0, 1e-9);
  }
  EXPECT_NEAR(1.0 / bm().w_q(0.5, 1.0), 1.0 / (2.0 * std::sinh(1.0)), 1e-10);
  EXPECT_FALSE(bm().has_q(0.7));
  EXPECT_THROW(bm().w_q(0.7, 1.0), DomainError);
}

TEST(ScaleFunction, QLaplaceIdentity) {
  // int e^{-theta x} W^(q) = 1/(psi(theta) - q)
  EXPECT_NEAR(bm().laplace_transform(0.5, 3.0), 1.0 / (4.5 - 0.5), 1e-6);
}

TEST(ScaleFunction, ExitProbabilities) {
  const auto b = build_scale(LevyModel::brownian(), 5.0, 0.01);
  EXPECT_NEAR(b.exit_up_prob(0.5, 0.0, 1.0), 0.5, 1e-12);
  EXPECT_NEAR(b.exit_creep_prob(0.5, 0.0, 1.0), 0.5, 1e-9);
  EXPECT_NEAR(b.expected_exit_time(0.5, 0.0, 1.0), 0.25, 1e-9);

  const auto& s = jd_closed();
  const double up = oracle::jd_w(1.0) / oracle::jd_w(2.0);
  EXPECT_NEAR(s.exit_up_prob(0.0, -1.0, 1.0), up, 1e-10);
  EXPECT_NEAR(up, 0.612933, 1e-6);
  const double creep = oracle::jd_wp(2.0) / 2.0 * (oracle::jd_wp(1.0) / oracle::jd_wp(2.0) - up);
  EXPECT_NEAR(s.exit_creep_prob(0.0, -1.0, 1.0), creep, 1e-8);
  const double wbar2 = oracle::simpson(oracle::jd_w, 0.0, 2.0), wbar1 = oracle::simpson(oracle::jd_w, 0.0, 1.0);
  EXPECT_NEAR(s.expected_exit_time(0.0, -1.0, 1.0), up * wbar2 - wbar1, 1e-8);
  EXPECT_NEAR(s.exit_up_prob(0.999999, -1.0, 1.0), 1.0, 1e-5);
  EXPECT_NEAR(s.exit_creep_prob(-0.999999, -1.0, 1.0), 1.0, 1e-5);
}

TEST(ScaleFunction, PotentialDensity) {
  // u^q(x) = Phi'(q) e^{-Phi(q) x} - W^(q)(-x); BM q = 1/2 gives e^{-|x|}
  EXPECT_NEAR(bm().potential_density_uq(0.5, 1.0), std::exp(-1.0), 1e-9);
  EXPECT_NEAR(bm().potential_density_uq(0.5, -1.0), std::exp(-1.0), 1e-8);
}

TEST(ScaleFunction, UndershootBoundOrdering) {
  const auto b = build_scale(LevyModel::brownian(), 5.0, 0.01);
  const auto r = b.winf_bound_check(2.0, 1.0);
  EXPECT_NEAR(r.mid, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 1.0, 1e-15);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);

  const auto j = jd_closed().winf_bound_check(3.0, 1.0);
  const double c = 1.0 + oracle::simpson(oracle::jd_w, 0.0, 3.0) * 2.0 * std::exp(-1.0);
  EXPECT_NEAR(j.lhs, 1.0 - c, 1e-8);
  EXPECT_LE(j.lhs, j.mid);
  EXPECT_LE(j.mid, j.rhs);
  EXPECT_THROW(build_scale(LevyModel::brownian(1.0, 1.0), 5.0, 0.01).winf_bound_check(1.0, 1.0),
               UnsupportedError);
}

TEST(ScaleFunction, GridValidation) {
  EXPECT_THROW(build_scale(jd(), -1.0, 0.01), DomainError);
  EXPECT_THROW(build_scale(jd(), 1.0, 0.5), DomainError);
  const auto g = default_scale_grid(-1.0, 1.0);
  EXPECT_EQ(g.x_max, 20.0);
  EXPECT_NEAR(g.h, 20.0 / 8000.0, 1e-15);
}
