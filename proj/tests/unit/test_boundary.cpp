#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "levyembed/boundary.hpp"
#include "levyembed/errors.hpp"

using namespace levyembed;

namespace {
// phi(l) = sqrt(l) tabulated in p = phi
Boundary sqrt_boundary() {
  std::vector<BoundaryRow> rows;
  for (int i = 0; i <= 200; ++i) {
    const double p = 0.02 * i;
    rows.push_back({.p = p, .l = p * p, .dl = 2 * p, .up = p, .dup = 1.0, .down = p, .ddown = 1.0,
                    .survival = std::exp(-p)});
  }
  return Boundary(BoundaryVariant::Thm2, rows);
}
}  // namespace

TEST(Boundary, HermiteEvaluation) {
  const auto b = sqrt_boundary();
  for (double l : {0.0, 0.01, 0.5, 2.0, 9.0, 15.9}) {
    EXPECT_NEAR(b.phi_plus(l), std::sqrt(l), 1e-6) << l;
    EXPECT_NEAR(b.phi_minus(l), std::sqrt(l), 1e-6);
  }
  EXPECT_EQ(b.l_max(), 16.0);
  EXPECT_NEAR(b.phi_plus(100.0), 4.0, 1e-12);
}

TEST(Boundary, Inverses) {
  const auto b = sqrt_boundary();
  for (double x : {0.1, 1.3, 3.7}) {
    EXPECT_NEAR(b.psi_plus(x), x * x, 1e-6);
    EXPECT_NEAR(b.psi_minus(x), x * x, 1e-6);
  }
}

TEST(Boundary, CursorMatchesRandomAccess) {
  const auto b = sqrt_boundary();
  BoundaryCursor c(b);
  for (double l = 0.0; l < 16.0; l += 0.0371) {
    const auto v = c.at(l);
    EXPECT_DOUBLE_EQ(v.up, b.at(l).up);
  }
  c.reset();
  EXPECT_NEAR(c.at(4.0).up, 2.0, 1e-6);
  EXPECT_NEAR(c.at(1.0).up, 1.0, 1e-6);
}

TEST(Boundary, ConstantAndJumps) {
  const auto k = Boundary::constant(1.5, std::numeric_limits<double>::infinity());
  EXPECT_EQ(k.variant(), BoundaryVariant::Constant);
  EXPECT_EQ(k.phi_plus(3.0), 1.5);
  EXPECT_TRUE(std::isinf(k.phi_minus(0.2)));

  std::vector<BoundaryRow> rows = {{.p = 0, .l = 0, .dl = 1, .up = 1, .dup = 0, .down = 1, .ddown = 0},
                                   {.p = 1, .l = 1, .dl = 1, .up = 1, .dup = 0, .down = 1, .ddown = 0},
                                   {.p = 1, .l = 1, .dl = 1, .up = 2, .dup = 0, .down = 3, .ddown = 0},
                                   {.p = 2, .l = 2, .dl = 1, .up = 2, .dup = 0, .down = 3, .ddown = 0}};
  const Boundary j(BoundaryVariant::Thm1, rows);
  EXPECT_EQ(j.phi_plus(0.999), 1.0);
  EXPECT_EQ(j.phi_plus(1.0), 2.0);
  EXPECT_EQ(j.phi_minus(1.5), 3.0);
}

TEST(Boundary, RejectsUnsortedRows) {
  std::vector<BoundaryRow> rows = {{.p = 0, .l = 1}, {.p = 1, .l = 0.5}};
  EXPECT_THROW(Boundary(BoundaryVariant::Thm2, rows), NumericError);
}

TEST(Boundary, SurvivalFromRate) {
  const auto b = sqrt_boundary();
  // rate 1/(2 phi) integrated in l = phi^2 gives exp(-phi)
  const auto s = b.survival_from_rate([](double up, double) { return 1.0 / (2.0 * up); });
  for (std::size_t i = 1; i < s.size(); i += 37) EXPECT_NEAR(s[i], std::exp(-b.rows()[i].p), 1e-6);
}

TEST(Boundary, VariantNames) {
  EXPECT_STREQ(to_string(BoundaryVariant::Thm3), "thm3");
}
