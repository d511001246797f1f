#pragma once

#include <string>
#include <utility>
#include <vector>

#include "levyembed/boundary.hpp"
#include "levyembed/excursion.hpp"
#include "levyembed/measure.hpp"
#include "levyembed/scale_function.hpp"

namespace levyembed {

namespace detail {

/// Cumulative integral of weight * density tabulated outward from an origin,
/// evaluated by cubic Hermite with the integrand as slope.
struct CumulativeTable {
  std::vector<double> s;  ///< distance from origin, increasing
  std::vector<double> v;
  std::vector<double> d;
  double origin = 0.0;
  bool downward = false;

  double operator()(double x) const;
  double total() const { return v.empty() ? 0.0 : v.back(); }
};

}  // namespace detail

struct AdmissibilityReport {
  bool ok = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Non-empty when a remedy is known (shift for Brownian motion with drift).
  std::string remedy;
};

/// int_0^inf W dmu = W'(0) int_{-inf}^0 W(-s)/W'(-s) mu(ds), relative 1e-6.
AdmissibilityReport check_admissible_thm1(const TargetMeasure& mu, const ScaleFunction& scale);

/// Quantile-parametrised construction shared by the two-sided rule with
/// sign condition and the one-sided rule.
///
/// On [a_*, 1] the map alpha pairs the upper quantile a with the lower one
/// alpha(a) so that the W-weighted masses above and below balance. The local
/// time scale xi satisfies xi(alpha(a)) = -xi(a), so a single table in a
/// carries phi_+(xi(a)) = F^{-1}(a) and phi_-(xi(a)) = -F^{-1}(alpha(a)).
class QuantileConstruction {
 public:
  static QuantileConstruction thm1(const TargetMeasure& mu, const ScaleFunction& scale);
  static QuantileConstruction thm3(const TargetMeasure& mu, const ScaleFunction& scale);

  double a_star() const noexcept { return a_star_; }
  /// int_{a_*}^a W(F^{-1}(s)) ds
  double upper_integral(double a) const;
  /// int_c^{a_*} kappa(-F^{-1}(s)) ds with kappa = W'(0) W / W', rescaled so
  /// that the total matches upper_integral(1).
  double lower_integral(double c) const;
  double alpha(double a) const;
  double alpha_inverse(double c) const;
  /// Relative mismatch of the two totals before rescaling.
  double balance_mismatch() const noexcept { return mismatch_; }

  const Boundary& boundary() const noexcept { return boundary_; }

 private:
  QuantileConstruction(const TargetMeasure& mu, const ScaleFunction& scale, bool two_sided);
  void build_rows();
  double w_clip(double x) const;
  double kappa(double z) const;
  /// int over (0, x) of W dmu
  double d_open(double x) const;
  /// int over (x, 0) of kappa(-s) mu(ds)
  double g_open(double x) const;
  double lower_raw(double c) const;

  const TargetMeasure* mu_;
  const ScaleFunction* scale_;
  bool two_sided_;
  double a_star_ = 0.0;
  double x_hi_ = 0.0;
  double x_lo_ = 0.0;
  double lower_scale_ = 1.0;
  double mismatch_ = 0.0;
  detail::CumulativeTable d_tab_;
  detail::CumulativeTable g_tab_;
  Boundary boundary_;
};

/// Two-sided embedding with the negative-excursion condition; sigma > 0.
Boundary build_boundary_thm1(const TargetMeasure& mu, const ScaleFunction& scale);

/// Same boundary for non-atomic targets through D, G and g = G^{-1} o D in
/// x-space, computed independently of the quantile construction.
Boundary build_boundary_thm1_nonatomic(const TargetMeasure& mu, const ScaleFunction& scale);

/// Two-sided embedding for targets with a positive density; any sigma >= 0.
Boundary build_boundary_thm2(const TargetMeasure& mu, const ScaleFunction& scale);

/// One-sided embedding for targets on (0, inf).
Boundary build_boundary_thm3(const TargetMeasure& mu, const ScaleFunction& scale);

/// (l, P(L_T > l)) at every boundary row from the excursion rates.
std::vector<std::pair<double, double>> law_of_LT(const Boundary& b, const ExcursionLaw& n);

/// E[L_T] = int_0^inf W dmu
double expected_local_time(const TargetMeasure& mu, const ScaleFunction& scale);

struct IntegrabilityReport {
  bool applicable = false;
  bool finite = false;
  double positive_part = 0.0;
  double negative_part = 0.0;
  std::string reason;
};

/// int_0^inf y W(y) mu(dy) and -int_{-inf}^0 y W(-y)/W'(-y) mu(dy).
IntegrabilityReport check_integrability_thm1(const TargetMeasure& mu, const ScaleFunction& scale);

struct ShiftResult {
  double offset = 0.0;
  MeasureSpec shifted;
};

/// Shift a target for Brownian motion with drift so that it becomes admissible.
ShiftResult shift_embedding(const MeasureSpec& mu, const LevyModel& model);

/// E[tau_{L(inf)-}] = psi''(0+) / psi'(0+)^2 for models drifting to +inf.
double expected_inverse_local_time(const LevyModel& model);

}  // namespace levyembed
