#pragma once

#include <utility>
#include <vector>

#include "levyembed/measure.hpp"
#include "levyembed/montecarlo.hpp"

namespace levyembed {

/// sup_x |F_n(x) - F(x)| with left limits checked on both sides, so atoms in
/// either law are handled.
double ks_distance(std::vector<double> samples, const TargetMeasure& mu);

struct SurvivalCheck {
  double l;
  double analytic;
  double empirical;
};

struct AtomCheck {
  double x;
  double expected;
  double observed;
  double se;
};

struct Report {
  std::size_t n_paths = 0;
  std::size_t n_used = 0;
  std::size_t censored = 0;
  double censoring_rate = 0.0;
  std::uint64_t mixed_excursions = 0;

  double ks = 0.0;
  double mean = 0.0;
  double mean_se = 0.0;
  double mean_target = 0.0;
  double variance = 0.0;
  double variance_target = 0.0;

  double el = 0.0;
  double el_se = 0.0;
  double el_target = 0.0;
  /// Same mean for the occupation estimate.
  double el_occ = 0.0;
  double el_occ_se = 0.0;

  std::vector<SurvivalCheck> survival;
  double survival_max_dev = 0.0;
  std::vector<AtomCheck> atoms;
  /// Paths whose running maximum exceeded the stopping value (one-sided rule).
  std::size_t sup_violations = 0;
};

/// Compare simulated stops against the target. `law` is (l, P(L_T > l)) as
/// produced by law_of_LT; empty skips the survival check. Censored paths
/// are excluded from every statistic but counted.
Report validate(const SimResult& sim, const TargetMeasure& mu,
                const std::vector<std::pair<double, double>>& law, double el_target,
                bool one_sided = false);

/// Level where a decreasing survival table crosses p, linear in between.
double survival_quantile(const std::vector<std::pair<double, double>>& law, double p);

}  // namespace levyembed
