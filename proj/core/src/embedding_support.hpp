#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "levyembed/embedding.hpp"

namespace levyembed::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
/// Target mass beyond the scale grid that is tolerated and ignored.
inline constexpr double kTailTruncation = 1e-8;
/// Tail mass below which a density is cut off.
inline constexpr double kTailNegligible = 1e-14;
/// Boundary tables stop once P(L_T > l) falls below this.
inline constexpr double kSurvivalFloor = 1e-6;

/// Upper end of the region the construction works on, within the scale grid.
double positive_cut(const TargetMeasure& mu, const ScaleFunction& scale);
double negative_cut(const TargetMeasure& mu, const ScaleFunction& scale);

/// a_* and then 1 - a log-spaced from 1 - a_* down to depth * (1 - a_*).
std::vector<double> a_grid(double a_star, int n, double depth);

/// int of weight * pdf from the origin (0 side) to x over [lo, hi]; upward
/// from lo when `downward` is false, downward from hi otherwise.
CumulativeTable tabulate_density_integral(const TargetMeasure& mu,
                                          const std::function<double(double)>& weight,
                                          double lo, double hi, bool downward, int cells);

}  // namespace levyembed::detail
