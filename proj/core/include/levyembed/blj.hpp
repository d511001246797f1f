#pragma once

#include <vector>

#include "levyembed/measure.hpp"
#include "levyembed/scale_function.hpp"

namespace levyembed {

/// v(x, y) = E_x[local time at y before H_0] and its mu-averages.
class BljQuantities {
 public:
  BljQuantities(const TargetMeasure& mu, const ScaleFunction& scale, int grid_points = 401);

  /// W(x) + W(-y) - W(x-y) - W(x) W(-y) psi'(0+)
  double v(double x, double y) const;
  /// q-discounted version; q must be in the scale's q cache.
  double v_q(double q, double x, double y) const;
  /// int v(x, y) mu(dx)
  double V(double y) const;

  const std::vector<double>& y_grid() const noexcept { return ys_; }
  const std::vector<double>& V_table() const noexcept { return vs_; }
  /// sup_y V(y), including the limit int_0^inf W dmu as y -> inf.
  double lambda() const noexcept { return lambda_; }
  double blj_ratio(double x) const;

 private:
  double w(double x) const;

  const TargetMeasure* mu_;
  const ScaleFunction* scale_;
  double psi1_;
  double x_lo_;
  double x_hi_;
  std::vector<double> ys_;
  std::vector<double> vs_;
  double lambda_ = 0.0;
};

}  // namespace levyembed
