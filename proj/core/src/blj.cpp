#include "levyembed/blj.hpp"

#include <algorithm>
#include <cmath>

#include "embedding_support.hpp"
#include "levyembed/errors.hpp"

namespace levyembed {

BljQuantities::BljQuantities(const TargetMeasure& mu, const ScaleFunction& scale,
                             int grid_points)
    : mu_(&mu),
      scale_(&scale),
      psi1_(scale.model().psi_derivatives_at_zero().psi1),
      x_lo_(detail::negative_cut(mu, scale)),
      x_hi_(detail::positive_cut(mu, scale)) {
  if (grid_points < 2) throw DomainError("BLJ grid needs at least 2 points");
  // Keep every W argument x - y inside the scale grid.
  const double width = x_hi_ - x_lo_;
  const double pad = std::clamp(scale.x_max() - width, 0.0, std::max(width, 1.0));
  const double y0 = x_lo_ - 0.5 * pad, y1 = x_hi_ + 0.5 * pad;
  for (int i = 0; i < grid_points; ++i) {
    const double y = y0 + (y1 - y0) * i / (grid_points - 1);
    ys_.push_back(y);
    vs_.push_back(V(y));
  }
  const double lambda_plus =
      mu.integrate([&](double x) { return x > 0.0 ? w(x) : 0.0; }, 0.0, x_hi_);
  lambda_ = std::max(lambda_plus, *std::max_element(vs_.begin(), vs_.end()));
}

double BljQuantities::w(double x) const {
  return x <= 0.0 ? (x == 0.0 ? scale_->w(0.0) : 0.0) : scale_->w(std::min(x, scale_->x_max()));
}

double BljQuantities::v(double x, double y) const {
  const double wx = x < 0.0 ? 0.0 : w(x);
  const double wmy = -y < 0.0 ? 0.0 : w(-y);
  const double wxy = x - y < 0.0 ? 0.0 : w(x - y);
  return wx + wmy - wxy - wx * wmy * psi1_;
}

double BljQuantities::v_q(double q, double x, double y) const {
  if (!(q > 0.0)) return v(x, y);
  const auto& s = *scale_;
  auto wq = [&](double z) { return z < 0.0 ? 0.0 : s.w_q(q, std::min(z, s.x_max())); };
  const double phi = s.model().phi(q);
  const double dphi = s.model().phi_prime(q);
  return wq(-y) * std::exp(phi * x) + wq(x) * std::exp(-phi * y) - wq(x - y) -
         wq(-y) * wq(x) / dphi;
}

double BljQuantities::V(double y) const {
  return mu_->integrate([&](double x) { return v(x, y); }, x_lo_, x_hi_);
}

double BljQuantities::blj_ratio(double x) const {
  const double gap = lambda_ - V(x);
  if (!(gap > 0.0)) return std::numeric_limits<double>::infinity();
  return lambda_ / gap;
}

}  // namespace levyembed
