#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace levyembed {

/// Fixed-Talbot numerical inversion of a Laplace transform at t > 0.
///
/// `transform` must be analytic to the right of the contour, i.e. all
/// singularities of F have non-positive real part.
template <class Transform>
double talbot_invert(const Transform& transform, double t, int nodes = 32) {
  using cd = std::complex<double>;
  const double r = 2.0 * nodes / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * std::real(transform(cd(r, 0.0)));
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * std::numbers::pi / nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const cd s = r * theta * cd(cot, 1.0);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    sum += std::real(std::exp(t * s) * transform(s) * cd(1.0, sigma));
  }
  return r / nodes * sum;
}

}  // namespace levyembed
