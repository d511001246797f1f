#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace levyembed::interp {

/// Cubic Hermite value on [0, 1] given endpoint values and derivatives
/// already scaled by the cell width.
inline double hermite(double f0, double f1, double m0, double m1, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * f1 +
         (t3 - t2) * m1;
}

/// Derivative in t of `hermite`.
inline double hermite_slope(double f0, double f1, double m0, double m1, double t) {
  const double t2 = t * t;
  return (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * f1 +
         (3 * t2 - 2 * t) * m1;
}

/// Exact integral over the cell of the Hermite cubic, cell width h.
inline double hermite_integral(double f0, double f1, double d0, double d1, double h) {
  return 0.5 * h * (f0 + f1) + h * h / 12.0 * (d0 - d1);
}

/// Hermite interpolation on the uniform grid x_i = i*h.
inline double hermite_uniform(std::span<const double> f, std::span<const double> df, double h,
                              double x) {
  const std::size_t n = f.size() - 1;
  const double s = x / h;
  std::size_t i = static_cast<std::size_t>(std::floor(s));
  if (i >= n) i = n - 1;
  const double t = s - static_cast<double>(i);
  return hermite(f[i], f[i + 1], h * df[i], h * df[i + 1], t);
}

/// Four-point Lagrange interpolation on the uniform grid x_i = i*h; exact for
/// cubics. Falls back to the nearest in-range stencil at the ends.
inline double lagrange4_uniform(std::span<const double> f, double h, double x) {
  const std::size_t n = f.size() - 1;
  if (n < 3) {
    const double s = std::clamp(x / h, 0.0, static_cast<double>(n));
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), n - 1);
    const double t = s - static_cast<double>(i);
    return f[i] * (1 - t) + f[i + 1] * t;
  }
  const double s = x / h;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 3);
  const double t = s - static_cast<double>(i);
  const double f0 = f[i], f1 = f[i + 1], f2 = f[i + 2], f3 = f[i + 3];
  const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double l1 = t * (t - 2) * (t - 3) / 2.0;
  const double l2 = -t * (t - 1) * (t - 3) / 2.0;
  const double l3 = t * (t - 1) * (t - 2) / 6.0;
  return l0 * f0 + l1 * f1 + l2 * f2 + l3 * f3;
}

}  // namespace levyembed::interp
