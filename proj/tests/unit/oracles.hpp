#pragma once

// Reference formulas written independently of the library, used as test
// oracles.

#include <cmath>
#include <functional>

namespace oracle {

// Jump diffusion with sigma2 = 1, drift 1, unit-rate exp(1) jumps:
// 1/psi has partial fractions giving W(x) = 2x/3 + (4/9)(1 - exp(-3x)).
inline double jd_w(double x) { return x <= 0 ? 0.0 : 2.0 * x / 3.0 + 4.0 / 9.0 * (1.0 - std::exp(-3.0 * x)); }
inline double jd_wp(double x) { return 2.0 / 3.0 + 4.0 / 3.0 * std::exp(-3.0 * x); }
inline double jd_psi(double t) { return 0.5 * t * t + t - t / (1.0 + t); }

// Brownian motion with variance s2 and drift d.
inline double bm_w(double x, double s2 = 1.0, double d = 0.0) {
  if (x <= 0) return 0.0;
  if (d == 0.0) return 2.0 * x / s2;
  return (1.0 - std::exp(-2.0 * d * x / s2)) / d;
}
// W^(q) for standard BM: sqrt(2/q) sinh(x sqrt(2q)).
inline double bm_wq(double q, double x) { return std::sqrt(2.0 / q) * std::sinh(x * std::sqrt(2.0 * q)); }

// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
