#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace levyembed {

enum class DensityKind { Uniform, Exponential, Table };

/// One absolutely continuous piece of a target law, plain data.
///
/// Uniform: on (a, b). Exponential: rate * exp(-rate |x - loc|) on the side of
/// loc given by `positive_side`. Table: piecewise linear through (xs, fs),
/// rescaled to `mass`.
struct DensitySpec {
  DensityKind kind = DensityKind::Uniform;
  double a = 0.0;
  double b = 0.0;
  double rate = 1.0;
  double loc = 0.0;
  bool positive_side = true;
  std::vector<double> xs;
  std::vector<double> fs;
  /// Mass carried by this piece; unset means 1 - sum of atom masses.
  std::optional<double> mass;
};

struct MeasureSpec {
  std::vector<std::pair<double, double>> atoms;
  std::optional<DensitySpec> density;
};

/// Validated probability measure on the real line with atoms and at most one
/// density piece. Immutable.
class TargetMeasure {
 public:
  explicit TargetMeasure(const MeasureSpec& spec);

  static TargetMeasure two_point(double a, double b, double p_b);
  static TargetMeasure uniform(double a, double b);
  static TargetMeasure exponential(double rate);

  const MeasureSpec& spec() const noexcept { return spec_; }
  /// Atoms sorted by location.
  const std::vector<std::pair<double, double>>& atoms() const noexcept { return atoms_; }
  bool has_density() const noexcept { return density_mass_ > 0.0; }
  bool has_atoms() const noexcept { return !atoms_.empty(); }
  double density_mass() const noexcept { return density_mass_; }
  /// Closure of the density support, possibly infinite.
  std::pair<double, double> density_support() const noexcept { return {dlo_, dhi_}; }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  /// F(0)
  double a_star() const noexcept { return cdf(0.0); }

  double pdf(double x) const;
  /// mu((-inf, x])
  double cdf(double x) const;
  /// mu((-inf, x))
  double cdf_left(double x) const;
  /// mu([s, inf)), computed from the upper side for accuracy in the tail.
  double tail(double s) const;
  /// mu((s, inf))
  double tail_right(double s) const;

  /// inf{x : F(x) > u}
  double quantile(double u) const;
  /// inf{x : F(x) >= u}
  double quantile_left(double u) const;

  /// Integral of f against mu restricted to [lo, hi].
  double integrate(const std::function<double(double)>& f, double lo, double hi) const;
  double integrate(const std::function<double(double)>& f) const;
  double mean() const;

  /// Points where the density is not smooth, inside its support.
  std::vector<double> density_kinks() const;
  /// Every breakpoint of F: atom locations and finite density support ends.
  std::vector<double> breakpoints() const;

  /// Draw from mu given a uniform in [0,1).
  double sample(double u) const { return quantile(u); }

 private:
  double dens_cdf(double x) const;
  double dens_tail(double x) const;
  double dens_inverse(double t) const;
  double integrate_density(const std::function<double(double)>& f, double lo, double hi) const;

  MeasureSpec spec_;
  std::vector<std::pair<double, double>> atoms_;
  std::optional<DensitySpec> dens_;
  double density_mass_ = 0.0;
  double dlo_ = 0.0;
  double dhi_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  // Table density: normalised values and cumulative mass per node.
  std::vector<double> tf_;
  std::vector<double> tcum_;
  // Segments between atoms: segment j ends at atom j (last one ends at +inf).
  std::vector<double> seg_start_cdf_;
};

}  // namespace levyembed
