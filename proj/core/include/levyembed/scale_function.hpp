#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "levyembed/levy_model.hpp"

namespace levyembed {

struct ScaleGrid {
  double x_max;
  double h;
};

/// x_max = max(4(|a|+b), 20), h = x_max / 8000.
ScaleGrid default_scale_grid(double a_mu, double b_mu);

enum class ScaleMode { ClosedForm, NumericSeries };
enum class ClosedFormKind { None, Brownian, BrownianDrift, ExponentialJumpDiffusion };
enum class ScaleRoute { Auto, ForceNumeric };

/// W(x) = linear * x + sum_k coeff_k * exp(rate_k * x) on x >= 0.
struct ExponentialSum {
  double linear = 0.0;
  std::vector<double> coeff;
  std::vector<double> rate;

  double value(double x) const;
  double derivative(double x) const;
};

/// Closed-form q = 0 scale function for the families that have one.
std::optional<ExponentialSum> closed_form_scale(const LevyModel& model);

struct WinfBound {
  double lhs;
  double mid;
  double rhs;
};

/// Grid-backed scale functions of a spectrally negative Levy process.
///
/// W is tabulated on x_i = i*h, i = 0..n, from its closed form when the model
/// has one and by fixed-Talbot Laplace inversion otherwise. W^(q) for every q
/// passed at build time comes from the convolution series
/// W^(q) = sum_k q^k W^{*(k+1)}. Immutable after build.
class ScaleFunction {
 public:
  static ScaleFunction build(const LevyModel& model, ScaleGrid grid,
                             std::vector<double> q_values = {},
                             ScaleRoute route = ScaleRoute::Auto);

  const LevyModel& model() const noexcept { return model_; }
  ScaleMode mode() const noexcept { return mode_; }
  ClosedFormKind closed_form_kind() const noexcept { return kind_; }
  double x_max() const noexcept { return x_max_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return w_.size(); }
  std::span<const double> w_table() const noexcept { return w_; }
  std::span<const double> w_prime_table() const noexcept { return wp_; }
  bool has_q(double q) const;
  int series_terms(double q) const;

  double w(double x) const;
  double w_q(double q, double x) const;
  /// Right derivative; W'(0+) = 2/sigma^2 when sigma > 0.
  double w_prime(double x) const;
  double w_prime_at_zero() const noexcept { return wp_.front(); }
  double w_bar(double x) const;
  double conv_ww(double x) const;
  double conv_wwprime(double x) const;

  /// P_x[exit [a,b] through b]
  double exit_up_prob(double x, double a, double b) const;
  /// P_x[exit [a,b] by creeping onto a]
  double exit_creep_prob(double x, double a, double b) const;
  /// E_x[first exit time of [a,b]]
  double expected_exit_time(double x, double a, double b) const;
  /// Density of the q-potential measure; q must be in the build-time cache.
  double potential_density_uq(double q, double x) const;
  WinfBound winf_bound_check(double a, double x) const;

  /// int_0^inf e^{-theta x} W^(q)(x) dx from the table with a tail correction.
  double laplace_transform(double q, double theta) const;

 private:
  ScaleFunction(LevyModel model) : model_(std::move(model)) {}
  void check_domain(double x) const;
  std::span<const double> q_table(double q) const;

  LevyModel model_;
  ScaleMode mode_ = ScaleMode::NumericSeries;
  ClosedFormKind kind_ = ClosedFormKind::None;
  double x_max_ = 0.0;
  double h_ = 0.0;
  std::vector<double> w_;
  std::vector<double> wp_;
  std::vector<double> wbar_;
  std::vector<double> ww_;
  std::vector<double> wwp_;
  std::map<double, std::vector<double>> q_cache_;
  std::map<double, int> q_terms_;
};

/// Convenience wrapper: one q value (q = 0 builds only W).
ScaleFunction build_scale(const LevyModel& model, double x_max, double h, double q = 0.0);

}  // namespace levyembed
