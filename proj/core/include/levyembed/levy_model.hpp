#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace levyembed {

enum class JumpKind { Exponential, Point };

/// One component of a jump-size law on (0, inf). `scale` is the mean for an
/// exponential component and the atom location for a point component.
struct JumpComponent {
  double weight;
  JumpKind kind;
  double scale;
};

/// Law of the (positive) magnitude of the downward jumps: a finite mixture of
/// exponential and point-mass components.
class JumpLaw {
 public:
  static JumpLaw exponential(double mean);
  static JumpLaw point(double size);
  static JumpLaw mixture(std::vector<JumpComponent> components);

  const std::vector<JumpComponent>& components() const noexcept { return components_; }

  /// E[exp(-theta J)]
  double laplace(double theta) const;
  std::complex<double> laplace(std::complex<double> theta) const;
  /// E[J exp(-theta J)]
  double laplace_moment(double theta) const;
  double mean() const;
  double second_moment() const;
  /// E[J 1{J >= level}]
  double tail_first_moment(double level) const;

  /// Maps two independent uniforms on (0,1) to a jump size.
  double sample(double u_component, double u_size) const;

 private:
  explicit JumpLaw(std::vector<JumpComponent> components);
  std::vector<JumpComponent> components_;
};

enum class Regime { Oscillates, DriftsToPlusInfinity };

struct ZeroDerivatives {
  double psi1;  ///< psi'(0+)
  double psi2;  ///< psi''(0+), may be +inf
};

/// Spectrally negative Levy process: Brownian part with variance `sigma2`,
/// linear drift, and compound-Poisson downward jumps.
///
/// Immutable once built. Models drifting to -inf are rejected; models with
/// sigma2 == 0 are accepted for analytic work but report `simulable() == false`.
class LevyModel {
 public:
  LevyModel(double sigma2, double drift, double jump_rate = 0.0,
            std::optional<JumpLaw> jump_law = std::nullopt);

  static LevyModel brownian(double sigma2 = 1.0, double drift = 0.0) {
    return LevyModel(sigma2, drift);
  }

  double sigma2() const noexcept { return sigma2_; }
  double sigma() const noexcept;
  double drift() const noexcept { return drift_; }
  double jump_rate() const noexcept { return jump_rate_; }
  bool has_jumps() const noexcept { return jump_rate_ > 0.0 && jump_law_.has_value(); }
  const JumpLaw& jump_law() const;

  double psi(double theta) const;
  std::complex<double> psi(std::complex<double> theta) const;
  double psi_prime(double theta) const;

  /// Right inverse of psi: the largest root of psi(theta) = q.
  double phi(double q) const;
  /// Phi'(q) = 1 / psi'(Phi(q)); +inf at q = 0 for oscillating models.
  double phi_prime(double q) const;

  ZeroDerivatives psi_derivatives_at_zero() const;
  Regime regime() const noexcept { return regime_; }

  bool unbounded_variation() const noexcept { return sigma2_ > 0.0; }
  bool simulable() const noexcept { return sigma2_ > 0.0; }

  /// Integral of |z| over jumps of size at least `level` against the Levy measure.
  double levy_tail_first_moment(double level) const;

 private:
  double sigma2_;
  double drift_;
  double jump_rate_;
  std::optional<JumpLaw> jump_law_;
  double psi1_;
  Regime regime_;
};

}  // namespace levyembed
