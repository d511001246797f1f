#pragma once

#include <utility>

#include "levyembed/scale_function.hpp"

namespace levyembed {

/// Functionals of the excursion measure n of X away from 0.
///
/// Every quantity is read off one ScaleFunction, so all of them share a grid
/// and an interpolation rule. The referenced ScaleFunction must outlive this.
class ExcursionLaw {
 public:
  explicit ExcursionLaw(const ScaleFunction& scale);

  const ScaleFunction& scale() const noexcept { return *scale_; }
  Regime regime() const noexcept { return regime_; }
  double psi1() const noexcept { return psi1_; }

  /// n(sup >= eta) = 1/W(eta)
  double n_sup_ge(double eta) const;
  /// n(inf <= -delta) = 1/W(delta) - psi'(0+)
  double n_inf_le(double delta) const;
  /// n(sup < eta, inf <= -delta)
  double n_joint(double eta, double delta) const;
  /// n(1 - 1{sup < eta, inf > -delta} e^{-q zeta})
  double n_qjoint(double q, double eta, double delta) const;
  /// (n(M > a), n(M < -a)) for the signed maximum M; needs sigma > 0.
  std::pair<double, double> n_signed_max(double a) const;
  /// n(e^{-q H_eta}; sup >= eta)
  double n_hit_up_q(double q, double eta) const;
  /// n(e^{-q H_{-delta}}; sup < eta, inf <= -delta)
  double n_hit_down_q(double q, double eta, double delta) const;
  /// n(H_eta; sup >= eta)
  double n_exp_hit_up(double eta) const;
  /// n(H_{-delta}; sup < eta, inf <= -delta); drifting models only.
  double n_exp_hit_down(double eta, double delta) const;
  /// n(H_{-delta}; sup = 0, inf <= -delta); sigma > 0, drifting models only.
  double n_exp_hit_down_neg(double delta) const;

  /// Phi'(0) = 1/psi'(0+). Infinite for oscillating models, which throws.
  double phi_prime_zero() const;

 private:
  const ScaleFunction* scale_;
  Regime regime_;
  double psi1_;
};

}  // namespace levyembed
