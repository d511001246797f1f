#include "levyembed/excursion.hpp"

#include <cmath>
#include <string>

#include "levyembed/errors.hpp"

namespace levyembed {

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(name) + " must be a positive finite number");
}
}  // namespace

ExcursionLaw::ExcursionLaw(const ScaleFunction& scale)
    : scale_(&scale),
      regime_(scale.model().regime()),
      psi1_(scale.model().psi_derivatives_at_zero().psi1) {}

double ExcursionLaw::phi_prime_zero() const {
  if (regime_ == Regime::Oscillates)
    throw UnsupportedError("Phi'(0) is infinite for an oscillating process");
  return 1.0 / psi1_;
}

double ExcursionLaw::n_sup_ge(double eta) const {
  require_positive(eta, "eta");
  return 1.0 / scale_->w(eta);
}

double ExcursionLaw::n_inf_le(double delta) const {
  require_positive(delta, "delta");
  return std::max(0.0, 1.0 / scale_->w(delta) - psi1_);
}

double ExcursionLaw::n_joint(double eta, double delta) const {
  require_positive(eta, "eta");
  require_positive(delta, "delta");
  const auto& s = *scale_;
  return std::max(0.0, (s.w(eta + delta) / s.w(delta) - 1.0) / s.w(eta));
}

double ExcursionLaw::n_qjoint(double q, double eta, double delta) const {
  require_positive(eta, "eta");
  require_positive(delta, "delta");
  const auto& s = *scale_;
  return s.w_q(q, eta + delta) / (s.w_q(q, eta) * s.w_q(q, delta));
}

std::pair<double, double> ExcursionLaw::n_signed_max(double a) const {
  if (!scale_->model().unbounded_variation())
    throw UnsupportedError("signed maximum needs a Gaussian component");
  require_positive(a, "a");
  const auto& s = *scale_;
  const double wa = s.w(a);
  return {1.0 / wa, s.w_prime(a) / (wa * s.w_prime_at_zero())};
}

double ExcursionLaw::n_hit_up_q(double q, double eta) const {
  require_positive(eta, "eta");
  return 1.0 / scale_->w_q(q, eta);
}

double ExcursionLaw::n_hit_down_q(double q, double eta, double delta) const {
  require_positive(eta, "eta");
  require_positive(delta, "delta");
  const auto& s = *scale_;
  const double phi = s.model().phi(q);
  return std::exp(phi * delta) / s.w_q(q, eta) *
         (s.w_q(q, delta + eta) / s.w_q(q, delta) - std::exp(phi * eta));
}

double ExcursionLaw::n_exp_hit_up(double eta) const {
  require_positive(eta, "eta");
  const double w = scale_->w(eta);
  return scale_->conv_ww(eta) / (w * w);
}

double ExcursionLaw::n_exp_hit_down(double eta, double delta) const {
  require_positive(eta, "eta");
  require_positive(delta, "delta");
  const double dphi = phi_prime_zero();
  const auto& s = *scale_;
  const double we = s.w(eta), wd = s.w(delta), wed = s.w(eta + delta);
  const double first = (s.conv_ww(eta) / (we * we) - delta * dphi / we) * (wed / wd - 1.0);
  const double second =
      (s.conv_ww(eta + delta) / wd - wed * s.conv_ww(delta) / (wd * wd) - dphi * eta) / we;
  return first - second;
}

double ExcursionLaw::n_exp_hit_down_neg(double delta) const {
  if (!scale_->model().unbounded_variation())
    throw UnsupportedError("negative excursions need a Gaussian component");
  require_positive(delta, "delta");
  const double dphi = phi_prime_zero();
  const auto& s = *scale_;
  const double wd = s.w(delta), wpd = s.w_prime(delta);
  return (dphi * (1.0 - delta * wpd / wd) + wpd * s.conv_ww(delta) / (wd * wd) -
          s.conv_wwprime(delta) / wd) /
         s.w_prime_at_zero();
}

}  // namespace levyembed
