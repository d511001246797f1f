#include "levyembed/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "levyembed/errors.hpp"

namespace levyembed {

JumpLaw::JumpLaw(std::vector<JumpComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("jump law needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0)) throw DomainError("jump law weights must be positive");
    if (!(c.scale > 0.0) || !std::isfinite(c.scale))
      throw DomainError("jump sizes must be positive and finite");
    total += c.weight;
  }
  for (auto& c : components_) c.weight /= total;
}

JumpLaw JumpLaw::exponential(double mean) { return JumpLaw({{1.0, JumpKind::Exponential, mean}}); }
JumpLaw JumpLaw::point(double size) { return JumpLaw({{1.0, JumpKind::Point, size}}); }
JumpLaw JumpLaw::mixture(std::vector<JumpComponent> components) {
  return JumpLaw(std::move(components));
}

double JumpLaw::laplace(double theta) const {
  double s = 0.0;
  for (const auto& c : components_) {
    s += c.weight * (c.kind == JumpKind::Exponential ? 1.0 / (1.0 + c.scale * theta)
                                                     : std::exp(-theta * c.scale));
  }
  return s;
}

std::complex<double> JumpLaw::laplace(std::complex<double> theta) const {
  std::complex<double> s = 0.0;
  for (const auto& c : components_) {
    s += c.weight * (c.kind == JumpKind::Exponential ? 1.0 / (1.0 + c.scale * theta)
                                                     : std::exp(-theta * c.scale));
  }
  return s;
}

double JumpLaw::laplace_moment(double theta) const {
  double s = 0.0;
  for (const auto& c : components_) {
    if (c.kind == JumpKind::Exponential) {
      const double d = 1.0 + c.scale * theta;
      s += c.weight * c.scale / (d * d);
    } else {
      s += c.weight * c.scale * std::exp(-theta * c.scale);
    }
  }
  return s;
}

double JumpLaw::mean() const { return laplace_moment(0.0); }

double JumpLaw::second_moment() const {
  double s = 0.0;
  for (const auto& c : components_)
    s += c.weight * (c.kind == JumpKind::Exponential ? 2.0 : 1.0) * c.scale * c.scale;
  return s;
}

double JumpLaw::tail_first_moment(double level) const {
  double s = 0.0;
  for (const auto& c : components_) {
    if (c.kind == JumpKind::Exponential) {
      // int_level^inf x e^{-x/m}/m dx
      s += c.weight * (level + c.scale) * std::exp(-level / c.scale);
    } else if (c.scale >= level) {
      s += c.weight * c.scale;
    }
  }
  return s;
}

double JumpLaw::sample(double u_component, double u_size) const {
  const JumpComponent* chosen = &components_.back();
  double acc = 0.0;
  for (const auto& c : components_) {
    acc += c.weight;
    if (u_component < acc) {
      chosen = &c;
      break;
    }
  }
  if (chosen->kind == JumpKind::Point) return chosen->scale;
  return -chosen->scale * std::log(u_size);
}

LevyModel::LevyModel(double sigma2, double drift, double jump_rate, std::optional<JumpLaw> jump_law)
    : sigma2_(sigma2), drift_(drift), jump_rate_(jump_rate), jump_law_(std::move(jump_law)) {
  if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) throw DomainError("sigma2 must be >= 0");
  if (!std::isfinite(drift_)) throw DomainError("drift must be finite");
  if (!(jump_rate_ >= 0.0) || !std::isfinite(jump_rate_))
    throw DomainError("jump rate must be >= 0");
  if (jump_rate_ > 0.0 && !jump_law_) throw DomainError("positive jump rate needs a jump law");
  if (!jump_law_) jump_rate_ = 0.0;
  if (sigma2_ == 0.0 && jump_rate_ == 0.0)
    throw DomainError("model has neither a Gaussian part nor jumps");

  const double mean_jump = has_jumps() ? jump_law_->mean() : 0.0;
  psi1_ = drift_ - jump_rate_ * mean_jump;
  // Treat round-off sized values as exact balance.
  const double scale = std::abs(drift_) + jump_rate_ * mean_jump;
  if (std::abs(psi1_) <= 1e-12 * std::max(1.0, scale)) psi1_ = 0.0;
  if (psi1_ < 0.0)
    throw DomainError("model drifts to -infinity (psi'(0+) = " + std::to_string(psi1_) + ")");
  regime_ = psi1_ == 0.0 ? Regime::Oscillates : Regime::DriftsToPlusInfinity;
}

double LevyModel::sigma() const noexcept { return std::sqrt(sigma2_); }

const JumpLaw& LevyModel::jump_law() const {
  if (!jump_law_) throw UnsupportedError("model has no jumps");
  return *jump_law_;
}

double LevyModel::psi(double theta) const {
  double v = 0.5 * sigma2_ * theta * theta + drift_ * theta;
  if (has_jumps()) v += jump_rate_ * (jump_law_->laplace(theta) - 1.0);
  return v;
}

std::complex<double> LevyModel::psi(std::complex<double> theta) const {
  std::complex<double> v = 0.5 * sigma2_ * theta * theta + drift_ * theta;
  if (has_jumps()) v += jump_rate_ * (jump_law_->laplace(theta) - 1.0);
  return v;
}

double LevyModel::psi_prime(double theta) const {
  double v = sigma2_ * theta + drift_;
  if (has_jumps()) v -= jump_rate_ * jump_law_->laplace_moment(theta);
  return v;
}

double LevyModel::phi(double q) const {
  if (!(q >= 0.0)) throw DomainError("phi: q must be >= 0");
  // psi'(0+) >= 0 so psi is increasing on [0, inf) and Phi(0) = 0.
  if (q == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int grow = 0;
  while (psi(hi) < q) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 2000) throw NumericError("phi: failed to bracket root");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < q ? lo : hi) = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double f = psi(theta) - q;
    const double d = psi_prime(theta);
    if (!(d > 0.0)) break;
    const double next = theta - f / d;
    if (!(next >= lo && next <= hi)) break;
    const bool done = std::abs(next - theta) <= 1e-16 * std::max(1.0, theta);
    theta = next;
    if (done) break;
  }
  if (std::abs(psi(theta) - q) > 1e-10 * std::max(1.0, q))
    throw NumericError("phi: root not converged");
  return theta;
}

double LevyModel::phi_prime(double q) const {
  const double d = psi_prime(phi(q));
  if (d <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / d;
}

ZeroDerivatives LevyModel::psi_derivatives_at_zero() const {
  double psi2 = sigma2_;
  if (has_jumps()) psi2 += jump_rate_ * jump_law_->second_moment();
  return {psi1_, psi2};
}

double LevyModel::levy_tail_first_moment(double level) const {
  if (!has_jumps()) return 0.0;
  return jump_rate_ * jump_law_->tail_first_moment(level);
}

}  // namespace levyembed
