#include "levyembed/scale_function.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "levyembed/errors.hpp"
#include "levyembed/interp.hpp"
#include "levyembed/talbot.hpp"

namespace levyembed {

namespace {

constexpr int kTalbotNodes = 32;
constexpr int kMaxSeriesTerms = 200;
constexpr double kSeriesRelTol = 1e-12;

// Central differences, second-order one-sided at both ends.
std::vector<double> grid_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  d[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2 * h);
  d[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
  return d;
}

// (a * b)(x_i) = int_0^{x_i} a(y) b(x_i - y) dy by the trapezoid rule with the
// Euler-Maclaurin end correction, which lifts it to fourth order.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& da,
                             const std::vector<double>& b, const std::vector<double>& db,
                             double h) {
  const std::size_t n = a.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += a[j] * b[i - j];
    s -= 0.5 * (a[0] * b[i] + a[i] * b[0]);
    const double fp_end = da[i] * b[0] - a[i] * db[0];
    const double fp_start = da[0] * b[i] - a[0] * db[i];
    c[i] = h * s - h * h / 12.0 * (fp_end - fp_start);
  }
  return c;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double ExponentialSum::value(double x) const {
  double v = linear * x;
  for (std::size_t k = 0; k < coeff.size(); ++k) v += coeff[k] * std::exp(rate[k] * x);
  return v;
}

double ExponentialSum::derivative(double x) const {
  double v = linear;
  for (std::size_t k = 0; k < coeff.size(); ++k) v += coeff[k] * rate[k] * std::exp(rate[k] * x);
  return v;
}

std::optional<ExponentialSum> closed_form_scale(const LevyModel& model) {
  const double s2 = model.sigma2();
  const double d = model.drift();
  if (s2 <= 0.0) return std::nullopt;
  if (!model.has_jumps()) {
    ExponentialSum w;
    if (d == 0.0) {
      w.linear = 2.0 / s2;
    } else {
      w.coeff = {1.0 / d, -1.0 / d};
      w.rate = {0.0, -2.0 * d / s2};
    }
    return w;
  }
  const auto& comps = model.jump_law().components();
  if (comps.size() != 1 || comps.front().kind != JumpKind::Exponential) return std::nullopt;

  // psi(theta) (1 + m theta) = theta Q(theta), Q(theta) = A theta^2 + B theta + C
  const double m = comps.front().scale;
  const double lam = model.jump_rate();
  const double A = 0.5 * s2 * m;
  const double B = 0.5 * s2 + d * m;
  const double C = model.psi_derivatives_at_zero().psi1;
  ExponentialSum w;
  if (C == 0.0) {
    const double rho = B / A;
    w.linear = 1.0 / B;
    const double c0 = (m * rho - 1.0) / (A * rho * rho);
    w.coeff = {c0, -c0};
    w.rate = {0.0, -rho};
    return w;
  }
  (void)lam;
  const double disc = std::sqrt(B * B - 4 * A * C);
  const double r1 = (-B + disc) / (2 * A);
  const double r2 = (-B - disc) / (2 * A);
  auto dP = [&](double r) { return A * r * r + B * r + C + r * (2 * A * r + B); };
  for (double r : {0.0, r1, r2}) {
    w.coeff.push_back((1.0 + m * r) / dP(r));
    w.rate.push_back(r);
  }
  return w;
}

ScaleGrid default_scale_grid(double a_mu, double b_mu) {
  const double span = std::isfinite(a_mu) && std::isfinite(b_mu) ? std::abs(a_mu) + b_mu : 5.0;
  const double x_max = std::max(4.0 * span, 20.0);
  return {x_max, x_max / 8000.0};
}

ScaleFunction ScaleFunction::build(const LevyModel& model, ScaleGrid grid,
                                   std::vector<double> q_values, ScaleRoute route) {
  if (!(grid.x_max > 0.0) || !std::isfinite(grid.x_max))
    throw DomainError("build_scale: x_max must be positive");
  if (!(grid.h > 0.0) || grid.h > grid.x_max / 100.0 * (1 + 1e-12))
    throw DomainError("build_scale: need 0 < h <= x_max/100");

  ScaleFunction sf(model);
  const auto n = static_cast<std::size_t>(std::llround(grid.x_max / grid.h));
  sf.x_max_ = grid.x_max;
  sf.h_ = grid.x_max / static_cast<double>(n);
  const double h = sf.h_;
  sf.w_.assign(n + 1, 0.0);
  sf.wp_.assign(n + 1, 0.0);

  const auto closed = route == ScaleRoute::Auto ? closed_form_scale(model) : std::nullopt;
  if (closed) {
    sf.mode_ = ScaleMode::ClosedForm;
    sf.kind_ = !model.has_jumps() ? (model.drift() == 0.0 ? ClosedFormKind::Brownian
                                                          : ClosedFormKind::BrownianDrift)
                                  : ClosedFormKind::ExponentialJumpDiffusion;
    for (std::size_t i = 0; i <= n; ++i) {
      const double x = h * static_cast<double>(i);
      sf.w_[i] = closed->value(x);
      sf.wp_[i] = closed->derivative(x);
    }
    sf.w_[0] = 0.0;
  } else {
    sf.mode_ = ScaleMode::NumericSeries;
    // W(0+) = 0 under unbounded variation, 1/drift otherwise.
    const double w0 = model.unbounded_variation() ? 0.0 : 1.0 / model.drift();
    auto inv_psi = [&](std::complex<double> t) { return 1.0 / model.psi(t); };
    auto deriv = [&](std::complex<double> t) { return t / model.psi(t) - w0; };
    sf.w_[0] = w0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double x = h * static_cast<double>(i);
      sf.w_[i] = talbot_invert(inv_psi, x, kTalbotNodes);
      sf.wp_[i] = talbot_invert(deriv, x, kTalbotNodes);
    }
    sf.wp_[0] = n >= 3 ? 3 * sf.wp_[1] - 3 * sf.wp_[2] + sf.wp_[3] : sf.wp_[1];
  }
  if (model.unbounded_variation()) sf.wp_[0] = 2.0 / model.sigma2();

  // W-bar by exact integration of the Hermite interpolant.
  sf.wbar_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    sf.wbar_[i + 1] =
        sf.wbar_[i] + interp::hermite_integral(sf.w_[i], sf.w_[i + 1], sf.wp_[i], sf.wp_[i + 1], h);

  const auto wpp = grid_derivative(sf.wp_, h);
  sf.ww_ = convolve(sf.w_, sf.wp_, sf.w_, sf.wp_, h);
  sf.wwp_ = convolve(sf.w_, sf.wp_, sf.wp_, wpp, h);

  for (double q : q_values) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("build_scale: q must be >= 0");
    if (sf.q_cache_.count(q)) continue;
    if (q == 0.0) {
      sf.q_cache_[q] = sf.w_;
      sf.q_terms_[q] = 1;
      continue;
    }
    std::vector<double> sum = sf.w_;
    std::vector<double> term = sf.w_;
    std::vector<double> dterm = sf.wp_;
    double qk = 1.0;
    int k = 1;
    bool converged = false;
    for (; k < kMaxSeriesTerms; ++k) {
      term = convolve(sf.w_, sf.wp_, term, dterm, h);
      dterm = grid_derivative(term, h);
      qk *= q;
      double tnorm = qk * sup_norm(term);
      for (std::size_t i = 0; i <= n; ++i) sum[i] += qk * term[i];
      if (!std::isfinite(tnorm)) break;
      if (tnorm < kSeriesRelTol * sup_norm(sum)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericError("build_scale: q-series did not converge within " +
                         std::to_string(kMaxSeriesTerms) + " terms (q too large for grid)");
    sf.q_cache_[q] = std::move(sum);
    sf.q_terms_[q] = k + 1;
  }
  return sf;
}

ScaleFunction build_scale(const LevyModel& model, double x_max, double h, double q) {
  std::vector<double> qs;
  if (q != 0.0) qs.push_back(q);
  return ScaleFunction::build(model, {x_max, h}, qs);
}

void ScaleFunction::check_domain(double x) const {
  if (std::isnan(x)) throw DomainError("scale function evaluated at NaN");
  if (x > x_max_ * (1 + 1e-12))
    throw DomainError("scale function evaluated beyond x_max (" + std::to_string(x) + " > " +
                      std::to_string(x_max_) + ")");
}

bool ScaleFunction::has_q(double q) const { return q == 0.0 || q_cache_.count(q) > 0; }

int ScaleFunction::series_terms(double q) const {
  auto it = q_terms_.find(q);
  return it == q_terms_.end() ? (q == 0.0 ? 1 : 0) : it->second;
}

std::span<const double> ScaleFunction::q_table(double q) const {
  if (q == 0.0) return w_;
  auto it = q_cache_.find(q);
  if (it == q_cache_.end())
    throw DomainError("W^(q) requested for q = " + std::to_string(q) + " not built");
  return it->second;
}

double ScaleFunction::w(double x) const {
  if (x < 0.0) return 0.0;
  check_domain(x);
  return interp::hermite_uniform(w_, wp_, h_, std::min(x, x_max_));
}

double ScaleFunction::w_q(double q, double x) const {
  if (q == 0.0) return w(x);
  const auto table = q_table(q);
  if (x < 0.0) return 0.0;
  check_domain(x);
  return interp::lagrange4_uniform(table, h_, std::min(x, x_max_));
}

double ScaleFunction::w_prime(double x) const {
  if (x < 0.0) return 0.0;
  check_domain(x);
  if (x == 0.0) return wp_.front();
  return interp::lagrange4_uniform(wp_, h_, std::min(x, x_max_));
}

double ScaleFunction::w_bar(double x) const {
  if (x <= 0.0) return 0.0;
  check_domain(x);
  return interp::hermite_uniform(wbar_, w_, h_, std::min(x, x_max_));
}

double ScaleFunction::conv_ww(double x) const {
  if (x <= 0.0) return 0.0;
  check_domain(x);
  return interp::lagrange4_uniform(ww_, h_, std::min(x, x_max_));
}

double ScaleFunction::conv_wwprime(double x) const {
  if (x <= 0.0) return 0.0;
  check_domain(x);
  return interp::lagrange4_uniform(wwp_, h_, std::min(x, x_max_));
}

namespace {
void check_interval(double x, double a, double b) {
  if (!(a < b) || !(x >= a) || !(x <= b))
    throw DomainError("exit laws need a < x < b");
}
}  // namespace

double ScaleFunction::exit_up_prob(double x, double a, double b) const {
  check_interval(x, a, b);
  return std::clamp(w(x - a) / w(b - a), 0.0, 1.0);
}

double ScaleFunction::exit_creep_prob(double x, double a, double b) const {
  check_interval(x, a, b);
  if (!model_.unbounded_variation())
    throw UnsupportedError("no downward creeping without a Gaussian component");
  const double wpb = w_prime(b - a);
  const double v = (w_prime(x - a) - wpb * w(x - a) / w(b - a)) / w_prime_at_zero();
  return std::clamp(v, 0.0, 1.0);
}

double ScaleFunction::expected_exit_time(double x, double a, double b) const {
  check_interval(x, a, b);
  return std::max(0.0, w(x - a) / w(b - a) * w_bar(b - a) - w_bar(x - a));
}

double ScaleFunction::potential_density_uq(double q, double x) const {
  if (!(q > 0.0)) throw DomainError("potential density needs q > 0");
  const double phi = model_.phi(q);
  const double dphi = model_.phi_prime(q);
  double v = dphi * std::exp(-phi * x);
  if (x < 0.0) v -= w_q(q, -x);
  return v;
}

WinfBound ScaleFunction::winf_bound_check(double a, double x) const {
  if (model_.regime() != Regime::Oscillates)
    throw UnsupportedError("undershoot bound holds for oscillating models only");
  if (!(a > 0.0) || !(x > 0.0)) throw DomainError("winf_bound_check needs a, x > 0");
  const double c = 1.0 + w_bar(a) * model_.levy_tail_first_moment(1.0);
  const double mid = a * (1.0 - w(a - x) / w(a));
  return {std::min(a, x) - c, mid, x};
}

double ScaleFunction::laplace_transform(double q, double theta) const {
  const auto f = q_table(q);
  const std::size_t n = f.size() - 1;
  // Composite Simpson over pairs of cells, trapezoid on a trailing odd cell.
  double s = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const double x0 = h_ * static_cast<double>(i);
    s += h_ / 3.0 *
         (f[i] * std::exp(-theta * x0) + 4 * f[i + 1] * std::exp(-theta * (x0 + h_)) +
          f[i + 2] * std::exp(-theta * (x0 + 2 * h_)));
  }
  if (i < n) {
    const double x0 = h_ * static_cast<double>(i);
    s += 0.5 * h_ * (f[i] * std::exp(-theta * x0) + f[i + 1] * std::exp(-theta * (x0 + h_)));
  }
  // Tail beyond x_max with a locally exponential model of W^(q).
  const double fx = f[n];
  const double growth = (f[n] - f[n - 1]) / (h_ * std::max(f[n], 1e-300));
  if (theta <= growth) return std::numeric_limits<double>::infinity();
  s += std::exp(-theta * x_max_) * fx / (theta - growth);
  return s;
}

}  // namespace levyembed
