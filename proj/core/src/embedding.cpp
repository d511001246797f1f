#include "levyembed/embedding.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "embedding_support.hpp"
#include "levyembed/errors.hpp"
#include "levyembed/interp.hpp"

namespace levyembed {

namespace detail {

double positive_cut(const TargetMeasure& mu, const ScaleFunction& scale) {
  const double xm = scale.x_max();
  if (mu.upper() <= xm) return std::max(mu.upper(), 0.0);
  if (mu.tail(xm) > kTailTruncation)
    throw DomainError("scale grid too short: target mass beyond x_max is " +
                      std::to_string(mu.tail(xm)) + "; raise x_max");
  double lo = 0.0, hi = xm;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * xm; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mu.tail(mid) > kTailNegligible ? lo : hi) = mid;
  }
  return hi;
}

double negative_cut(const TargetMeasure& mu, const ScaleFunction& scale) {
  const double xm = scale.x_max();
  if (mu.lower() >= -xm) return std::min(mu.lower(), 0.0);
  if (mu.cdf(-xm) > kTailTruncation)
    throw DomainError("scale grid too short: target mass below -x_max is " +
                      std::to_string(mu.cdf(-xm)) + "; raise x_max");
  double lo = -xm, hi = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * xm; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mu.cdf(mid) > kTailNegligible ? hi : lo) = mid;
  }
  return lo;
}

std::vector<double> a_grid(double a_star, int n, double depth) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    a[static_cast<std::size_t>(k)] =
        1.0 - (1.0 - a_star) * std::pow(depth, static_cast<double>(k) / (n - 1));
  a.front() = a_star;
  return a;
}

CumulativeTable tabulate_density_integral(const TargetMeasure& mu,
                                          const std::function<double(double)>& weight,
                                          double lo, double hi, bool downward, int cells) {
  CumulativeTable t;
  t.downward = downward;
  t.origin = downward ? hi : lo;
  if (!mu.has_density()) return t;
  const auto [dlo, dhi] = mu.density_support();
  lo = std::max(lo, dlo);
  hi = std::min(hi, dhi);
  if (!(lo < hi)) return t;
  t.origin = downward ? hi : lo;
  std::vector<double> xs;
  for (int i = 0; i <= cells; ++i) xs.push_back(lo + (hi - lo) * i / cells);
  for (double k : mu.density_kinks())
    if (k > lo && k < hi) xs.push_back(k);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (downward) std::reverse(xs.begin(), xs.end());

  auto integrand = [&](double x) { return weight(x) * mu.pdf(x); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  t.s.resize(xs.size());
  t.v.assign(xs.size(), 0.0);
  t.d.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.s[i] = std::abs(xs[i] - t.origin);
    if (i > 0)
      t.v[i] = t.v[i - 1] + GK::integrate(integrand, std::min(xs[i - 1], xs[i]),
                                          std::max(xs[i - 1], xs[i]), 0, 0.0);
    t.d[i] = integrand(xs[i]);
  }
  return t;
}

double CumulativeTable::operator()(double x) const {
  if (s.empty()) return 0.0;
  const double r = downward ? origin - x : x - origin;
  if (r <= 0.0) return 0.0;
  if (r >= s.back()) return v.back();
  auto it = std::upper_bound(s.begin(), s.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
  const double h = s[i + 1] - s[i];
  return interp::hermite(v[i], v[i + 1], h * d[i], h * d[i + 1], (r - s[i]) / h);
}

}  // namespace detail

using detail::kInf;

AdmissibilityReport check_admissible_thm1(const TargetMeasure& mu, const ScaleFunction& scale) {
  if (!scale.model().unbounded_variation())
    throw UnsupportedError("the sign-condition embedding needs sigma > 0");
  const double hi = detail::positive_cut(mu, scale);
  const double lo = detail::negative_cut(mu, scale);
  const double wp0 = scale.w_prime_at_zero();
  AdmissibilityReport r;
  r.lhs = mu.integrate([&](double x) { return x > 0.0 ? scale.w(x) : 0.0; }, 0.0, hi);
  r.rhs = mu.integrate(
      [&](double x) { return x < 0.0 ? wp0 * scale.w(-x) / scale.w_prime(-x) : 0.0; }, lo, 0.0);
  r.ok = std::abs(r.lhs - r.rhs) <= 1e-6 * std::max({r.lhs, r.rhs, 1.0});
  const auto& m = scale.model();
  if (!r.ok && !m.has_jumps() && m.drift() > 0.0)
    r.remedy = "shift the target by the offset from shift_embedding to make it admissible";
  return r;
}

// ---------------------------------------------------------------------------

QuantileConstruction::QuantileConstruction(const TargetMeasure& mu, const ScaleFunction& scale,
                                           bool two_sided)
    : mu_(&mu), scale_(&scale), two_sided_(two_sided), boundary_(Boundary::constant(1, 1)) {
  constexpr int kCells = 4096;
  a_star_ = two_sided ? mu.a_star() : 0.0;
  x_hi_ = detail::positive_cut(mu, scale);
  d_tab_ = detail::tabulate_density_integral(
      mu, [this](double x) { return w_clip(x); }, 0.0, x_hi_, false, kCells);
  if (two_sided_) {
    x_lo_ = detail::negative_cut(mu, scale);
    g_tab_ = detail::tabulate_density_integral(
        mu, [this](double x) { return kappa(-x); }, x_lo_, 0.0, true, kCells);
    const double a_total = upper_integral(1.0);
    const double b_total = lower_raw(0.0);
    mismatch_ = std::abs(a_total - b_total) / std::max(a_total, b_total);
    lower_scale_ = a_total / b_total;
  }
  build_rows();
}

QuantileConstruction QuantileConstruction::thm1(const TargetMeasure& mu,
                                                const ScaleFunction& scale) {
  if (!(mu.a_star() > 0.0) || !(mu.a_star() < 1.0))
    throw DomainError("target needs mass on both sides of 0");
  const auto adm = check_admissible_thm1(mu, scale);
  if (!adm.ok)
    throw InadmissibleError("target is not admissible: int_(0,inf) W dmu = " +
                                std::to_string(adm.lhs) + " but the negative side gives " +
                                std::to_string(adm.rhs) +
                                (adm.remedy.empty() ? "" : "; " + adm.remedy),
                            adm.lhs, adm.rhs);
  return QuantileConstruction(mu, scale, true);
}

QuantileConstruction QuantileConstruction::thm3(const TargetMeasure& mu,
                                                const ScaleFunction& scale) {
  if (mu.cdf(0.0) > 0.0)
    throw DomainError("one-sided embedding needs a target on (0, inf); found mass on (-inf, 0]");
  return QuantileConstruction(mu, scale, false);
}

double QuantileConstruction::w_clip(double x) const {
  return scale_->w(std::min(x, scale_->x_max()));
}

double QuantileConstruction::kappa(double z) const {
  if (z <= 0.0) return 0.0;
  z = std::min(z, scale_->x_max());
  return scale_->w_prime_at_zero() * scale_->w(z) / scale_->w_prime(z);
}

double QuantileConstruction::d_open(double x) const {
  double s = d_tab_(x);
  for (const auto& [y, m] : mu_->atoms())
    if (y > 0.0 && y < x) s += m * w_clip(y);
  return s;
}

double QuantileConstruction::g_open(double x) const {
  double s = g_tab_(x);
  for (const auto& [y, m] : mu_->atoms())
    if (y < 0.0 && y > x) s += m * kappa(-y);
  return s;
}

double QuantileConstruction::upper_integral(double a) const {
  if (a <= a_star_) return 0.0;
  a = std::min(a, 1.0);
  const double x = std::min(mu_->quantile(a), x_hi_);
  return d_open(x) + w_clip(x) * std::max(0.0, a - mu_->cdf_left(x));
}

double QuantileConstruction::lower_raw(double c) const {
  if (c >= a_star_) return 0.0;
  c = std::max(c, 0.0);
  const double x = std::max(mu_->quantile(c), x_lo_);
  return g_open(x) + kappa(-x) * std::max(0.0, mu_->cdf(x) - c);
}

double QuantileConstruction::lower_integral(double c) const {
  return lower_scale_ * lower_raw(c);
}

double QuantileConstruction::alpha(double a) const {
  if (!two_sided_) return 0.0;
  const double target = upper_integral(a);
  if (target <= 0.0) return a_star_;
  if (target >= lower_integral(0.0)) return 0.0;
  double lo = 0.0, hi = a_star_;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (lower_integral(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double QuantileConstruction::alpha_inverse(double c) const {
  if (!two_sided_) throw UnsupportedError("alpha is trivial for the one-sided embedding");
  const double target = lower_integral(c);
  if (target <= 0.0) return a_star_;
  if (target >= upper_integral(1.0)) return 1.0;
  double lo = a_star_, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (upper_integral(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void QuantileConstruction::build_rows() {
  const TargetMeasure& mu = *mu_;
  constexpr int kNodes = 4096;
  constexpr double kDepth = 1e-8;

  std::vector<std::pair<double, bool>> nodes;
  for (double a : detail::a_grid(a_star_, kNodes, kDepth)) nodes.emplace_back(a, false);
  auto add_break = [&](double a) {
    if (a > a_star_ && a < 1.0) nodes.emplace_back(a, true);
  };
  for (double x : mu.breakpoints()) {
    if (x > 0.0) {
      add_break(mu.cdf_left(x));
      add_break(mu.cdf(x));
    } else if (two_sided_ && x < 0.0) {
      for (double c : {mu.cdf_left(x), mu.cdf(x)})
        if (c > 0.0 && c < a_star_) add_break(alpha_inverse(c));
    }
  }
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::pair<double, bool>> merged;
  for (const auto& n : nodes) {
    if (!merged.empty() && n.first - merged.back().first <= 1e-15) {
      merged.back().second = merged.back().second || n.second;
      continue;
    }
    merged.push_back(n);
  }

  auto is_atom = [&](double x) { return mu.cdf(x) - mu.cdf_left(x) > 0.0; };
  auto q_slope = [&](double x, bool atom) {
    if (atom) return 0.0;
    const double p = mu.pdf(x);
    return p > 0.0 ? 1.0 / p : std::numeric_limits<double>::quiet_NaN();
  };
  auto speed = [&](double up, double alpha, double a) {
    const double denom = alpha + 1.0 - a;
    return denom > 0.0 ? w_clip(up) / denom : kInf;
  };

  std::vector<BoundaryRow> rows;
  std::vector<double> alphas(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) alphas[i] = alpha(merged[i].first);
  alphas.front() = a_star_;

  double l = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double a0 = merged[i].first, a1 = merged[i + 1].first;
    const double am = 0.5 * (a0 + a1);
    const double al0 = alphas[i], al1 = alphas[i + 1], alm = alpha(am);

    const double upm = mu.quantile(am);
    const bool up_atom = is_atom(upm);
    const double up0 = mu.quantile(a0), up1 = mu.quantile_left(a1);
    const double f0 = speed(up0, al0, a0), f1 = speed(up1, al1, a1), fm = speed(upm, alm, am);

    BoundaryRow r0, r1;
    r0.p = a0;
    r1.p = a1;
    r0.l = l;
    l += (a1 - a0) / 6.0 * (f0 + 4.0 * fm + f1);
    r1.l = l;
    r0.dl = f0;
    r1.dl = f1;
    r0.up = up0;
    r1.up = up1;
    r0.dup = q_slope(up0, up_atom);
    r1.dup = q_slope(up1, up_atom);
    r0.survival = 1.0 - a0 + al0;
    r1.survival = 1.0 - a1 + al1;
    if (two_sided_) {
      const bool down_atom = is_atom(mu.quantile(alm));
      const double x0 = mu.quantile_left(al0), x1 = mu.quantile(al1);
      r0.down = -x0;
      r1.down = -x1;
      // d(down)/da = Q'(alpha) W(up) / kappa(down)
      r0.ddown = q_slope(x0, down_atom) * w_clip(up0) / kappa(-x0);
      r1.ddown = q_slope(x1, down_atom) * w_clip(up1) / kappa(-x1);
    } else {
      r0.down = r1.down = kInf;
      r0.ddown = r1.ddown = 0.0;
    }
    if (i == 0 || merged[i].second) rows.push_back(r0);
    rows.push_back(r1);
    if (r1.survival < detail::kSurvivalFloor) break;
  }
  boundary_ = Boundary(two_sided_ ? BoundaryVariant::Thm1 : BoundaryVariant::Thm3,
                       std::move(rows));
}

Boundary build_boundary_thm1(const TargetMeasure& mu, const ScaleFunction& scale) {
  return QuantileConstruction::thm1(mu, scale).boundary();
}

Boundary build_boundary_thm3(const TargetMeasure& mu, const ScaleFunction& scale) {
  return QuantileConstruction::thm3(mu, scale).boundary();
}

// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> law_of_LT(const Boundary& b, const ExcursionLaw& n) {
  const ScaleFunction& s = n.scale();
  const double xm = s.x_max();
  auto w = [&](double x) { return s.w(std::min(x, xm)); };
  std::function<double(double, double)> rate;
  switch (b.variant()) {
    case BoundaryVariant::Thm1:
      rate = [&](double up, double down) {
        const double d = std::min(down, xm);
        return 1.0 / w(up) + s.w_prime(d) / (w(d) * s.w_prime_at_zero());
      };
      break;
    case BoundaryVariant::Thm2:
    case BoundaryVariant::Constant:
      rate = [&](double up, double down) {
        return w(up + down) / (w(up) * w(down));
      };
      break;
    case BoundaryVariant::Thm3:
      rate = [&](double up, double) { return 1.0 / w(up); };
      break;
  }
  const auto surv = b.survival_from_rate(rate);
  std::vector<std::pair<double, double>> out;
  out.reserve(surv.size());
  for (std::size_t i = 0; i < surv.size(); ++i) out.emplace_back(b.rows()[i].l, surv[i]);
  return out;
}

double expected_local_time(const TargetMeasure& mu, const ScaleFunction& scale) {
  const double hi = detail::positive_cut(mu, scale);
  return mu.integrate([&](double x) { return x > 0.0 ? scale.w(x) : 0.0; }, 0.0, hi);
}

IntegrabilityReport check_integrability_thm1(const TargetMeasure& mu,
                                             const ScaleFunction& scale) {
  IntegrabilityReport r;
  const auto& model = scale.model();
  const auto z = model.psi_derivatives_at_zero();
  if (model.regime() != Regime::DriftsToPlusInfinity) {
    r.reason = "finite expected stopping time is only asserted for models drifting to +inf";
    return r;
  }
  r.applicable = true;
  const double hi = detail::positive_cut(mu, scale);
  const double lo = detail::negative_cut(mu, scale);
  r.positive_part =
      mu.integrate([&](double y) { return y > 0.0 ? y * scale.w(y) : 0.0; }, 0.0, hi);
  r.negative_part = mu.integrate(
      [&](double y) { return y < 0.0 ? -y * scale.w(-y) / scale.w_prime(-y) : 0.0; }, lo, 0.0);
  r.finite = std::isfinite(z.psi2) && std::isfinite(r.positive_part) &&
             std::isfinite(r.negative_part);
  if (!std::isfinite(z.psi2)) r.reason = "E[X_1^2] is infinite";
  return r;
}

ShiftResult shift_embedding(const MeasureSpec& spec, const LevyModel& model) {
  if (model.has_jumps() || !model.unbounded_variation() || !(model.drift() > 0.0))
    throw UnsupportedError("shift remedy is only available for Brownian motion with drift");
  const double k = 2.0 * model.drift() / model.sigma2();
  double m = 0.0;
  for (const auto& [x, w] : spec.atoms) m += w * (1.0 - std::exp(-k * x));
  if (spec.density) {
    // Measure validation would reject an atom at 0, so integrate the density
    // part on its own.
    MeasureSpec dens_only;
    dens_only.density = spec.density;
    double atom_mass = 0.0;
    for (const auto& a : spec.atoms) atom_mass += a.second;
    dens_only.density->mass = spec.density->mass.value_or(1.0 - atom_mass);
    const double dm = *dens_only.density->mass;
    dens_only.density->mass = 1.0;
    const TargetMeasure piece(dens_only);
    m += dm * piece.integrate([&](double x) { return 1.0 - std::exp(-k * x); });
  }
  if (!(m < 1.0)) throw DomainError("not embeddable by a shift: m = " + std::to_string(m));
  ShiftResult r;
  r.offset = -std::log1p(-m) / k;
  r.shifted = spec;
  for (auto& a : r.shifted.atoms) a.first -= r.offset;
  if (r.shifted.density) {
    auto& d = *r.shifted.density;
    d.a -= r.offset;
    d.b -= r.offset;
    d.loc -= r.offset;
    for (double& x : d.xs) x -= r.offset;
  }
  return r;
}

double expected_inverse_local_time(const LevyModel& model) {
  const auto z = model.psi_derivatives_at_zero();
  if (model.regime() != Regime::DriftsToPlusInfinity)
    throw UnsupportedError("E[tau_{L(inf)-}] needs a model drifting to +inf");
  if (!std::isfinite(z.psi2)) throw UnsupportedError("psi''(0+) is infinite");
  return z.psi2 / (z.psi1 * z.psi1);
}

}  // namespace levyembed
