#include "levyembed/measure.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "levyembed/errors.hpp"

namespace levyembed {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-12;
}  // namespace

TargetMeasure::TargetMeasure(const MeasureSpec& spec) : spec_(spec), atoms_(spec.atoms) {
  double atom_mass = 0.0;
  for (const auto& [x, m] : atoms_) {
    if (!std::isfinite(x)) throw DomainError("atom location must be finite");
    if (x == 0.0) throw UnsupportedError("atoms at 0 are not supported");
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("atom masses must be positive");
    atom_mass += m;
  }
  std::sort(atoms_.begin(), atoms_.end());
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].first == atoms_[i - 1].first) throw DomainError("duplicate atom location");

  if (spec.density) {
    const DensitySpec& d = *spec.density;
    density_mass_ = d.mass.value_or(1.0 - atom_mass);
    if (!(density_mass_ > 0.0)) throw DomainError("density piece needs positive mass");
    switch (d.kind) {
      case DensityKind::Uniform:
        if (!(d.a < d.b) || !std::isfinite(d.a) || !std::isfinite(d.b))
          throw DomainError("uniform density needs finite a < b");
        dlo_ = d.a;
        dhi_ = d.b;
        break;
      case DensityKind::Exponential:
        if (!(d.rate > 0.0) || !std::isfinite(d.loc))
          throw DomainError("exponential density needs rate > 0 and finite loc");
        dlo_ = d.positive_side ? d.loc : -kInf;
        dhi_ = d.positive_side ? kInf : d.loc;
        break;
      case DensityKind::Table: {
        if (d.xs.size() < 2 || d.xs.size() != d.fs.size())
          throw DomainError("table density needs matching xs/fs with at least 2 nodes");
        for (std::size_t i = 0; i < d.xs.size(); ++i) {
          if (!std::isfinite(d.xs[i]) || !(d.fs[i] >= 0.0) || !std::isfinite(d.fs[i]))
            throw DomainError("table density values must be finite and nonnegative");
          if (i > 0 && !(d.xs[i] > d.xs[i - 1]))
            throw DomainError("table density xs must be strictly increasing");
        }
        std::vector<double> cum(d.xs.size(), 0.0);
        for (std::size_t i = 1; i < d.xs.size(); ++i)
          cum[i] = cum[i - 1] + 0.5 * (d.fs[i] + d.fs[i - 1]) * (d.xs[i] - d.xs[i - 1]);
        if (!(cum.back() > 0.0)) throw DomainError("table density integrates to zero");
        const double scale = density_mass_ / cum.back();
        tf_.resize(d.fs.size());
        tcum_.resize(cum.size());
        for (std::size_t i = 0; i < cum.size(); ++i) {
          tf_[i] = d.fs[i] * scale;
          tcum_[i] = cum[i] * scale;
        }
        tcum_.back() = density_mass_;
        dlo_ = d.xs.front();
        dhi_ = d.xs.back();
        break;
      }
    }
    dens_ = d;
  } else if (atoms_.empty()) {
    throw DomainError("measure has neither atoms nor a density");
  }

  const double total = atom_mass + density_mass_;
  if (std::abs(total - 1.0) > kMassTol)
    throw DomainError("total mass must be 1 (got " + std::to_string(total) + ")");

  lower_ = kInf;
  upper_ = -kInf;
  if (!atoms_.empty()) {
    lower_ = atoms_.front().first;
    upper_ = atoms_.back().first;
  }
  if (has_density()) {
    lower_ = std::min(lower_, dlo_);
    upper_ = std::max(upper_, dhi_);
  }

  seg_start_cdf_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t j = 0; j < atoms_.size(); ++j)
    seg_start_cdf_[j + 1] = seg_start_cdf_[j] + atoms_[j].second;
}

TargetMeasure TargetMeasure::two_point(double a, double b, double p_b) {
  if (!(p_b > 0.0 && p_b < 1.0)) throw DomainError("two-point mass must lie in (0,1)");
  return TargetMeasure(MeasureSpec{{{a, 1.0 - p_b}, {b, p_b}}, std::nullopt});
}

TargetMeasure TargetMeasure::uniform(double a, double b) {
  DensitySpec d;
  d.kind = DensityKind::Uniform;
  d.a = a;
  d.b = b;
  return TargetMeasure(MeasureSpec{{}, d});
}

TargetMeasure TargetMeasure::exponential(double rate) {
  DensitySpec d;
  d.kind = DensityKind::Exponential;
  d.rate = rate;
  return TargetMeasure(MeasureSpec{{}, d});
}

double TargetMeasure::pdf(double x) const {
  if (!has_density() || x < dlo_ || x > dhi_) return 0.0;
  const DensitySpec& d = *dens_;
  switch (d.kind) {
    case DensityKind::Uniform:
      return density_mass_ / (d.b - d.a);
    case DensityKind::Exponential:
      return density_mass_ * d.rate * std::exp(-d.rate * std::abs(x - d.loc));
    case DensityKind::Table: {
      auto it = std::upper_bound(d.xs.begin(), d.xs.end(), x);
      std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - d.xs.begin(), 1) - 1,
                                            d.xs.size() - 2);
      const double w = (x - d.xs[i]) / (d.xs[i + 1] - d.xs[i]);
      return tf_[i] + w * (tf_[i + 1] - tf_[i]);
    }
  }
  return 0.0;
}

double TargetMeasure::dens_cdf(double x) const {
  if (!has_density() || x <= dlo_) return 0.0;
  if (x >= dhi_) return density_mass_;
  const DensitySpec& d = *dens_;
  switch (d.kind) {
    case DensityKind::Uniform:
      return density_mass_ * (x - d.a) / (d.b - d.a);
    case DensityKind::Exponential:
      return d.positive_side ? -density_mass_ * std::expm1(-d.rate * (x - d.loc))
                             : density_mass_ * std::exp(d.rate * (x - d.loc));
    case DensityKind::Table: {
      auto it = std::upper_bound(d.xs.begin(), d.xs.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - d.xs.begin()) - 1;
      const double dx = x - d.xs[i];
      const double slope = (tf_[i + 1] - tf_[i]) / (d.xs[i + 1] - d.xs[i]);
      return tcum_[i] + dx * (tf_[i] + 0.5 * slope * dx);
    }
  }
  return 0.0;
}

double TargetMeasure::dens_tail(double x) const {
  if (!has_density() || x >= dhi_) return 0.0;
  if (x <= dlo_) return density_mass_;
  const DensitySpec& d = *dens_;
  if (d.kind == DensityKind::Exponential && d.positive_side)
    return density_mass_ * std::exp(-d.rate * (x - d.loc));
  if (d.kind == DensityKind::Exponential)
    return -density_mass_ * std::expm1(d.rate * (x - d.loc));
  return density_mass_ - dens_cdf(x);
}

double TargetMeasure::dens_inverse(double t) const {
  if (t <= 0.0) return dlo_;
  if (t >= density_mass_) return dhi_;
  const DensitySpec& d = *dens_;
  switch (d.kind) {
    case DensityKind::Uniform:
      return d.a + (d.b - d.a) * t / density_mass_;
    case DensityKind::Exponential:
      return d.positive_side ? d.loc - std::log1p(-t / density_mass_) / d.rate
                             : d.loc + std::log(t / density_mass_) / d.rate;
    case DensityKind::Table: {
      auto it = std::upper_bound(tcum_.begin(), tcum_.end(), t);
      const std::size_t i =
          std::min(static_cast<std::size_t>(it - tcum_.begin()) - 1, tcum_.size() - 2);
      const double r = t - tcum_[i];
      const double w = d.xs[i + 1] - d.xs[i];
      const double slope = (tf_[i + 1] - tf_[i]) / w;
      // Solve f_i dx + slope dx^2 / 2 = r in its cancellation-free form.
      const double disc = std::max(0.0, tf_[i] * tf_[i] + 2.0 * slope * r);
      const double denom = tf_[i] + std::sqrt(disc);
      const double dx = denom > 0.0 ? 2.0 * r / denom : 0.0;
      return std::min(d.xs[i] + dx, d.xs[i + 1]);
    }
  }
  return dlo_;
}

double TargetMeasure::cdf(double x) const {
  if (x == kInf) return 1.0;
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                             [](double v, const auto& a) { return v < a.first; });
  return seg_start_cdf_[static_cast<std::size_t>(it - atoms_.begin())] + dens_cdf(x);
}

double TargetMeasure::cdf_left(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const auto& a, double v) { return a.first < v; });
  return seg_start_cdf_[static_cast<std::size_t>(it - atoms_.begin())] + dens_cdf(x);
}

double TargetMeasure::tail(double s) const {
  double v = dens_tail(s);
  for (auto it = atoms_.rbegin(); it != atoms_.rend() && it->first >= s; ++it) v += it->second;
  return v;
}

double TargetMeasure::tail_right(double s) const {
  double v = dens_tail(s);
  for (auto it = atoms_.rbegin(); it != atoms_.rend() && it->first > s; ++it) v += it->second;
  return v;
}

double TargetMeasure::quantile(double u) const {
  const std::size_t k = atoms_.size();
  for (std::size_t j = 0; j <= k; ++j) {
    const double x_end = j < k ? atoms_[j].first : kInf;
    const double seg_end = seg_start_cdf_[j] + dens_cdf(x_end);
    if (u < seg_end) {
      const double x = dens_inverse(u - seg_start_cdf_[j]);
      return j > 0 ? std::max(x, atoms_[j - 1].first) : x;
    }
    if (j < k && u < seg_start_cdf_[j + 1] + dens_cdf(x_end)) return x_end;
  }
  return upper_;
}

double TargetMeasure::quantile_left(double u) const {
  if (u <= 0.0) return lower_;
  const std::size_t k = atoms_.size();
  for (std::size_t j = 0; j <= k; ++j) {
    const double x_end = j < k ? atoms_[j].first : kInf;
    const double seg_end = seg_start_cdf_[j] + dens_cdf(x_end);
    if (u <= seg_end) {
      const double x = dens_inverse(u - seg_start_cdf_[j]);
      return j > 0 ? std::max(x, atoms_[j - 1].first) : x;
    }
    if (j < k && u <= seg_start_cdf_[j + 1] + dens_cdf(x_end)) return x_end;
  }
  return upper_;
}

std::vector<double> TargetMeasure::density_kinks() const {
  if (!has_density() || dens_->kind != DensityKind::Table) return {};
  return {dens_->xs.begin() + 1, dens_->xs.end() - 1};
}

std::vector<double> TargetMeasure::breakpoints() const {
  std::vector<double> v;
  for (const auto& a : atoms_) v.push_back(a.first);
  if (has_density()) {
    if (std::isfinite(dlo_)) v.push_back(dlo_);
    if (std::isfinite(dhi_)) v.push_back(dhi_);
    for (double k : density_kinks()) v.push_back(k);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double TargetMeasure::integrate_density(const std::function<double(double)>& f, double lo,
                                        double hi) const {
  if (!has_density()) return 0.0;
  lo = std::max(lo, dlo_);
  hi = std::min(hi, dhi_);
  if (!(lo < hi)) return 0.0;
  std::vector<double> cuts{lo};
  for (double k : density_kinks())
    if (k > lo && k < hi) cuts.push_back(k);
  if (dens_->kind == DensityKind::Exponential && dens_->loc > lo && dens_->loc < hi)
    cuts.push_back(dens_->loc);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(hi);
  auto g = [&](double x) {
    const double p = pdf(x);
    return p == 0.0 ? 0.0 : f(x) * p;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    s += GK::integrate(g, cuts[i], cuts[i + 1], 15, 1e-13);
  return s;
}

double TargetMeasure::integrate(const std::function<double(double)>& f, double lo,
                                double hi) const {
  double s = integrate_density(f, lo, hi);
  for (const auto& [x, m] : atoms_)
    if (x >= lo && x <= hi) s += m * f(x);
  return s;
}

double TargetMeasure::integrate(const std::function<double(double)>& f) const {
  return integrate(f, -kInf, kInf);
}

double TargetMeasure::mean() const {
  return integrate([](double x) { return x; });
}

}  // namespace levyembed
