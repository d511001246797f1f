#include "levyembed/validation.hpp"

#include <algorithm>
#include <cmath>

#include "levyembed/errors.hpp"

namespace levyembed {

double ks_distance(std::vector<double> samples, const TargetMeasure& mu) {
  if (samples.empty()) throw DomainError("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = mu.cdf_left(samples.front());
  std::size_t i = 0;
  while (i < samples.size()) {
    const double v = samples[i];
    std::size_t j = i;
    while (j < samples.size() && samples[j] == v) ++j;
    const double fn_left = static_cast<double>(i) / n;
    const double fn = static_cast<double>(j) / n;
    d = std::max(d, std::abs(fn_left - mu.cdf_left(v)));
    d = std::max(d, std::abs(fn - mu.cdf(v)));
    if (j < samples.size()) d = std::max(d, std::abs(fn - mu.cdf_left(samples[j])));
    i = j;
  }
  d = std::max(d, 1.0 - mu.cdf(samples.back()));
  return d;
}

double survival_quantile(const std::vector<std::pair<double, double>>& law, double p) {
  if (law.empty()) throw DomainError("empty survival table");
  if (law.front().second <= p) return law.front().first;
  for (std::size_t i = 1; i < law.size(); ++i) {
    const auto [l1, s1] = law[i];
    if (s1 <= p) {
      const auto [l0, s0] = law[i - 1];
      if (s0 == s1) return l1;
      return l0 + (l1 - l0) * (s0 - p) / (s0 - s1);
    }
  }
  return law.back().first;
}

Report validate(const SimResult& sim, const TargetMeasure& mu,
                const std::vector<std::pair<double, double>>& law, double el_target,
                bool one_sided) {
  Report r;
  r.n_paths = sim.paths.size();
  r.censored = sim.censored;
  r.mixed_excursions = sim.mixed_excursions;
  r.censoring_rate = r.n_paths ? static_cast<double>(r.censored) / r.n_paths : 0.0;

  std::vector<double> xs, ls, occ;
  xs.reserve(r.n_paths);
  ls.reserve(r.n_paths);
  for (const auto& p : sim.paths) {
    if (p.censored()) continue;
    xs.push_back(p.x);
    ls.push_back(p.l);
    occ.push_back(p.l_occ);
    if (one_sided && p.sup_x > p.x) ++r.sup_violations;
  }
  r.n_used = xs.size();
  if (r.n_used < 2) throw DomainError("fewer than two uncensored paths");
  const double n = static_cast<double>(r.n_used);

  double sx = 0.0, sxx = 0.0, sl = 0.0, sll = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sl += ls[i];
  }
  r.mean = sx / n;
  r.el = sl / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - r.mean) * (xs[i] - r.mean);
    sll += (ls[i] - r.el) * (ls[i] - r.el);
  }
  r.variance = sxx / (n - 1);
  r.mean_se = std::sqrt(r.variance / n);
  r.el_se = std::sqrt(sll / (n - 1) / n);
  r.el_target = el_target;
  double so = 0.0, soo = 0.0;
  for (double v : occ) so += v;
  r.el_occ = so / n;
  for (double v : occ) soo += (v - r.el_occ) * (v - r.el_occ);
  r.el_occ_se = std::sqrt(soo / (n - 1) / n);

  r.mean_target = mu.mean();
  const double m = r.mean_target;
  r.variance_target = mu.integrate([m](double x) { return (x - m) * (x - m); });

  for (const auto& [x, mass] : mu.atoms()) {
    const double hit = static_cast<double>(std::count(xs.begin(), xs.end(), x));
    const double p = hit / n;
    r.atoms.push_back({x, mass, p, std::sqrt(std::max(mass * (1.0 - mass), 1e-300) / n)});
  }

  r.ks = ks_distance(xs, mu);

  if (!law.empty()) {
    std::sort(ls.begin(), ls.end());
    for (int k = 1; k <= 9; ++k) {
      const double p = 1.0 - 0.1 * k;
      const double lvl = survival_quantile(law, p);
      const auto above = ls.end() - std::upper_bound(ls.begin(), ls.end(), lvl);
      const double emp = static_cast<double>(above) / n;
      r.survival.push_back({lvl, p, emp});
      r.survival_max_dev = std::max(r.survival_max_dev, std::abs(emp - p));
    }
  }
  return r;
}

}  // namespace levyembed
