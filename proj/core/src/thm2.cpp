#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "embedding_support.hpp"
#include "levyembed/embedding.hpp"
#include "levyembed/errors.hpp"
#include "levyembed/interp.hpp"

namespace levyembed {

namespace {

// Cumulative Simpson table on a uniform grid with Hermite evaluation.
struct SimpsonTable {
  double lo = 0.0;
  double h = 0.0;
  std::vector<double> v;
  std::vector<double> d;

  SimpsonTable(const std::function<double(double)>& f, double a, double b, int cells)
      : lo(a), h((b - a) / cells), v(static_cast<std::size_t>(cells) + 1, 0.0),
        d(static_cast<std::size_t>(cells) + 1) {
    for (int i = 0; i <= cells; ++i) d[static_cast<std::size_t>(i)] = f(a + h * i);
    for (int i = 1; i <= cells; ++i) {
      const double x0 = a + h * (i - 1);
      v[static_cast<std::size_t>(i)] =
          v[static_cast<std::size_t>(i - 1)] +
          h / 6.0 * (d[static_cast<std::size_t>(i - 1)] + 4.0 * f(x0 + 0.5 * h) +
                     d[static_cast<std::size_t>(i)]);
    }
  }
  double operator()(double x) const {
    if (h <= 0.0 || x <= lo) return 0.0;
    const double s = (x - lo) / h;
    const std::size_t n = v.size() - 1;
    if (s >= static_cast<double>(n)) return v.back();
    const std::size_t i = static_cast<std::size_t>(s);
    return interp::hermite(v[i], v[i + 1], h * d[i], h * d[i + 1], s - static_cast<double>(i));
  }
  double total() const { return v.back(); }
};

}  // namespace

Boundary build_boundary_thm1_nonatomic(const TargetMeasure& mu, const ScaleFunction& scale) {
  if (mu.has_atoms()) throw DomainError("the x-space construction needs a target without atoms");
  if (!scale.model().unbounded_variation())
    throw UnsupportedError("the sign-condition embedding needs sigma > 0");
  const double hi = detail::positive_cut(mu, scale);
  const double lo = detail::negative_cut(mu, scale);
  if (!(lo < 0.0 && hi > 0.0)) throw DomainError("target needs mass on both sides of 0");
  const double wp0 = scale.w_prime_at_zero();
  auto kappa = [&](double z) { return z > 0.0 ? wp0 * scale.w(z) / scale.w_prime(z) : 0.0; };

  constexpr int kCells = 20000;
  // D(y) = int_0^y W f; G(x) = W'(0) int_x^0 W(-s)/W'(-s) f(s) ds, in t = -x.
  const SimpsonTable dtab([&](double y) { return scale.w(y) * mu.pdf(y); }, 0.0, hi, kCells);
  const SimpsonTable gtab([&](double t) { return kappa(t) * mu.pdf(-t); }, 0.0, -lo, kCells);
  const double g_scale = dtab.total() / gtab.total();
  if (std::abs(g_scale - 1.0) > 1e-6)
    throw InadmissibleError("target is not admissible: D(inf) != G(-inf)", dtab.total(),
                            gtab.total());

  auto g_of = [&](double y) {
    const double target = dtab(y);
    double a = 0.0, b = -lo;
    for (int i = 0; i < 100; ++i) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      (g_scale * gtab(m) < target ? a : b) = m;
    }
    return -0.5 * (a + b);
  };
  auto survival = [&](double y, double g) { return 1.0 + mu.tail(y) - mu.tail(g); };
  auto integrand = [&](double y) {
    return scale.w(y) * mu.pdf(y) / survival(y, g_of(y));
  };

  // y nodes spaced like the quantile grid so the table reaches deep tails.
  const double a_star = mu.a_star();
  std::vector<double> ys;
  for (double a : detail::a_grid(a_star, 4096, 1e-8)) {
    const double y = std::min(mu.quantile(a), hi);
    if (ys.empty() || y > ys.back()) ys.push_back(y);
  }
  ys.front() = 0.0;

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  std::vector<BoundaryRow> rows;
  double l = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    if (i > 0) l += GK::integrate(integrand, ys[i - 1], y, 0, 0.0);
    const double g = i == 0 ? 0.0 : g_of(y);
    BoundaryRow r;
    r.p = y;
    r.l = l;
    r.up = y;
    r.dup = 1.0;
    r.down = -g;
    r.survival = survival(y, g);
    r.dl = scale.w(y) * mu.pdf(y) / r.survival;
    const double fg = mu.pdf(g);
    r.ddown = (i == 0 || fg <= 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                    : scale.w(y) * mu.pdf(y) / (g_scale * kappa(-g) * fg);
    rows.push_back(r);
    if (r.survival < detail::kSurvivalFloor) break;
  }
  return Boundary(BoundaryVariant::Thm1, std::move(rows));
}

Boundary build_boundary_thm2(const TargetMeasure& mu, const ScaleFunction& scale) {
  if (mu.has_atoms() || !mu.has_density())
    throw DomainError("this embedding needs a target with a positive density and no atoms");
  const double a_mu = mu.lower();
  const double b_mu = mu.upper();
  if (!(a_mu < 0.0 && b_mu > 0.0) || !std::isfinite(a_mu) || !std::isfinite(b_mu))
    throw DomainError("target density must have bounded support around 0");
  if (b_mu - a_mu > scale.x_max())
    throw DomainError("scale grid too short: need x_max >= b - a");

  const bool creeping = scale.model().unbounded_variation();
  const double f_plus = mu.pdf(1e-12 * b_mu);
  const double f_minus = mu.pdf(1e-12 * a_mu);
  if (!(f_plus > 0.0) || !(f_minus > 0.0))
    throw DomainError("target density must be positive around 0");
  double f_sup = 0.0;
  for (int i = 0; i <= 1000; ++i) f_sup = std::max(f_sup, mu.pdf(a_mu + (b_mu - a_mu) * i / 1000));

  auto w = [&](double x) { return scale.w(x); };
  using State = std::array<double, 2>;  // {g, psi_+}
  auto survival = [&](double y, double g) { return 1.0 + mu.tail(y) - mu.tail(g); };
  auto rhs = [&](double y, const State& s, bool& ok) -> State {
    const double g = s[0];
    const double fg = mu.pdf(g);
    const double wg = w(-g);
    if (!(g > a_mu) || !(fg > 0.0) || !(wg > 0.0)) {
      ok = false;
      return {0.0, 0.0};
    }
    const double fy = mu.pdf(y);
    const double dg = -(w(y - g) - wg) / wg * fy / fg;
    const double dpsi = w(y) * fy / survival(y, g);
    return {dg, dpsi};
  };

  const double dy0 = b_mu / 8192.0;
  double y = 0.0;
  State s{0.0, 0.0};
  std::vector<BoundaryRow> rows;
  auto push_row = [&](double yy, const State& st, double dg) {
    BoundaryRow r;
    r.p = yy;
    r.l = st[1];
    r.up = yy;
    r.dup = 1.0;
    r.down = -st[0];
    r.ddown = -dg;
    r.survival = survival(yy, st[0]);
    r.dl = w(yy) * mu.pdf(yy) / r.survival;
    rows.push_back(r);
  };
  if (creeping) {
    // g(y) ~ -y sqrt(f(0+)/f(0-)) near 0 where the ODE is 0/0.
    const double slope = std::sqrt(f_plus / f_minus);
    push_row(0.0, s, -slope);
    y = dy0 * 1e-3;
    s = {-slope * y, 0.0};
    bool ok = true;
    s[1] = 0.5 * y * rhs(y, s, ok)[1];
  }
  {
    bool ok = true;
    const State d = rhs(y, s, ok);
    push_row(y, s, y == 0.0 ? 0.0 : d[0]);
  }

  double last_dg = 0.0;
  while (true) {
    if (survival(y, s[0]) < detail::kSurvivalFloor) break;
    double dy = std::min(dy0, 0.01 * (b_mu - y));
    if (mu.pdf(s[0]) < 1e-10 * f_sup) dy *= 0.5;
    State next{};
    bool ok = false;
    for (int attempt = 0; attempt < 60 && !ok; ++attempt) {
      ok = true;
      const State k1 = rhs(y, s, ok);
      const State k2 = rhs(y + 0.5 * dy, {s[0] + 0.5 * dy * k1[0], s[1] + 0.5 * dy * k1[1]}, ok);
      const State k3 = rhs(y + 0.5 * dy, {s[0] + 0.5 * dy * k2[0], s[1] + 0.5 * dy * k2[1]}, ok);
      const State k4 = rhs(y + dy, {s[0] + dy * k3[0], s[1] + dy * k3[1]}, ok);
      next = {s[0] + dy / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
              s[1] + dy / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
      if (ok && !(next[0] > a_mu && std::isfinite(next[0]) && std::isfinite(next[1]))) ok = false;
      if (!ok) dy *= 0.5;
    }
    if (!ok || dy < 1e-14 * b_mu) {
      throw InadmissibleError("g reaches the lower support end a = " + std::to_string(a_mu) +
                                  " at y = " + std::to_string(y) + " before y reaches b = " +
                                  std::to_string(b_mu),
                              y, b_mu);
    }
    y += dy;
    s = next;
    bool ok2 = true;
    const State d = rhs(y, s, ok2);
    last_dg = d[0];
    push_row(y, s, ok2 ? d[0] : std::numeric_limits<double>::quiet_NaN());
    if (b_mu - y < 1e-12 * b_mu) break;
  }

  const double tol = 50.0 * dy0 * std::max(std::abs(last_dg), 1.0);
  if (std::abs(s[0] - a_mu) > tol && survival(y, s[0]) >= detail::kSurvivalFloor)
    throw InadmissibleError("g(b-) = " + std::to_string(s[0]) + " misses a = " +
                                std::to_string(a_mu),
                            s[0], a_mu);
  return Boundary(BoundaryVariant::Thm2, std::move(rows));
}

}  // namespace levyembed
