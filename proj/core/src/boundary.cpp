#include "levyembed/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyembed/errors.hpp"
#include "levyembed/interp.hpp"

namespace levyembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hermite in a cell; linear when a slope is missing, clamped to the endpoint
// range so monotone columns stay monotone.
double cell_value(double v0, double v1, double d0, double d1, double dp, double t) {
  if (std::isinf(v0) || std::isinf(v1)) return t < 1.0 ? v0 : v1;
  if (!std::isfinite(d0) || !std::isfinite(d1)) return v0 + t * (v1 - v0);
  const double v = interp::hermite(v0, v1, dp * d0, dp * d1, t);
  return std::clamp(v, std::min(v0, v1), std::max(v0, v1));
}

double cell_slope(double v0, double v1, double d0, double d1, double dp, double t) {
  if (!std::isfinite(d0) || !std::isfinite(d1)) return v1 - v0;
  return interp::hermite_slope(v0, v1, dp * d0, dp * d1, t);
}

}  // namespace

const char* to_string(BoundaryVariant v) {
  switch (v) {
    case BoundaryVariant::Thm1:
      return "thm1";
    case BoundaryVariant::Thm2:
      return "thm2";
    case BoundaryVariant::Thm3:
      return "thm3";
    case BoundaryVariant::Constant:
      return "constant";
  }
  return "?";
}

Boundary::Boundary(BoundaryVariant variant, std::vector<BoundaryRow> rows)
    : variant_(variant), rows_(std::move(rows)) {
  if (rows_.empty()) throw DomainError("boundary needs at least one row");
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].l < rows_[i - 1].l || rows_[i].p < rows_[i - 1].p)
      throw NumericError("boundary rows must be sorted in p and l");
  }
}

Boundary Boundary::constant(double up, double down) {
  if (!(up > 0.0) || !(down > 0.0)) throw DomainError("constant boundary needs positive levels");
  BoundaryRow r;
  r.up = up;
  r.down = down;
  r.dup = r.ddown = 0.0;
  r.survival = std::numeric_limits<double>::quiet_NaN();
  return Boundary(BoundaryVariant::Constant, {r});
}

std::size_t Boundary::find_row(double l) const {
  auto it = std::upper_bound(rows_.begin(), rows_.end(), l,
                             [](double v, const BoundaryRow& r) { return v < r.l; });
  return it == rows_.begin() ? 0 : static_cast<std::size_t>(it - rows_.begin()) - 1;
}

double Boundary::p_at(std::size_t i, double l) const {
  const BoundaryRow& a = rows_[i];
  const BoundaryRow& b = rows_[i + 1];
  const double dp = b.p - a.p;
  if (b.l <= a.l) return 0.0;
  double lo = 0.0, hi = 1.0;
  double t = (l - a.l) / (b.l - a.l);
  for (int it = 0; it < 60; ++it) {
    const double f = cell_value(a.l, b.l, a.dl, b.dl, dp, t) - l;
    if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(l))) break;
    if (f > 0) hi = t;
    else lo = t;
    const double s = cell_slope(a.l, b.l, a.dl, b.dl, dp, t);
    double next = s > 0 ? t - f / s : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15) break;
    t = next;
  }
  return t;
}

Levels Boundary::eval_cell(std::size_t i, double l) const {
  if (i + 1 >= rows_.size()) return {rows_.back().up, rows_.back().down};
  const BoundaryRow& a = rows_[i];
  const BoundaryRow& b = rows_[i + 1];
  if (l <= a.l || b.p == a.p) return {a.up, a.down};
  const double t = p_at(i, l);
  const double dp = b.p - a.p;
  return {cell_value(a.up, b.up, a.dup, b.dup, dp, t),
          cell_value(a.down, b.down, a.ddown, b.ddown, dp, t)};
}

Levels Boundary::at(double l) const {
  if (std::isnan(l)) throw DomainError("boundary evaluated at NaN");
  return eval_cell(find_row(l), l);
}

Levels Boundary::at_from(double l, std::size_t& row) const {
  if (row >= rows_.size() || rows_[row].l > l) row = find_row(l);
  while (row + 1 < rows_.size() && rows_[row + 1].l <= l) ++row;
  return eval_cell(row, l);
}

double Boundary::psi_generic(double x, bool upper, bool strict) const {
  auto col = [&](const BoundaryRow& r) { return upper ? r.up : r.down; };
  auto dcol = [&](const BoundaryRow& r) { return upper ? r.dup : r.ddown; };
  auto past = [&](double v) { return strict ? v > x : v >= x; };
  std::size_t i = 0;
  while (i < rows_.size() && !past(col(rows_[i]))) ++i;
  if (i == rows_.size()) return kInf;
  if (i == 0) return rows_[0].l;
  const BoundaryRow& a = rows_[i - 1];
  const BoundaryRow& b = rows_[i];
  if (a.p == b.p) return b.l;
  const double dp = b.p - a.p;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (past(cell_value(col(a), col(b), dcol(a), dcol(b), dp, mid))) hi = mid;
    else lo = mid;
  }
  return cell_value(a.l, b.l, a.dl, b.dl, dp, hi);
}

double Boundary::psi_plus(double x) const { return psi_generic(x, true, true); }
double Boundary::psi_plus_left(double x) const { return psi_generic(x, true, false); }
double Boundary::psi_minus(double x) const { return psi_generic(x, false, true); }
double Boundary::psi_minus_left(double x) const { return psi_generic(x, false, false); }

std::vector<double> Boundary::survival_from_rate(
    const std::function<double(double, double)>& rate) const {
  static const double kNodes[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
  static const double kWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  std::vector<double> s(rows_.size(), 1.0);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < rows_.size(); ++i) {
    const BoundaryRow& a = rows_[i];
    const BoundaryRow& b = rows_[i + 1];
    const double dp = b.p - a.p;
    if (dp > 0.0 && b.l > a.l) {
      for (int k = 0; k < 3; ++k) {
        const double t = kNodes[k];
        const double up = cell_value(a.up, b.up, a.dup, b.dup, dp, t);
        const double down = cell_value(a.down, b.down, a.ddown, b.ddown, dp, t);
        const double dl = std::max(0.0, cell_slope(a.l, b.l, a.dl, b.dl, dp, t));
        cum += kWeights[k] * rate(up, down) * dl;
      }
    }
    s[i + 1] = std::exp(-cum);
  }
  return s;
}

}  // namespace levyembed
