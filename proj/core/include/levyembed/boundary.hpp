#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace levyembed {

enum class BoundaryVariant { Thm1, Thm2, Thm3, Constant };

const char* to_string(BoundaryVariant v);

/// One node of a boundary table in an internal parameter p.
///
/// At parameter p the local time level is l(p) and the stopping levels are
/// phi_+(l) = up(p) above zero and -phi_-(l) = -down(p) below it. A jump of
/// either level appears as two rows with equal p and l. `survival` is the
/// analytic P(L_T > l) where the construction provides one, NaN otherwise.
struct BoundaryRow {
  double p = 0.0;
  double l = 0.0;
  double dl = 0.0;
  double up = 0.0;
  double dup = 0.0;
  double down = 0.0;
  double ddown = 0.0;
  double survival = 1.0;
};

struct Levels {
  double up;
  double down;
};

/// The pair phi_+, phi_- as non-decreasing right-continuous functions of the
/// local time, stored as monotone tables with cubic Hermite cells.
class Boundary {
 public:
  Boundary(BoundaryVariant variant, std::vector<BoundaryRow> rows);
  static Boundary constant(double up, double down);

  BoundaryVariant variant() const noexcept { return variant_; }
  const std::vector<BoundaryRow>& rows() const noexcept { return rows_; }
  double l_max() const noexcept { return rows_.back().l; }

  Levels at(double l) const;
  double phi_plus(double l) const { return at(l).up; }
  double phi_minus(double l) const { return at(l).down; }

  /// inf{l : phi_+(l) > x} and inf{l : phi_+(l) >= x}
  double psi_plus(double x) const;
  double psi_plus_left(double x) const;
  double psi_minus(double x) const;
  double psi_minus_left(double x) const;

  /// Levels at l starting the row search from `row`; updates `row`.
  Levels at_from(double l, std::size_t& row) const;

  /// P(L_T > l_i) at every row from exp(-int rate(up, down) dl), with
  /// 3-point Gauss-Legendre in each cell.
  std::vector<double> survival_from_rate(
      const std::function<double(double up, double down)>& rate) const;

 private:
  std::size_t find_row(double l) const;
  Levels eval_cell(std::size_t i, double l) const;
  double p_at(std::size_t i, double l) const;
  double psi_generic(double x, bool upper, bool strict) const;

  BoundaryVariant variant_;
  std::vector<BoundaryRow> rows_;
};

/// Forward-only evaluation for monotone local-time sequences.
class BoundaryCursor {
 public:
  explicit BoundaryCursor(const Boundary& b) : b_(&b) {}
  Levels at(double l) {
    if (l < last_l_) row_ = 0;
    last_l_ = l;
    return b_->at_from(l, row_);
  }
  void reset() {
    row_ = 0;
    last_l_ = 0.0;
  }

 private:
  const Boundary* b_;
  std::size_t row_ = 0;
  double last_l_ = 0.0;
};

}  // namespace levyembed
