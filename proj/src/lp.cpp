#include "lcpk/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcpk {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kRatioEntryTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kBreakdownTol = 1e-11;

// Full-tableau two-phase simplex. Column layout: n structural variables,
// then one surplus per row, then artificials for rows that need one.
// Rows with b_i <= 0 are negated at setup so their surplus starts basic.
class SimplexTableau {
 public:
  SimplexTableau(const LpProblem& prob)
      : m_(prob.a.rows()), n_(prob.a.cols()) {
    rows_.assign(m_, Vector());
    basis_.assign(m_, 0);
    art_start_ = n_ + m_;

    std::vector<bool> needs_art(m_, false);
    std::size_t art_count = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (prob.b[i] > 0.0) {
        needs_art[i] = true;
        ++art_count;
      }
    }
    total_ = n_ + m_ + art_count;

    std::size_t next_art = art_start_;
    for (std::size_t i = 0; i < m_; ++i) {
      Vector row(total_ + 1, 0.0);
      const double sign = needs_art[i] ? 1.0 : -1.0;
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign * prob.a(i, j);
      // surplus: a x - s = b, sign-flipped along with the row
      row[n_ + i] = -sign;
      row[total_] = sign * prob.b[i];
      if (needs_art[i]) {
        row[next_art] = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = n_ + i;
      }
      rows_[i] = std::move(row);
    }

    // Phase-2 objective row: reduced costs start as c (basis cost is zero
    // for surplus starts) and get corrected below for basic artificials.
    obj_.assign(total_ + 1, 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = prob.c[j];

    // Phase-1 objective: sum of artificials.
    phase1_.assign(total_ + 1, 0.0);
    for (std::size_t j = art_start_; j < total_; ++j) phase1_[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= art_start_) {
        for (std::size_t j = 0; j <= total_; ++j) phase1_[j] -= rows_[i][j];
      }
    }
  }

  LpStatus run() {
    LpStatus s = iterate(/*phase1=*/true);
    if (s != LpStatus::kOptimal) return s;
    if (-phase1_[total_] > 1e-8 * (1.0 + bscale())) return LpStatus::kInfeasible;
    pivot_out_artificials();
    return iterate(/*phase1=*/false);
  }

  Vector primal(std::size_t n) const {
    Vector x(n, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n) x[basis_[i]] = rows_[i][total_];
    }
    return x;
  }

  // The dual of row i is the reduced cost of its surplus column.
  Vector duals() const {
    Vector y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) y[i] = obj_[n_ + i];
    return y;
  }

 private:
  double bscale() const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s = std::max(s, std::fabs(rows_[i][total_]));
    return s;
  }

  bool is_artificial(std::size_t j) const { return j >= art_start_; }

  LpStatus iterate(bool phase1) {
    Vector& obj = phase1 ? phase1_ : obj_;
    for (;;) {
      // Bland: entering = lowest-index column with negative reduced cost.
      std::size_t enter = total_;
      for (std::size_t j = 0; j < total_; ++j) {
        if (!phase1 && is_artificial(j)) continue;
        if (obj[j] < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == total_) return LpStatus::kOptimal;

      // Ratio test; ties broken by lowest basic-variable index (Bland).
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double t = rows_[i][enter];
        if (t <= kRatioEntryTol) continue;
        const double ratio = rows_[i][total_] / t;
        if (ratio < best - kRatioTieTol) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + kRatioTieTol && leave < m_ &&
                   basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == m_) {
        return phase1 ? LpStatus::kNumericalBreakdown : LpStatus::kUnbounded;
      }
      if (std::fabs(rows_[leave][enter]) < kBreakdownTol) {
        return LpStatus::kNumericalBreakdown;
      }
      pivot(leave, enter);
    }
  }

  void pivot_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_start_) continue;
      std::size_t col = total_;
      for (std::size_t j = 0; j < art_start_; ++j) {
        if (std::fabs(rows_[i][j]) > kRatioEntryTol) {
          col = j;
          break;
        }
      }
      // A row with no usable entry is redundant; its artificial stays basic
      // at zero and the row never interacts with later pivots.
      if (col < total_) pivot(i, col);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Vector& pr = rows_[row];
    const double d = pr[col];
    for (std::size_t j = 0; j <= total_; ++j) pr[j] /= d;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      eliminate(rows_[i], pr, col);
    }
    eliminate(obj_, pr, col);
    eliminate(phase1_, pr, col);
    basis_[row] = col;
  }

  static void eliminate(Vector& target, const Vector& pivot_row,
                        std::size_t col) {
    const double f = target[col];
    if (f == 0.0) return;
    for (std::size_t j = 0; j < target.size(); ++j) {
      target[j] -= f * pivot_row[j];
    }
    target[col] = 0.0;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t art_start_;
  std::size_t total_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
  Vector obj_;
  Vector phase1_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& prob) {
  if (prob.a.rows() != prob.b.size() || prob.a.cols() != prob.c.size()) {
    throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
  }
  LpSolution sol;
  SimplexTableau tab(prob);
  sol.status = tab.run();
  if (sol.status != LpStatus::kOptimal) return sol;
  sol.x = tab.primal(prob.c.size());
  sol.y = tab.duals();
  sol.objective = dot(prob.c, sol.x);
  return sol;
}

FeasibilityResult feasible_point(const Matrix& m, const Vector& q) {
  if (m.rows() != q.size() || !m.square()) {
    throw std::invalid_argument("feasible_point: dimension mismatch");
  }
  LpProblem prob;
  prob.c = Vector(m.cols(), 0.0);
  prob.a = m;
  prob.b = Vector(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) prob.b[i] = -q[i];
  LpSolution sol = solve_lp(prob);
  FeasibilityResult res;
  res.feasible = sol.status == LpStatus::kOptimal;
  if (res.feasible) res.point = sol.x;
  return res;
}

}  // namespace lcpk
