#include "lcpk/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcpk {

GameSolution game_value(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double shift = 1.0 + max_abs_entry(a);

  // With A+shift > 0 the value v' is positive and the column player's
  // optimal y solves: min e'u s.t. (A+shift) u >= e, u >= 0, with
  // v' = 1/(e'u) and y = u v'. The LP duals give the row strategy.
  LpProblem prob;
  prob.c = Vector(n, 1.0);
  prob.a = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) prob.a(i, j) = a(i, j) + shift;
  }
  prob.b = Vector(m, 1.0);

  LpSolution lp = solve_lp(prob);
  if (lp.status != LpStatus::kOptimal) {
    throw std::runtime_error("game_value: LP solve failed with status " +
                             std::string(to_string(lp.status)));
  }
  const double mass_col = lp.objective;      // e'u = 1/v'
  double mass_row = 0.0;
  for (double v : lp.y) mass_row += v;
  if (mass_col <= 0.0 || mass_row <= 0.0) {
    throw std::runtime_error("game_value: degenerate LP masses");
  }

  GameSolution sol;
  sol.value = 1.0 / mass_col - shift;
  sol.col_strategy = (1.0 / mass_col) * lp.x;
  sol.row_strategy = (1.0 / mass_row) * lp.y;
  return sol;
}

std::optional<Vector> positive_value_vector(const Matrix& a) {
  if (!a.square()) {
    throw std::invalid_argument("positive_value_vector: matrix must be square");
  }
  const std::size_t n = a.rows();

  // max delta  s.t.  A'r >= delta e, e'r <= 1, r >= 0, delta >= 0.
  // Variables (r, delta); delta > 0 at the optimum iff v(A') > 0.
  LpProblem prob;
  prob.c = Vector(n + 1, 0.0);
  prob.c[n] = -1.0;
  prob.a = Matrix(n + 1, n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) prob.a(j, i) = a(i, j);
    prob.a(j, n) = -1.0;
  }
  for (std::size_t i = 0; i < n; ++i) prob.a(n, i) = -1.0;
  prob.b = Vector(n + 1, 0.0);
  prob.b[n] = -1.0;

  LpSolution lp = solve_lp(prob);
  if (lp.status != LpStatus::kOptimal) return std::nullopt;
  const double delta = -lp.objective;
  if (delta <= 1e-9) return std::nullopt;

  Vector r(lp.x.begin(), lp.x.begin() + n);
  // Rescale so min(r'A) is exactly 1, then re-verify strictness.
  r = (1.0 / delta) * r;
  Vector margins(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += r[i] * a(i, j);
    margins[j] = s;
  }
  if (min_entry(margins) <= 1e-9) return std::nullopt;
  return r;
}

}  // namespace lcpk
