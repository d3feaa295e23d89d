#pragma once

#include <optional>
#include <string>

#include "lcpk/matrix.hpp"

namespace lcpk {

// min c'x  subject to  a x >= b, x >= 0.
struct LpProblem {
  Vector c;
  Matrix a;
  Vector b;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalBreakdown };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalBreakdown: return "numerical_breakdown";
  }
  return "unknown";
}

// On kOptimal: x primal solution, y dual multipliers of the rows (y >= 0,
// a'y <= c, y'(ax - b) ~ 0, |c'x - b'y| small).
struct LpSolution {
  LpStatus status = LpStatus::kNumericalBreakdown;
  Vector x;
  Vector y;
  double objective = 0.0;
};

// Dense-tableau two-phase primal simplex, Bland's rule throughout.
LpSolution solve_lp(const LpProblem& prob);

struct FeasibilityResult {
  bool feasible = false;
  Vector point;  // a witness z >= 0 with q + m z >= 0 when feasible
};

// Phase-1 emptiness test for FEA(m, q) = {z >= 0 : q + m z >= 0}.
FeasibilityResult feasible_point(const Matrix& m, const Vector& q);

}  // namespace lcpk
