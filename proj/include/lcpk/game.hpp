#pragma once

#include <optional>

#include "lcpk/lp.hpp"
#include "lcpk/matrix.hpp"

namespace lcpk {

// Two-player zero-sum matrix game solution. Conventions: the row strategy
// x satisfies x'A <= v e' and the column strategy y satisfies A y >= v e,
// both within tolerance; strategies live on the probability simplex.
struct GameSolution {
  double value = 0.0;
  Vector row_strategy;
  Vector col_strategy;
};

// Shifts the payoff to positivity, solves the reciprocal LP pair, unshifts.
GameSolution game_value(const Matrix& a);

// A vector r >= 0 with r'A > 0 strictly, rescaled so min(r'A) = 1, when the
// value of the game with payoff A' is positive; std::nullopt otherwise.
std::optional<Vector> positive_value_vector(const Matrix& a);

}  // namespace lcpk
