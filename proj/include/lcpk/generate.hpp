#pragma once

#include <cstdint>
#include <random>

#include "lcpk/lcp.hpp"
#include "lcpk/matrix.hpp"

namespace lcpk {

using Rng = std::mt19937_64;

// Strictly diagonally dominant Z-matrix with positive diagonal, hence K:
// off-diagonals U[-1, 0], diagonal = abs row sum + margin U[0.1, 1].
Matrix gen_k_matrix(std::size_t n, Rng& rng);

// Block triangular K-matrix that is also a Z-matrix overall: diagonal
// blocks from gen_k_matrix, filled off-diagonal blocks U[-0.5, 0].
Matrix gen_block_triangular_k(std::size_t blocks, std::size_t block_size,
                              Rng& rng,
                              Orientation orientation = Orientation::kLower);

struct HiddenTriple {
  Matrix n, x, y;
  BlockPartition partition;
};

// X, Y block triangular K with one pattern; N = Y X^{-1} with off-pattern
// blocks zeroed exactly (they are pure roundoff).
HiddenTriple gen_hidden(std::size_t blocks, std::size_t block_size, Rng& rng,
                        Orientation orientation = Orientation::kLower);

// Componentwise U[-5, 5].
Vector sample_q(std::size_t n, Rng& rng);

// Rejection sampling from U[-5,5] capped at max_tries, then the
// constructive fallback q = -M zbar + u with zbar, u >= 0.
Vector sample_feasible_q(const Matrix& m, Rng& rng, int max_tries = 200);

// Feasible point z* + M^{-1} d with d >= 0 (requires m_inverse >= 0 in the
// classes used here, so the sample stays feasible by construction).
Vector sample_feasible_point(const Vector& base, const Matrix& m_inverse,
                             Rng& rng, double scale = 5.0);

// Matrix with strictly dominant diagonal and mixed-sign off-diagonals.
Matrix gen_dominant_matrix(std::size_t n, Rng& rng);

// Nonnegative pair 0 <= M <= N, N = M + nonnegative bump.
std::pair<Matrix, Matrix> gen_nonneg_monotone_pair(std::size_t n, Rng& rng);

// Pair M <= N with M a K-matrix and N block triangular K: N is grown from
// M by raising diagonal entries and relaxing off-diagonals toward zero.
std::pair<Matrix, Matrix> gen_inverse_comparison_pair(std::size_t blocks,
                                                      std::size_t block_size,
                                                      Rng& rng);

}  // namespace lcpk
