#pragma once

#include <cstdint>
#include <optional>

#include "lcpk/matrix.hpp"

namespace lcpk {

// Elimination pivots below this magnitude are treated as zero.
inline constexpr double kSingularTol = 1e-12;
// Verification tolerance for inverse residuals, scaled by dimension.
inline constexpr double kInverseTol = 1e-9;
// Power iteration controls.
inline constexpr int kPerronMaxIter = 10000;
inline constexpr double kPerronConvTol = 1e-10;
inline constexpr double kPerronShift = 1e-8;

// Determinant via partially pivoted Gaussian elimination. Returns 0.0 when a
// pivot falls below kSingularTol.
double det(const Matrix& m);

// Gauss-Jordan inverse; std::nullopt when a pivot falls below kSingularTol.
std::optional<Matrix> inverse(const Matrix& m);

// Solves a x = b; std::nullopt when a is singular within kSingularTol.
std::optional<Vector> solve_linear(const Matrix& a, const Vector& b);

// Rows and columns of m restricted to the (0-based) index set, order kept.
Matrix principal_submatrix(const Matrix& m, const std::vector<std::size_t>& indices);

// Perron root of a nonnegative square matrix via power iteration on
// m + shift*I. Throws on negative entries.
double perron_root(const Matrix& m);

// Independent route to the spectral radius of a nonnegative matrix:
// repeated squaring of the normalized matrix. Used to cross-check
// perron_root in tests.
double spectral_radius_by_squaring(const Matrix& m, int squarings = 40);

// Strict row dominance: |m_ii| > sum_{k != i} |m_ik| for every i.
bool is_diagonally_dominant(const Matrix& m);

// Componentwise minimum.
Vector meet(const Vector& x, const Vector& y);

// The m x m submatrix at block position (i, j), 0-based.
Matrix extract_block(const Matrix& m, const BlockPartition& part, std::size_t i,
                     std::size_t j);

// Writes an m x m block into position (i, j) of a block matrix.
void set_block(Matrix& m, const BlockPartition& part, std::size_t i,
               std::size_t j, const Matrix& block);

// Permutation that reverses block order; conjugating an upper-oriented
// block matrix by it yields the lower orientation.
Matrix block_reversal_permutation(const BlockPartition& part);

}  // namespace lcpk
