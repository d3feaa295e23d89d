#include "lcpk/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "lcpk/linalg.hpp"
#include "lcpk/lp.hpp"

namespace lcpk {

Matrix gen_k_matrix(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> off(-1.0, 0.0);
  std::uniform_real_distribution<double> margin(0.1, 1.0);
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_abs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = off(rng);
      row_abs += std::fabs(m(i, j));
    }
    m(i, i) = row_abs + margin(rng);
  }
  return m;
}

Matrix gen_block_triangular_k(std::size_t blocks, std::size_t block_size,
                              Rng& rng, Orientation orientation) {
  if (blocks == 0 || block_size == 0) {
    throw std::invalid_argument("gen_block_triangular_k: sizes must be positive");
  }
  BlockPartition part{block_size, blocks, Orientation::kLower};
  Matrix m(part.dimension(), part.dimension(), 0.0);
  std::uniform_real_distribution<double> fill(-0.5, 0.0);
  for (std::size_t i = 0; i < blocks; ++i) {
    set_block(m, part, i, i, gen_k_matrix(block_size, rng));
    for (std::size_t j = 0; j < i; ++j) {
      Matrix b(block_size, block_size);
      for (std::size_t r = 0; r < block_size; ++r) {
        for (std::size_t c = 0; c < block_size; ++c) b(r, c) = fill(rng);
      }
      set_block(m, part, i, j, b);
    }
  }
  if (orientation == Orientation::kUpper) {
    part.orientation = Orientation::kUpper;
    Matrix perm = block_reversal_permutation(part);
    m = perm * m * transpose(perm);
  }
  return m;
}

HiddenTriple gen_hidden(std::size_t blocks, std::size_t block_size, Rng& rng,
                        Orientation orientation) {
  HiddenTriple t;
  t.partition = BlockPartition{block_size, blocks, orientation};
  t.x = gen_block_triangular_k(blocks, block_size, rng, orientation);
  t.y = gen_block_triangular_k(blocks, block_size, rng, orientation);
  auto xinv = inverse(t.x);
  if (!xinv) {
    throw std::runtime_error("gen_hidden: generated X was singular");
  }
  t.n = t.y * (*xinv);
  // The off-pattern blocks of Y X^{-1} are zero in exact arithmetic; scrub
  // the roundoff so pattern checks see exact zeros.
  for (std::size_t i = 0; i < blocks; ++i) {
    for (std::size_t j = 0; j < blocks; ++j) {
      const bool zero_side = orientation == Orientation::kLower ? (j > i) : (j < i);
      if (!zero_side) continue;
      for (std::size_t r = 0; r < block_size; ++r) {
        for (std::size_t c = 0; c < block_size; ++c) {
          t.n(i * block_size + r, j * block_size + c) = 0.0;
        }
      }
    }
  }
  if (inf_norm(t.n * t.x - t.y) > 1e-10) {
    throw std::runtime_error("gen_hidden: witness residual too large");
  }
  return t;
}

Vector sample_q(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  Vector q(n);
  for (double& v : q) v = unif(rng);
  return q;
}

Vector sample_feasible_q(const Matrix& m, Rng& rng, int max_tries) {
  const std::size_t n = m.rows();
  for (int t = 0; t < max_tries; ++t) {
    Vector q = sample_q(n, rng);
    if (feasible_point(m, q).feasible) return q;
  }
  // Constructive fallback: q = -M zbar + u is feasible at zbar.
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  Vector zbar(n), u(n);
  for (double& v : zbar) v = unif(rng);
  for (double& v : u) v = unif(rng);
  Vector q = u - (m * zbar);
  return q;
}

Vector sample_feasible_point(const Vector& base, const Matrix& m_inverse,
                             Rng& rng, double scale) {
  std::uniform_real_distribution<double> unif(0.0, scale);
  Vector d(base.size());
  for (double& v : d) v = unif(rng);
  return base + m_inverse * d;
}

Matrix gen_dominant_matrix(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 1.0);
  std::bernoulli_distribution flip(0.5);
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row_abs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = off(rng);
      row_abs += std::fabs(m(i, j));
    }
    const double d = row_abs + margin(rng);
    m(i, i) = flip(rng) ? d : -d;
  }
  return m;
}

std::pair<Matrix, Matrix> gen_nonneg_monotone_pair(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  Matrix m(n, n, 0.0);
  Matrix big(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = unif(rng);
      big(i, j) = m(i, j) + bump(rng);
    }
  }
  return {m, big};
}

std::pair<Matrix, Matrix> gen_inverse_comparison_pair(std::size_t blocks,
                                                      std::size_t block_size,
                                                      Rng& rng) {
  Matrix m = gen_block_triangular_k(blocks, block_size, rng);
  Matrix n = m;
  std::uniform_real_distribution<double> diag_bump(0.0, 1.0);
  std::uniform_real_distribution<double> relax(0.0, 1.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j) {
        n(i, j) += diag_bump(rng);
      } else if (n(i, j) < 0.0) {
        // Raise toward zero without crossing it: stays Z, stays dominant.
        n(i, j) *= relax(rng);
      }
    }
  }
  return {m, n};
}

}  // namespace lcpk
