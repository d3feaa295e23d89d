#include "lcpk/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace lcpk {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (!m.square()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

}  // namespace

double det(const Matrix& m) {
  require_square(m, "det");
  const std::size_t n = m.rows();
  Matrix a = m;
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    }
    if (std::fabs(a(pivot, k)) < kSingularTol) return 0.0;
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(pivot, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  double d = sign;
  for (std::size_t k = 0; k < n; ++k) d *= a(k, k);
  return d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    }
    if (std::fabs(a(pivot, k)) < kSingularTol) return std::nullopt;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(k, j));
        std::swap(inv(pivot, j), inv(k, j));
      }
    }
    const double d = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::optional<Vector> solve_linear(const Matrix& a_in, const Vector& b_in) {
  require_square(a_in, "solve_linear");
  const std::size_t n = a_in.rows();
  if (b_in.size() != n) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }
  Matrix a = a_in;
  Vector b = b_in;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    }
    if (std::fabs(a(pivot, k)) < kSingularTol) return std::nullopt;
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(pivot, j), a(k, j));
      std::swap(b[pivot], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Matrix principal_submatrix(const Matrix& m,
                           const std::vector<std::size_t>& indices) {
  require_square(m, "principal_submatrix");
  if (indices.empty()) {
    throw std::invalid_argument("principal_submatrix: empty index set");
  }
  for (std::size_t idx : indices) {
    if (idx >= m.rows()) {
      throw std::out_of_range("principal_submatrix: index out of range");
    }
  }
  Matrix s(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      s(i, j) = m(indices[i], indices[j]);
    }
  }
  return s;
}

double perron_root(const Matrix& m) {
  require_square(m, "perron_root");
  const std::size_t n = m.rows();
  for (double v : m.data()) {
    if (v < 0.0) {
      throw std::invalid_argument("perron_root: negative entry");
    }
  }
  // Power iteration on m + shift*I; the shift keeps reducible and periodic
  // inputs converging and moves the root by exactly the shift.
  Vector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double rayleigh = 0.0;
  for (int iter = 0; iter < kPerronMaxIter; ++iter) {
    Vector y = m * x;
    for (std::size_t i = 0; i < n; ++i) y[i] += kPerronShift * x[i];
    const double num = dot(x, y);
    const double den = dot(x, x);
    const double next = num / den;
    const double norm = two_norm(y);
    if (norm < kSingularTol) {
      // The iterate was annihilated; the dominant eigenvalue seen is 0.
      return 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    if (iter > 0 && std::fabs(next - rayleigh) < kPerronConvTol) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  return std::max(0.0, rayleigh - kPerronShift);
}

double spectral_radius_by_squaring(const Matrix& m, int squarings) {
  require_square(m, "spectral_radius_by_squaring");
  for (double v : m.data()) {
    if (v < 0.0) {
      throw std::invalid_argument("spectral_radius_by_squaring: negative entry");
    }
  }
  // rho(M) = lim ||M^k||^(1/k); repeated squaring reaches k = 2^squarings.
  // b tracks M^(2^j) / exp(log_scale).
  Matrix b = m;
  double log_scale = 0.0;
  for (int j = 0; j < squarings; ++j) {
    const double norm = inf_norm(b);
    if (norm == 0.0) return 0.0;
    b = (1.0 / norm) * b;
    b = b * b;
    log_scale = 2.0 * (log_scale + std::log(norm));
  }
  const double norm = inf_norm(b);
  if (norm == 0.0) return 0.0;
  return std::exp((log_scale + std::log(norm)) / std::pow(2.0, squarings));
}

bool is_diagonally_dominant(const Matrix& m) {
  require_square(m, "is_diagonally_dominant");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != i) off += std::fabs(m(i, j));
    }
    if (std::fabs(m(i, i)) <= off) return false;
  }
  return true;
}

Vector meet(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("meet: length mismatch");
  }
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::min(x[i], y[i]);
  return z;
}

Matrix extract_block(const Matrix& m, const BlockPartition& part, std::size_t i,
                     std::size_t j) {
  if (!m.square() || m.rows() != part.dimension()) {
    throw std::invalid_argument("extract_block: partition does not divide dimension");
  }
  if (i >= part.block_count || j >= part.block_count) {
    throw std::out_of_range("extract_block: block index out of range");
  }
  const std::size_t s = part.block_size;
  Matrix b(s, s);
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c) b(r, c) = m(i * s + r, j * s + c);
  }
  return b;
}

void set_block(Matrix& m, const BlockPartition& part, std::size_t i,
               std::size_t j, const Matrix& block) {
  if (!m.square() || m.rows() != part.dimension()) {
    throw std::invalid_argument("set_block: partition does not divide dimension");
  }
  if (block.rows() != part.block_size || block.cols() != part.block_size) {
    throw std::invalid_argument("set_block: block has wrong size");
  }
  const std::size_t s = part.block_size;
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c) m(i * s + r, j * s + c) = block(r, c);
  }
}

Matrix block_reversal_permutation(const BlockPartition& part) {
  const std::size_t dim = part.dimension();
  const std::size_t s = part.block_size;
  const std::size_t n = part.block_count;
  Matrix p(dim, dim, 0.0);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t r = 0; r < s; ++r) {
      p(b * s + r, (n - 1 - b) * s + r) = 1.0;
    }
  }
  return p;
}

}  // namespace lcpk
