#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcpk {

using Vector = std::vector<double>;

// Zero pattern of a block triangular matrix. kLower means every block
// strictly above the block diagonal is zero, kUpper the reverse.
enum class Orientation { kLower, kUpper };

inline const char* to_string(Orientation o) {
  return o == Orientation::kLower ? "lower" : "upper";
}

// Dense real matrix, row-major. Entries are validated to be finite at
// construction; dimensions are fixed for the lifetime of the object.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    check_finite();
  }

  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    cols_ = rows.begin()->size();
    if (cols_ == 0) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite();
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty() || rows.front().empty()) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) {
        throw std::invalid_argument("Matrix: ragged rows");
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    m.check_finite();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  void check_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("Matrix: non-finite entry");
      }
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A declared partition of a (block_size * block_count)-dimensional square
// matrix into block_count x block_count blocks of size block_size.
struct BlockPartition {
  std::size_t block_size = 1;   // m
  std::size_t block_count = 1;  // n
  Orientation orientation = Orientation::kLower;

  std::size_t dimension() const { return block_size * block_count; }
};

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("Matrix product: dimension mismatch");
  }
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("Matrix-vector product: dimension mismatch");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Matrix sum: dimension mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Matrix difference: dimension mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

inline Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  }
  return c;
}

inline double inf_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::fabs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

inline double inf_norm(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::fabs(x));
  return best;
}

inline double max_abs_entry(const Matrix& a) {
  double best = 0.0;
  for (double x : a.data()) best = std::max(best, std::fabs(x));
  return best;
}

inline double min_entry(const Vector& v) {
  double best = v.empty() ? 0.0 : v.front();
  for (double x : v) best = std::min(best, x);
  return best;
}

inline double min_entry(const Matrix& a) {
  double best = a.data().empty() ? 0.0 : a.data().front();
  for (double x : a.data()) best = std::min(best, x);
  return best;
}

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double two_norm(const Vector& v) { return std::sqrt(dot(v, v)); }

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Vector sum: length mismatch");
  }
  Vector c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
  return c;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Vector difference: length mismatch");
  }
  Vector c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
  return c;
}

inline Vector operator*(double s, const Vector& a) {
  Vector c = a;
  for (double& x : c) x *= s;
  return c;
}

inline Vector ones(std::size_t n) { return Vector(n, 1.0); }

}  // namespace lcpk
