#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schober/error.hpp"
#include "schober/rational.hpp"

namespace schober {

/// Dense row-major matrix over the rationals. Every linear map in the library
/// (u_i, v_i, monodromies, window equivalences, ...) is one of these.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(std::span<const Rational> entries) {
    return Matrix(entries.size(), 1, std::vector<Rational>(entries.begin(), entries.end()));
  }
  static Matrix row(std::span<const Rational> entries) {
    return Matrix(1, entries.size(), std::vector<Rational>(entries.begin(), entries.end()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Rational> entries() const noexcept { return data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }
  bool is_identity() const { return is_square() && *this == identity(rows_); }
  bool is_integral() const {
    for (const auto& x : data_)
      if (!schober::is_integer(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "+");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "-");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.data_) x = -x;
    return s;
  }
  friend Matrix operator*(const Rational& k, const Matrix& a) {
    Matrix s = a;
    for (auto& x : s.data_) x *= k;
    return s;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::DimensionMismatch, "cannot multiply " + a.shape() + " by " + b.shape());
    }
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    }
    return p;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  static void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error(ErrorCode::DimensionMismatch, std::string("shapes differ for ") + op + ": " + a.shape() +
                                                    " vs " + b.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column counts differ");
  Matrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, c) = b(r, c);
  return m;
}

namespace detail {

// Gauss-Jordan elimination of [a | b] in place. Returns the pivot columns of a.
inline std::vector<std::size_t> gauss_jordan(Matrix& a, Matrix& b) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(pivot, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(row, c), b(pivot, c));
    }
    Rational inv = 1 / a(row, col);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t c = 0; c < b.cols(); ++c) b(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

struct RankInverseSolve {
  std::size_t rank = 0;
  std::optional<Matrix> inverse;   // present iff square and nonsingular
  std::optional<Matrix> solution;  // present iff a right-hand side was given and the system is consistent
};

/// Exact rank, inverse and (optionally) a particular solution of m * x = rhs.
inline RankInverseSolve mat_rank_inverse_solve(const Matrix& m, const std::optional<Matrix>& rhs = std::nullopt) {
  if (rhs && rhs->rows() != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "rhs has " + std::to_string(rhs->rows()) + " rows, matrix has " +
                                                  std::to_string(m.rows()));
  }
  RankInverseSolve out;
  {
    Matrix a = m;
    Matrix b = m.is_square() ? Matrix::identity(m.rows()) : Matrix(m.rows(), 0);
    auto pivots = detail::gauss_jordan(a, b);
    out.rank = pivots.size();
    if (m.is_square() && out.rank == m.rows()) out.inverse = std::move(b);
  }
  if (rhs) {
    Matrix a = m;
    Matrix b = *rhs;
    auto pivots = detail::gauss_jordan(a, b);
    bool consistent = true;
    for (std::size_t r = pivots.size(); r < a.rows() && consistent; ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (b(r, c) != 0) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) {
      Matrix x(m.cols(), b.cols());
      for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[i], c) = b(i, c);
      out.solution = std::move(x);
    }
  }
  return out;
}

inline std::size_t rank(const Matrix& m) { return mat_rank_inverse_solve(m).rank; }

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// Inverse, or Singular when there is none.
inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::Singular, "non-square matrix " + m.shape() + " has no inverse");
  auto r = mat_rank_inverse_solve(m);
  if (!r.inverse) throw Error(ErrorCode::Singular, "matrix of rank " + std::to_string(r.rank) + " is singular");
  return std::move(*r.inverse);
}

inline Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  Matrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

/// m^k for any integer k; negative powers need m invertible.
inline Matrix power(const Matrix& m, long long k) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "power of non-square matrix");
  Matrix base = k < 0 ? inverse(m) : m;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Matrix result = Matrix::identity(m.rows());
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

/// Coefficients c_0..c_n of det(x I - m), lowest degree first (Faddeev-LeVerrier).
inline std::vector<Rational> characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk = Matrix::zero(n, n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    Matrix amk = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / Rational(static_cast<long long>(k));
  }
  return c;
}

inline std::string to_string(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += ",";
    s += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ",";
      s += to_string(m(r, c));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace schober
