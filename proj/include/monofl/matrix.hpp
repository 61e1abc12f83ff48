#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "monofl/rational.hpp"

namespace monofl {

// Dense matrix over Q, row-major. Rows/cols may be zero; all shape errors are
// hard contract violations.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) fail(ErrorKind::dimension, "negative matrix shape");
  }

  static RatMatrix identity(long n) {
    RatMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
    RatMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
      if (static_cast<long>(rows[static_cast<size_t>(i)].size()) != c)
        fail(ErrorKind::dimension, "ragged matrix rows");
      for (long j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Rational& at(long i, long j) { return a_[idx(i, j)]; }
  const Rational& at(long i, long j) const { return a_[idx(i, j)]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q == 0; });
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix operator+(const RatMatrix& o) const {
    check_same_shape(o, "add");
    RatMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
  }

  RatMatrix operator-(const RatMatrix& o) const {
    check_same_shape(o, "subtract");
    RatMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::dimension, "matrix product shape mismatch");
    RatMatrix m(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        const Rational& lhs = at(i, k);
        if (lhs == 0) continue;
        for (long j = 0; j < o.cols_; ++j) {
          const Rational& rhs = o.at(k, j);
          if (rhs != 0) m.at(i, j) += lhs * rhs;
        }
      }
    return m;
  }

  RatMatrix scaled(const Rational& c) const {
    RatMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
    return m;
  }

  RatMatrix transpose() const {
    RatMatrix m(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  std::vector<Rational> row(long i) const {
    std::vector<Rational> out(static_cast<size_t>(cols_));
    for (long j = 0; j < cols_; ++j) out[static_cast<size_t>(j)] = at(i, j);
    return out;
  }

  std::vector<Rational> col(long j) const {
    std::vector<Rational> out(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i) out[static_cast<size_t>(i)] = at(i, j);
    return out;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (static_cast<long>(v.size()) != cols_)
      fail(ErrorKind::dimension, "matrix apply shape mismatch");
    std::vector<Rational> out(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i) {
      Rational acc = 0;
      for (long j = 0; j < cols_; ++j) acc += at(i, j) * v[static_cast<size_t>(j)];
      out[static_cast<size_t>(i)] = acc;
    }
    return out;
  }

  static RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom) {
    if (top.cols_ != bottom.cols_ && top.rows_ != 0 && bottom.rows_ != 0)
      fail(ErrorKind::dimension, "vstack width mismatch");
    long cols = top.rows_ == 0 ? bottom.cols_ : top.cols_;
    RatMatrix m(top.rows_ + bottom.rows_, cols);
    for (long i = 0; i < top.rows_; ++i)
      for (long j = 0; j < cols; ++j) m.at(i, j) = top.at(i, j);
    for (long i = 0; i < bottom.rows_; ++i)
      for (long j = 0; j < cols; ++j) m.at(top.rows_ + i, j) = bottom.at(i, j);
    return m;
  }

  static RatMatrix hstack(const RatMatrix& left, const RatMatrix& right) {
    if (left.rows_ != right.rows_) fail(ErrorKind::dimension, "hstack height mismatch");
    RatMatrix m(left.rows_, left.cols_ + right.cols_);
    for (long i = 0; i < left.rows_; ++i) {
      for (long j = 0; j < left.cols_; ++j) m.at(i, j) = left.at(i, j);
      for (long j = 0; j < right.cols_; ++j) m.at(i, left.cols_ + j) = right.at(i, j);
    }
    return m;
  }

  static RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (long i = 0; i < a.rows_; ++i)
      for (long j = 0; j < a.cols_; ++j) {
        if (a.at(i, j) == 0) continue;
        for (long k = 0; k < b.rows_; ++k)
          for (long l = 0; l < b.cols_; ++l)
            m.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
      }
    return m;
  }

  // In-place Gauss-Jordan. Returns pivot column of each nonzero row; rows are
  // left in reduced echelon form with zero rows at the bottom.
  std::vector<long> rref() {
    std::vector<long> pivots;
    long pivot_row = 0;
    for (long col = 0; col < cols_ && pivot_row < rows_; ++col) {
      long sel = -1;
      for (long i = pivot_row; i < rows_; ++i)
        if (at(i, col) != 0) { sel = i; break; }
      if (sel < 0) continue;
      swap_rows(sel, pivot_row);
      Rational inv = Rational(1) / at(pivot_row, col);
      for (long j = col; j < cols_; ++j) at(pivot_row, j) *= inv;
      for (long i = 0; i < rows_; ++i) {
        if (i == pivot_row) continue;
        Rational factor = at(i, col);
        if (factor == 0) continue;
        for (long j = col; j < cols_; ++j) at(i, j) -= factor * at(pivot_row, j);
      }
      pivots.push_back(col);
      ++pivot_row;
    }
    return pivots;
  }

  long rank() const {
    RatMatrix tmp = *this;
    return static_cast<long>(tmp.rref().size());
  }

  Rational det() const {
    if (rows_ != cols_) fail(ErrorKind::dimension, "determinant of non-square matrix");
    RatMatrix tmp = *this;
    Rational result = 1;
    for (long col = 0; col < cols_; ++col) {
      long sel = -1;
      for (long i = col; i < rows_; ++i)
        if (tmp.at(i, col) != 0) { sel = i; break; }
      if (sel < 0) return 0;
      if (sel != col) {
        tmp.swap_rows(sel, col);
        result = -result;
      }
      result *= tmp.at(col, col);
      Rational inv = Rational(1) / tmp.at(col, col);
      for (long i = col + 1; i < rows_; ++i) {
        Rational factor = tmp.at(i, col) * inv;
        if (factor == 0) continue;
        for (long j = col; j < cols_; ++j) tmp.at(i, j) -= factor * tmp.at(col, j);
      }
    }
    return result;
  }

  // Particular solution of A x = b, if any.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
    if (static_cast<long>(b.size()) != rows_)
      fail(ErrorKind::dimension, "solve rhs length mismatch");
    RatMatrix aug(rows_, cols_ + 1);
    for (long i = 0; i < rows_; ++i) {
      for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[static_cast<size_t>(i)];
    }
    std::vector<long> pivots = aug.rref();
    for (long p : pivots)
      if (p == cols_) return std::nullopt;  // row (0 .. 0 | 1): inconsistent
    std::vector<Rational> x(static_cast<size_t>(cols_));
    for (size_t r = 0; r < pivots.size(); ++r)
      x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<long>(r), cols_);
    return x;
  }

  // Basis of {v : A v = 0} as rows, in the canonical free-variable order.
  RatMatrix nullspace_rows() const {
    RatMatrix tmp = *this;
    std::vector<long> pivots = tmp.rref();
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (long p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    long free_count = cols_ - static_cast<long>(pivots.size());
    RatMatrix basis(free_count, cols_);
    long row = 0;
    for (long j = 0; j < cols_; ++j) {
      if (is_pivot[static_cast<size_t>(j)]) continue;
      basis.at(row, j) = 1;
      for (size_t r = 0; r < pivots.size(); ++r)
        basis.at(row, pivots[r]) = -tmp.at(static_cast<long>(r), j);
      ++row;
    }
    return basis;
  }

 private:
  size_t idx(long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      fail(ErrorKind::dimension, "matrix index out of range");
    return static_cast<size_t>(i * cols_ + j);
  }

  void swap_rows(long a, long b) {
    if (a == b) return;
    for (long j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  void check_same_shape(const RatMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      fail(ErrorKind::dimension, std::string("matrix ") + op + " shape mismatch");
  }

  long rows_, cols_;
  std::vector<Rational> a_;
};

inline RatMatrix mat_pow(const RatMatrix& m, long k) {
  if (m.rows() != m.cols()) fail(ErrorKind::dimension, "mat_pow needs a square matrix");
  if (k < 0) fail(ErrorKind::invalid_input, "mat_pow needs a nonnegative exponent");
  RatMatrix out = RatMatrix::identity(m.rows());
  for (long i = 0; i < k; ++i) out = out * m;
  return out;
}

inline bool is_nilpotent(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::dimension, "nilpotency needs a square matrix");
  return mat_pow(m, m.rows()) == RatMatrix(m.rows(), m.rows());
}

// Dense matrix over Z; the integer side only needs the operations the Smith
// form and lattice code use.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) fail(ErrorKind::dimension, "negative matrix shape");
  }

  static IntMatrix identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
      if (static_cast<long>(rows[static_cast<size_t>(i)].size()) != c)
        fail(ErrorKind::dimension, "ragged matrix rows");
      for (long j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& at(long i, long j) { return a_[idx(i, j)]; }
  const Int& at(long i, long j) const { return a_[idx(i, j)]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::dimension, "matrix product shape mismatch");
    IntMatrix m(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        const Int& lhs = at(i, k);
        if (lhs == 0) continue;
        for (long j = 0; j < o.cols_; ++j) {
          const Int& rhs = o.at(k, j);
          if (rhs != 0) m.at(i, j) += lhs * rhs;
        }
      }
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix m(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  std::vector<Int> col(long j) const {
    std::vector<Int> out(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i) out[static_cast<size_t>(i)] = at(i, j);
    return out;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (static_cast<long>(v.size()) != cols_)
      fail(ErrorKind::dimension, "matrix apply shape mismatch");
    std::vector<Int> out(static_cast<size_t>(rows_));
    for (long i = 0; i < rows_; ++i) {
      Int acc = 0;
      for (long j = 0; j < cols_; ++j) acc += at(i, j) * v[static_cast<size_t>(j)];
      out[static_cast<size_t>(i)] = acc;
    }
    return out;
  }

  RatMatrix to_rational() const {
    RatMatrix m(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) m.at(i, j) = Rational(at(i, j));
    return m;
  }

  // Bareiss fraction-free elimination; exact and division-free in spirit.
  Int det() const {
    if (rows_ != cols_) fail(ErrorKind::dimension, "determinant of non-square matrix");
    if (rows_ == 0) return 1;
    IntMatrix tmp = *this;
    Int prev = 1;
    Int sign = 1;
    for (long k = 0; k < rows_ - 1; ++k) {
      if (tmp.at(k, k) == 0) {
        long sel = -1;
        for (long i = k + 1; i < rows_; ++i)
          if (tmp.at(i, k) != 0) { sel = i; break; }
        if (sel < 0) return 0;
        for (long j = 0; j < cols_; ++j) std::swap(tmp.at(k, j), tmp.at(sel, j));
        sign = -sign;
      }
      for (long i = k + 1; i < rows_; ++i)
        for (long j = k + 1; j < cols_; ++j) {
          Int val = tmp.at(i, j) * tmp.at(k, k) - tmp.at(i, k) * tmp.at(k, j);
          tmp.at(i, j) = val / prev;
        }
      prev = tmp.at(k, k);
    }
    return sign * tmp.at(rows_ - 1, rows_ - 1);
  }

  long rank() const { return to_rational().rank(); }

 private:
  size_t idx(long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      fail(ErrorKind::dimension, "matrix index out of range");
    return static_cast<size_t>(i * cols_ + j);
  }

  long rows_, cols_;
  std::vector<Int> a_;
};

}  // namespace monofl
