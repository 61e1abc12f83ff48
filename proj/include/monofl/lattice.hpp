#pragma once

#include <optional>
#include <vector>

#include "monofl/matrix.hpp"

namespace monofl {

// D = U * A * V with U, V unimodular, D diagonal, d_1 | d_2 | ... | d_k >= 0.
struct SnfResult {
  IntMatrix U, D, V;

  std::vector<Int> invariant_factors() const {
    std::vector<Int> out;
    long k = std::min(D.rows(), D.cols());
    for (long i = 0; i < k; ++i)
      if (D.at(i, i) != 0) out.push_back(D.at(i, i));
    return out;
  }

  long rank() const { return static_cast<long>(invariant_factors().size()); }
};

namespace detail {

inline void row_swap(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void col_swap(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[dst] -= q * row[src]
inline void row_axpy(IntMatrix& m, long dst, long src, const Int& q) {
  if (q == 0) return;
  for (long j = 0; j < m.cols(); ++j) m.at(dst, j) -= q * m.at(src, j);
}

inline void col_axpy(IntMatrix& m, long dst, long src, const Int& q) {
  if (q == 0) return;
  for (long i = 0; i < m.rows(); ++i) m.at(i, dst) -= q * m.at(i, src);
}

inline void row_negate(IntMatrix& m, long r) {
  for (long j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace detail

// Pivot selection: globally smallest nonzero absolute value in the remaining
// submatrix. Each re-selection strictly shrinks the pivot, so the Euclid
// rounds terminate; the divisibility sweep guarantees d_t | d_{t+1}.
inline SnfResult smith_normal_form(const IntMatrix& A) {
  using namespace detail;
  long m = A.rows(), n = A.cols();
  SnfResult res{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix& D = res.D;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;

  long bound = std::min(m, n);
  for (long t = 0; t < bound; ++t) {
    for (;;) {
      long pi = -1, pj = -1;
      Int best = 0;
      for (long i = t; i < m; ++i)
        for (long j = t; j < n; ++j) {
          if (D.at(i, j) == 0) continue;
          Int v = abs(D.at(i, j));
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) return res;  // remaining submatrix is zero

      row_swap(D, t, pi);
      row_swap(U, t, pi);
      col_swap(D, t, pj);
      col_swap(V, t, pj);

      bool dirty = false;
      for (long i = t + 1; i < m; ++i) {
        if (D.at(i, t) == 0) continue;
        Int q = D.at(i, t) / D.at(t, t);
        row_axpy(D, i, t, q);
        row_axpy(U, i, t, q);
        if (D.at(i, t) != 0) dirty = true;
      }
      for (long j = t + 1; j < n; ++j) {
        if (D.at(t, j) == 0) continue;
        Int q = D.at(t, j) / D.at(t, t);
        col_axpy(D, j, t, q);
        col_axpy(V, j, t, q);
        if (D.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      long vi = -1, vj = -1;
      for (long i = t + 1; i < m && vi < 0; ++i)
        for (long j = t + 1; j < n; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            vi = i;
            vj = j;
            break;
          }
      if (vi >= 0) {
        // Pull the offending row up; the next Euclid round shrinks the pivot.
        row_axpy(D, t, vi, Int(-1));
        row_axpy(U, t, vi, Int(-1));
        continue;
      }
      break;
    }
    if (D.at(t, t) < 0) {
      row_negate(D, t);
      row_negate(U, t);
    }
  }
  return res;
}

// Basis (as vectors) of the saturated lattice {v in Z^n : A v = 0}. The
// columns of V past the rank form the basis directly; unimodularity of V
// makes it primitive. Signs are normalized so the first nonzero entry is > 0.
inline std::vector<std::vector<Int>> kernel_lattice(const IntMatrix& A) {
  SnfResult snf = smith_normal_form(A);
  long rank = snf.rank();
  std::vector<std::vector<Int>> basis;
  for (long j = rank; j < A.cols(); ++j) {
    std::vector<Int> v = snf.V.col(j);
    for (const Int& e : v) {
      if (e == 0) continue;
      if (e < 0)
        for (Int& x : v) x = -x;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some integral solution of A x = b, if one exists.
inline std::optional<std::vector<Int>> integer_solve(const IntMatrix& A,
                                                     const std::vector<Int>& b) {
  if (static_cast<long>(b.size()) != A.rows())
    fail(ErrorKind::dimension, "integer_solve rhs length mismatch");
  SnfResult snf = smith_normal_form(A);
  std::vector<Int> ub = snf.U.apply(b);
  long rank = snf.rank();
  std::vector<Int> w(static_cast<size_t>(A.cols()));
  for (long i = 0; i < A.rows(); ++i) {
    if (i < rank) {
      const Int& d = snf.D.at(i, i);
      if (ub[static_cast<size_t>(i)] % d != 0) return std::nullopt;
      if (i < A.cols()) w[static_cast<size_t>(i)] = ub[static_cast<size_t>(i)] / d;
    } else if (ub[static_cast<size_t>(i)] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(w);
}

// A full-row-rank integer matrix spans a saturated (primitive) sublattice
// exactly when all its invariant factors are 1.
inline bool is_saturated_lattice(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return true;
  IntMatrix m = IntMatrix::from_rows(rows);
  SnfResult snf = smith_normal_form(m);
  if (snf.rank() != m.rows()) return false;
  for (const Int& d : snf.invariant_factors())
    if (d != 1) return false;
  return true;
}

}  // namespace monofl
