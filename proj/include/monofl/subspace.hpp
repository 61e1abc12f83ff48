#pragma once

#include <vector>

#include "monofl/matrix.hpp"

namespace monofl {

// Linear subspace of Q^n held in reduced row echelon form. RREF is a
// canonical form, so equality of subspaces is plain field comparison.
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace zero(long ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = RatMatrix(0, ambient);
    return s;
  }

  static Subspace full(long ambient) { return from_rows(RatMatrix::identity(ambient)); }

  // Span of the rows; the rows need not be independent.
  static Subspace from_rows(const RatMatrix& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    RatMatrix m = rows;
    std::vector<long> pivots = m.rref();
    s.basis_ = RatMatrix(static_cast<long>(pivots.size()), rows.cols());
    for (long i = 0; i < s.basis_.rows(); ++i)
      for (long j = 0; j < rows.cols(); ++j) s.basis_.at(i, j) = m.at(i, j);
    return s;
  }

  static Subspace span_of(const std::vector<std::vector<Rational>>& vectors, long ambient) {
    if (vectors.empty()) return zero(ambient);
    return from_rows(RatMatrix::from_rows(vectors));
  }

  long ambient() const { return ambient_; }
  long dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  // Strict weak order so subspaces can key ordered containers.
  bool operator<(const Subspace& o) const {
    if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
    if (dim() != o.dim()) return dim() < o.dim();
    for (long i = 0; i < dim(); ++i)
      for (long j = 0; j < ambient_; ++j) {
        if (basis_.at(i, j) != o.basis_.at(i, j)) return basis_.at(i, j) < o.basis_.at(i, j);
      }
    return false;
  }

  bool contains(const std::vector<Rational>& v) const {
    if (static_cast<long>(v.size()) != ambient_)
      fail(ErrorKind::dimension, "vector/subspace ambient mismatch");
    std::vector<Rational> r = v;
    // Reduce against the RREF basis; membership iff the residue vanishes.
    for (long i = 0; i < basis_.rows(); ++i) {
      long pivot = -1;
      for (long j = 0; j < ambient_; ++j)
        if (basis_.at(i, j) != 0) { pivot = j; break; }
      if (pivot < 0) continue;
      Rational c = r[static_cast<size_t>(pivot)];
      if (c == 0) continue;
      for (long j = 0; j < ambient_; ++j) r[static_cast<size_t>(j)] -= c * basis_.at(i, j);
    }
    for (const Rational& x : r)
      if (x != 0) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    check_ambient(o);
    for (long i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    check_ambient(o);
    return from_rows(RatMatrix::vstack(basis_, o.basis_));
  }

  Subspace intersect(const Subspace& o) const {
    check_ambient(o);
    if (is_zero() || o.is_zero()) return zero(ambient_);
    // Solve a * basis = b * o.basis: null vectors of [basis^T | -o.basis^T].
    RatMatrix stacked = RatMatrix::hstack(basis_.transpose(), o.basis_.transpose().scaled(-1));
    RatMatrix null_rows = stacked.nullspace_rows();
    RatMatrix vectors(null_rows.rows(), ambient_);
    for (long r = 0; r < null_rows.rows(); ++r)
      for (long i = 0; i < dim(); ++i)
        for (long j = 0; j < ambient_; ++j)
          vectors.at(r, j) += null_rows.at(r, i) * basis_.at(i, j);
    return from_rows(vectors);
  }

  // {M v : v in this}, where M maps ambient() -> M.rows() column vectors.
  Subspace image_under(const RatMatrix& m) const {
    if (m.cols() != ambient_) fail(ErrorKind::dimension, "image map shape mismatch");
    return from_rows(basis_ * m.transpose());
  }

  // {v : M v in this}, where M maps M.cols() -> ambient().
  Subspace preimage_under(const RatMatrix& m) const {
    if (m.rows() != ambient_) fail(ErrorKind::dimension, "preimage map shape mismatch");
    RatMatrix eq = equations();
    if (eq.rows() == 0) return full(m.cols());
    return from_rows((eq * m).nullspace_rows());
  }

  // Rows E with this = {v : E v = 0}; the annihilator of the row span.
  RatMatrix equations() const { return basis_.nullspace_rows(); }

  // Canonical matrix of Q^n ->> Q^n/this built from the RREF pivots: reduce
  // against the basis, then read off the non-pivot coordinates.
  RatMatrix quotient_map() const {
    std::vector<long> pivot_of_row(static_cast<size_t>(dim()), -1);
    std::vector<bool> is_pivot(static_cast<size_t>(ambient_), false);
    for (long i = 0; i < dim(); ++i)
      for (long j = 0; j < ambient_; ++j)
        if (basis_.at(i, j) != 0) {
          pivot_of_row[static_cast<size_t>(i)] = j;
          is_pivot[static_cast<size_t>(j)] = true;
          break;
        }
    RatMatrix reduce = RatMatrix::identity(ambient_);
    for (long i = 0; i < dim(); ++i) {
      long p = pivot_of_row[static_cast<size_t>(i)];
      for (long j = 0; j < ambient_; ++j) reduce.at(p, j) = 0;  // will re-add below
      // v -> v - v_p * basis_row_i, expressed on columns of the identity.
      for (long j = 0; j < ambient_; ++j)
        if (j != p) reduce.at(j, p) -= basis_.at(i, j);
    }
    // Rows of the projection: non-pivot coordinates of the reduced vector.
    long q = ambient_ - dim();
    RatMatrix proj(q, ambient_);
    long row = 0;
    for (long j = 0; j < ambient_; ++j) {
      if (is_pivot[static_cast<size_t>(j)]) continue;
      for (long k = 0; k < ambient_; ++k) proj.at(row, k) = reduce.at(j, k);
      ++row;
    }
    return proj;
  }

  std::vector<long> pivot_columns() const {
    std::vector<long> out;
    for (long i = 0; i < dim(); ++i)
      for (long j = 0; j < ambient_; ++j)
        if (basis_.at(i, j) != 0) {
          out.push_back(j);
          break;
        }
    return out;
  }

  // Coordinates in the canonical basis. Because the basis is in RREF, the
  // coordinate along row i is just the entry of v at that row's pivot.
  std::vector<Rational> coords(const std::vector<Rational>& v) const {
    if (!contains(v)) fail(ErrorKind::invalid_input, "coords of a vector outside the subspace");
    std::vector<Rational> out;
    for (long p : pivot_columns()) out.push_back(v[static_cast<size_t>(p)]);
    return out;
  }

  // Section of quotient_map(): unit vectors at the non-pivot coordinates.
  RatMatrix quotient_section() const {
    std::vector<bool> is_pivot(static_cast<size_t>(ambient_), false);
    for (long i = 0; i < dim(); ++i)
      for (long j = 0; j < ambient_; ++j)
        if (basis_.at(i, j) != 0) {
          is_pivot[static_cast<size_t>(j)] = true;
          break;
        }
    RatMatrix sec(ambient_, ambient_ - dim());
    long col = 0;
    for (long j = 0; j < ambient_; ++j) {
      if (is_pivot[static_cast<size_t>(j)]) continue;
      sec.at(j, col) = 1;
      ++col;
    }
    return sec;
  }

 private:
  void check_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_) fail(ErrorKind::dimension, "subspace ambient mismatch");
  }

  long ambient_;
  RatMatrix basis_;
};

inline long quotient_dim(const Subspace& s, const Subspace& t) {
  if (!s.contains(t)) fail(ErrorKind::invalid_input, "quotient_dim: not a subspace pair");
  return s.dim() - t.dim();
}

// S + T sitting block-diagonally inside Q^{m+n}.
inline Subspace block_sum(const Subspace& s, const Subspace& t) {
  RatMatrix rows(s.dim() + t.dim(), s.ambient() + t.ambient());
  for (long i = 0; i < s.dim(); ++i)
    for (long j = 0; j < s.ambient(); ++j) rows.at(i, j) = s.basis().at(i, j);
  for (long i = 0; i < t.dim(); ++i)
    for (long j = 0; j < t.ambient(); ++j)
      rows.at(s.dim() + i, s.ambient() + j) = t.basis().at(i, j);
  return Subspace::from_rows(rows);
}

// Matrix of m: src -> dst in the canonical bases; errors unless m(src) lands
// inside dst.
inline RatMatrix restrict_map(const RatMatrix& m, const Subspace& src, const Subspace& dst) {
  if (m.cols() != src.ambient() || m.rows() != dst.ambient())
    fail(ErrorKind::dimension, "restrict_map shape mismatch");
  RatMatrix out(dst.dim(), src.dim());
  for (long j = 0; j < src.dim(); ++j) {
    std::vector<Rational> c = dst.coords(m.apply(src.basis().row(j)));
    for (long i = 0; i < dst.dim(); ++i) out.at(i, j) = c[static_cast<size_t>(i)];
  }
  return out;
}

}  // namespace monofl
