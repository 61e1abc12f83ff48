#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monofl/error.hpp"
#include "monofl/filtration.hpp"
#include "monofl/matrix.hpp"
#include "monofl/report.hpp"
#include "monofl/subspace.hpp"

namespace monofl {

// Weight filtration of a nilpotent endomorphism, centered at `center`.
// W_k = sum over j >= max(k - center, 0) of ker N^{j+1} /\ im N^{j-(k-center)}.
inline Filtration monodromy_filtration(const RatMatrix& n, long center) {
  if (n.rows() != n.cols())
    fail(ErrorKind::dimension, "monodromy filtration needs a square matrix");
  if (!is_nilpotent(n))
    fail(ErrorKind::domain, "monodromy filtration needs a nilpotent map");
  long dim = n.rows();
  std::vector<Subspace> ker, im;
  for (long p = 0; p <= dim + 1; ++p) {
    RatMatrix np = mat_pow(n, p);
    ker.push_back(Subspace::from_rows(np.nullspace_rows()));
    im.push_back(Subspace::from_rows(np.transpose()));
  }
  std::map<long, Subspace> values;
  for (long k = -dim; k <= dim; ++k) {
    Subspace wk = Subspace::zero(dim);
    for (long j = std::max(k, 0L); j <= dim; ++j)
      wk = wk.sum(ker[j + 1].intersect(im[std::min(j - k, dim + 1)]));
    values[k + center] = wk;
  }
  return Filtration::from_jumps(dim, values);
}

struct RmfResult {
  bool exists = false;
  Filtration w = Filtration::from_jumps(0, {});
  std::string reason;
};

namespace detail {

// Rows of `inner` rewritten in the canonical coordinates of `outer`.
inline Subspace subspace_in_coords(const Subspace& inner, const Subspace& outer) {
  std::vector<std::vector<Rational>> rows;
  for (long i = 0; i < inner.dim(); ++i)
    rows.push_back(outer.coords(inner.basis().row(i)));
  return Subspace::span_of(rows, outer.dim());
}

}  // namespace detail

// Checks the two defining properties of a relative monodromy filtration:
// N shifts W by -2, and N^j induces gr^W_{c+jump+j} gr^L ~ gr^W_{c+jump-j} gr^L
// on every L graded piece.
inline Report verify_rmf(const RatMatrix& n, const Filtration& l, long center,
                         const Filtration& w) {
  Report rep("rmf");
  long dim = l.ambient();
  if (n.rows() != dim || n.cols() != dim || w.ambient() != dim)
    fail(ErrorKind::dimension, "rmf verification shape mismatch");

  for (long k : w.jump_indices()) {
    Subspace src = w.value_at(k);
    Subspace dst = w.value_at(k - 2);
    if (!dst.contains(src.image_under(n)))
      rep.fail_with("N does not shift W_" + std::to_string(k) + " into W_" +
                    std::to_string(k - 2));
  }
  if (!rep.passed) return rep;

  for (long j : l.jump_indices()) {
    Subspace big = l.value_at(j);
    Subspace small = l.value_at(j - 1);
    if (!big.contains(big.image_under(n))) {
      rep.fail_with("L_" + std::to_string(j) + " is not N-stable");
      continue;
    }
    RatMatrix n_sub = restrict_map(n, big, big);
    Filtration w_sub = w.induced_on_sub(big);
    Subspace inner = detail::subspace_in_coords(small, big);
    RatMatrix q = inner.quotient_map();
    RatMatrix sec = inner.quotient_section();
    RatMatrix n_gr = q * n_sub * sec;
    Filtration w_gr = w_sub.induced_on_quotient(inner);
    long c = j + center;
    // cover every induced jump, not just the piece's dimension; a stray jump
    // far from the center must meet a failing exponent
    long spread = big.dim() - small.dim();
    for (long k : w_gr.jump_indices()) spread = std::max(spread, k > c ? k - c : c - k);
    for (long p = 1; p <= spread; ++p) {
      Subspace a = w_gr.value_at(c + p);
      Subspace a_below = w_gr.value_at(c + p - 1);
      Subspace b = w_gr.value_at(c - p);
      Subspace b_below = w_gr.value_at(c - p - 1);
      long gr_hi = a.dim() - a_below.dim();
      long gr_lo = b.dim() - b_below.dim();
      std::string tag = "gr_L " + std::to_string(j) + ", N^" + std::to_string(p);
      if (gr_hi != gr_lo) {
        rep.fail_with(tag + ": graded dimensions " + std::to_string(gr_hi) +
                      " and " + std::to_string(gr_lo) + " differ");
        continue;
      }
      if (gr_hi == 0) continue;
      RatMatrix np = mat_pow(n_gr, p);
      if (!b.contains(a.image_under(np))) {
        rep.fail_with(tag + " does not land in the opposite weight step");
        continue;
      }
      Subspace b_inner = detail::subspace_in_coords(b_below, b);
      RatMatrix qb = b_inner.quotient_map();
      RatMatrix comp(qb.rows(), a.dim());
      for (long col = 0; col < a.dim(); ++col) {
        std::vector<Rational> img = qb.apply(b.coords(np.apply(a.basis().row(col))));
        for (long row = 0; row < qb.rows(); ++row) comp.at(row, col) = img[row];
      }
      if (comp.rank() != gr_hi)
        rep.fail_with(tag + " is not an isomorphism between the graded pieces");
    }
  }
  return rep;
}

namespace detail {

inline RmfResult rmf_recurse(const RatMatrix& n, const Filtration& l, long center) {
  long dim = l.ambient();
  const auto& jumps = l.jumps();
  if (jumps.size() <= 1) {
    long c = jumps.empty() ? center : jumps.rbegin()->first + center;
    return {true, monodromy_filtration(n, c), ""};
  }

  long top = jumps.rbegin()->first;
  long prev = std::next(jumps.rbegin())->first;
  Subspace sub = l.value_at(prev);
  RatMatrix iota = sub.basis().transpose();
  RatMatrix n_sub = restrict_map(n, sub, sub);
  Filtration l_sub = l.induced_on_sub(sub);

  RmfResult inner = rmf_recurse(n_sub, l_sub, center);
  if (!inner.exists)
    return {false, Filtration::from_jumps(0, {}),
            "L_" + std::to_string(prev) + " step: " + inner.reason};
  Filtration m_sub = inner.w;

  RatMatrix q = sub.quotient_map();
  RatMatrix sec = sub.quotient_section();
  RatMatrix n_bar = q * n * sec;
  Filtration m_bar = monodromy_filtration(n_bar, top + center);

  long nd = sub.dim();
  long nbar = dim - nd;

  // The section sec + iota*delta must conjugate N into the shape the weight
  // candidate needs: for every jump k of m_bar and v in its value,
  // (E + N'*delta - delta*Nbar) v must lie in M'_{k-2}.  Unknowns delta_{ab}.
  RatMatrix e_mat = n * sec - sec * n_bar;
  RatMatrix e_tilde(nd, nbar);
  for (long c2 = 0; c2 < nbar; ++c2) {
    std::vector<Rational> colv(dim);
    for (long r2 = 0; r2 < dim; ++r2) colv[r2] = e_mat.at(r2, c2);
    std::vector<Rational> tc = sub.coords(colv);
    for (long r2 = 0; r2 < nd; ++r2) e_tilde.at(r2, c2) = tc[r2];
  }

  std::vector<std::vector<Rational>> sys_rows;
  std::vector<Rational> sys_rhs;
  for (long k : m_bar.jump_indices()) {
    RatMatrix eqs = m_sub.value_at(k - 2).equations();
    Subspace vk = m_bar.value_at(k);
    for (long bi = 0; bi < vk.dim(); ++bi) {
      std::vector<Rational> v = vk.basis().row(bi);
      std::vector<Rational> u = n_bar.apply(v);
      std::vector<Rational> cst = e_tilde.apply(v);
      for (long er = 0; er < eqs.rows(); ++er) {
        std::vector<Rational> row(nd * nbar, Rational(0));
        Rational rhs(0);
        for (long a = 0; a < nd; ++a) rhs -= eqs.at(er, a) * cst[a];
        for (long ap = 0; ap < nd; ++ap) {
          Rational qn(0);
          for (long a = 0; a < nd; ++a) qn += eqs.at(er, a) * n_sub.at(a, ap);
          for (long b = 0; b < nbar; ++b) row[ap * nbar + b] += qn * v[b];
        }
        for (long b = 0; b < nbar; ++b)
          for (long a = 0; a < nd; ++a) row[a * nbar + b] -= eqs.at(er, a) * u[b];
        sys_rows.push_back(std::move(row));
        sys_rhs.push_back(rhs);
      }
    }
  }

  RatMatrix big = sys_rows.empty() ? RatMatrix(0, nd * nbar)
                                   : RatMatrix::from_rows(sys_rows);
  auto sol = big.solve(sys_rhs);
  if (!sol)
    return {false, Filtration::from_jumps(0, {}),
            "no section of gr^L_" + std::to_string(top) +
                " is compatible with the inner weights"};

  RatMatrix delta(nd, nbar);
  for (long a = 0; a < nd; ++a)
    for (long b = 0; b < nbar; ++b) delta.at(a, b) = (*sol)[a * nbar + b];
  RatMatrix s = sec + iota * delta;

  std::map<long, Subspace> values;
  auto candidate_indices = m_sub.jump_indices();
  for (long k : m_bar.jump_indices()) candidate_indices.push_back(k);
  for (long k : candidate_indices)
    values[k] =
        m_sub.value_at(k).image_under(iota).sum(m_bar.value_at(k).image_under(s));
  return {true, Filtration::from_jumps(dim, values), ""};
}

}  // namespace detail

// Relative monodromy filtration of N over the filtration l, centered at
// `center` on each gr^L_j (so the weights there are symmetric about
// j + center).  Returns a nonexistence witness instead of throwing when the
// defining conditions cannot be met.
inline RmfResult rmf(const RatMatrix& n, const Filtration& l, long center) {
  if (n.rows() != n.cols() || n.rows() != l.ambient())
    fail(ErrorKind::dimension, "rmf shape mismatch");
  if (!is_nilpotent(n)) fail(ErrorKind::domain, "rmf needs a nilpotent map");
  for (long j : l.jump_indices()) {
    Subspace lj = l.value_at(j);
    if (!lj.contains(lj.image_under(n)))
      fail(ErrorKind::domain, "rmf needs an N-stable filtration");
  }
  RmfResult res = detail::rmf_recurse(n, l, center);
  if (res.exists) {
    Report check = verify_rmf(n, l, center, res.w);
    if (!check.passed)
      fail(ErrorKind::domain, "rmf candidate failed its defining properties: " +
                                  check.failures.front());
  }
  return res;
}

}  // namespace monofl
