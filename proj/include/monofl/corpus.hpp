#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monofl/monodromic.hpp"
#include "monofl/rmf.hpp"
#include "monofl/rng.hpp"

namespace monofl::corpus {

// C[z] as a module over itself: M^chi = Q * z^{chi-1} for chi >= 1, z acts as
// the shift, d z^{k} = k z^{k-1}.  Window keeps chi in [1, 3]; everything
// above continues, everything below is zero.
inline MonodromicModule cz_model() {
  MonodromicModule m;
  m.r = 1;
  m.denom = 1;
  m.chi_min = Rational(1);
  m.low_flag = false;
  m.high_flag = true;
  for (long k = 0; k < 3; ++k)
    m.spaces.push_back({1, Filtration::single_jump(1, 0), Filtration::single_jump(1, 1)});
  RatMatrix one = RatMatrix::identity(1);
  RatMatrix two(1, 1);
  two.at(0, 0) = 2;
  m.zmaps = {{one, one}};
  m.dmaps = {{one, two}};
  return m;
}

// The delta module at the origin: M^chi = Q * d^{-chi} delta for chi <= 0,
// d acts as the shift, z d^{k} delta = -k d^{k-1} delta.  Window keeps chi in
// [-2, 0]; everything below continues, everything above is zero.
inline MonodromicModule delta_model() {
  MonodromicModule m;
  m.r = 1;
  m.denom = 1;
  m.chi_min = Rational(-2);
  m.low_flag = true;
  m.high_flag = false;
  for (long k = 0; k < 3; ++k) {
    long chi = -2 + k;
    m.spaces.push_back(
        {1, Filtration::single_jump(1, 1 - chi), Filtration::single_jump(1, 0)});
  }
  RatMatrix one = RatMatrix::identity(1);
  RatMatrix zlo(1, 1), zhi(1, 1);
  zlo.at(0, 0) = -2;
  zhi.at(0, 0) = -1;
  m.zmaps = {{zlo, zhi}};
  m.dmaps = {{one, one}};
  return m;
}

namespace detail {

struct BasisChange {
  RatMatrix p, pinv;
};

// Product of elementary integer row operations, so the inverse stays exact
// and the entries stay small.
inline BasisChange random_basis_change(Rng& rng, long n) {
  BasisChange bc{RatMatrix::identity(n), RatMatrix::identity(n)};
  if (n <= 1) return bc;
  for (long t = 0; t < 2 * n; ++t) {
    long i = rng.range(0, n - 1);
    long j = rng.range(0, n - 1);
    if (i == j) continue;
    Rational c(rng.nonzero(2));
    for (long k = 0; k < n; ++k) bc.p.at(i, k) += c * bc.p.at(j, k);
    for (long k = 0; k < n; ++k) bc.pinv.at(k, j) -= c * bc.pinv.at(k, i);
  }
  return bc;
}

// Strictly increasing chain of subspaces ending at the full space.
inline std::vector<Subspace> random_chain(Rng& rng, long dim) {
  BasisChange bc = random_basis_change(rng, dim);
  std::vector<Subspace> chain;
  long cut = 0;
  while (cut < dim) {
    cut += rng.range(1, dim - cut);
    std::vector<std::vector<Rational>> rows;
    for (long i = 0; i < cut; ++i) rows.push_back(bc.p.row(i));
    chain.push_back(Subspace::span_of(rows, dim));
  }
  return chain;
}

inline Filtration chain_filtration(const std::vector<Subspace>& chain, long offset,
                                   long dim) {
  std::map<long, Subspace> vals;
  for (size_t i = 0; i < chain.size(); ++i)
    vals[offset + 1 + static_cast<long>(i)] = chain[i];
  return Filtration::from_jumps(dim, vals);
}

// Hodge offsets along a window, bottom to top: each step up the offset drops
// by 0 or 1, which is exactly what z preserving F and d raising it by at most
// one allow for a fixed chain.
inline std::vector<long> random_offsets(Rng& rng, long count) {
  std::vector<long> a;
  long cur = rng.range(-2, 2);
  for (long k = 0; k < count; ++k) {
    a.push_back(cur);
    cur -= rng.range(0, 1);
  }
  return a;
}

inline Filtration conjugate_filtration(const Filtration& f, const RatMatrix& p) {
  std::map<long, Subspace> vals;
  for (const auto& [k, v] : f.jumps()) vals[k] = v.image_under(p);
  return Filtration::from_jumps(f.ambient(), vals);
}

// Random change of basis on every level; maps and filtrations move together,
// so validity is preserved while the matrices stop looking diagonal.
inline void conjugate_levels(Rng& rng, MonodromicModule& m) {
  long K = m.levels();
  std::vector<BasisChange> bc;
  for (long k = 0; k < K; ++k) bc.push_back(random_basis_change(rng, m.dim_at(k)));
  for (int i = 0; i < m.r; ++i)
    for (long j = 0; j < m.edges(); ++j) {
      auto& z = m.zmaps[static_cast<size_t>(i)][static_cast<size_t>(j)];
      auto& d = m.dmaps[static_cast<size_t>(i)][static_cast<size_t>(j)];
      z = bc[static_cast<size_t>(j + m.denom)].p * z * bc[static_cast<size_t>(j)].pinv;
      d = bc[static_cast<size_t>(j)].p * d * bc[static_cast<size_t>(j + m.denom)].pinv;
    }
  for (long k = 0; k < K; ++k) {
    auto& sp = m.spaces[static_cast<size_t>(k)];
    sp.F = conjugate_filtration(sp.F, bc[static_cast<size_t>(k)].p);
    sp.W = conjugate_filtration(sp.W, bc[static_cast<size_t>(k)].p);
  }
}

inline Subspace tensor_sub(const Subspace& s, const Subspace& t) {
  return Subspace::from_rows(RatMatrix::kronecker(s.basis(), t.basis()));
}

inline Filtration conv_filtration(const Filtration& f, const Filtration& g) {
  long amb = f.ambient() * g.ambient();
  std::map<long, Subspace> vals;
  for (const auto& [p1, v1] : f.jumps())
    for (const auto& [p2, v2] : g.jumps()) {
      long p = p1 + p2;
      if (vals.count(p)) continue;
      Subspace acc = Subspace::zero(amb);
      for (const auto& [q1, w1] : f.jumps()) acc = acc.sum(tensor_sub(w1, g.value_at(p - q1)));
      vals[p] = acc;
    }
  return Filtration::from_jumps(amb, vals);
}

inline RatMatrix strictly_upper(Rng& rng, long dim) {
  RatMatrix n(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = i + 1; j < dim; ++j) n.at(i, j) = rng.range(-2, 2);
  return n;
}

}  // namespace detail

// Refine the eigenvalue grid by an integer factor, padding zero levels in
// between.  The module is unchanged; only the bookkeeping grid is finer.
inline MonodromicModule re_grid(const MonodromicModule& m, long factor) {
  if (factor <= 0) fail(ErrorKind::invalid_input, "re_grid factor must be positive");
  if (factor == 1) return m;
  MonodromicModule out;
  out.r = m.r;
  out.denom = m.denom * factor;
  out.chi_min = m.chi_min;
  out.low_flag = m.low_flag;
  out.high_flag = m.high_flag;
  long K = m.levels();
  long Kp = (K - 1) * factor + 1;
  for (long kp = 0; kp < Kp; ++kp) {
    if (kp % factor == 0)
      out.spaces.push_back(m.spaces[static_cast<size_t>(kp / factor)]);
    else
      out.spaces.push_back(FilteredSpace::zero());
  }
  out.zmaps.resize(static_cast<size_t>(m.r));
  out.dmaps.resize(static_cast<size_t>(m.r));
  for (int i = 0; i < m.r; ++i)
    for (long jp = 0; jp + out.denom <= Kp - 1; ++jp) {
      if (jp % factor == 0) {
        out.zmaps[static_cast<size_t>(i)].push_back(
            m.zmaps[static_cast<size_t>(i)][static_cast<size_t>(jp / factor)]);
        out.dmaps[static_cast<size_t>(i)].push_back(
            m.dmaps[static_cast<size_t>(i)][static_cast<size_t>(jp / factor)]);
      } else {
        out.zmaps[static_cast<size_t>(i)].push_back(RatMatrix(0, 0));
        out.dmaps[static_cast<size_t>(i)].push_back(RatMatrix(0, 0));
      }
    }
  return out;
}

// A C[z]-flavored block: z acts by isomorphisms, eigenvalues run up from 1,
// the window clips at [1, 1 + len] and the module continues above.
inline MonodromicModule random_cz_block(Rng& rng, long dim, long len) {
  MonodromicModule m;
  m.r = 1;
  m.denom = 1;
  m.chi_min = Rational(1);
  m.low_flag = false;
  m.high_flag = true;
  long K = len + 1;
  auto chain = detail::random_chain(rng, dim);
  auto offs = detail::random_offsets(rng, K);
  auto wf = detail::chain_filtration(detail::random_chain(rng, dim), rng.range(-1, 1), dim);
  for (long k = 0; k < K; ++k)
    m.spaces.push_back({dim, detail::chain_filtration(chain, offs[static_cast<size_t>(k)], dim), wf});
  m.zmaps.resize(1);
  m.dmaps.resize(1);
  for (long j = 0; j < K - 1; ++j) {
    m.zmaps[0].push_back(RatMatrix::identity(dim));
    m.dmaps[0].push_back(RatMatrix::identity(dim).scaled(Rational(j + 1)));
  }
  detail::conjugate_levels(rng, m);
  return m;
}

// A delta-flavored block: d acts by isomorphisms, eigenvalues run down from 0,
// the window clips at [-len, 0] and the module continues below.
inline MonodromicModule random_delta_block(Rng& rng, long dim, long len) {
  MonodromicModule m;
  m.r = 1;
  m.denom = 1;
  m.chi_min = Rational(-len);
  m.low_flag = true;
  m.high_flag = false;
  long K = len + 1;
  auto chain = detail::random_chain(rng, dim);
  auto offs = detail::random_offsets(rng, K);
  auto wf = detail::chain_filtration(detail::random_chain(rng, dim), rng.range(-1, 1), dim);
  for (long k = 0; k < K; ++k)
    m.spaces.push_back({dim, detail::chain_filtration(chain, offs[static_cast<size_t>(k)], dim), wf});
  m.zmaps.resize(1);
  m.dmaps.resize(1);
  for (long j = 0; j < K - 1; ++j) {
    m.zmaps[0].push_back(RatMatrix::identity(dim).scaled(Rational(-len + j)));
    m.dmaps[0].push_back(RatMatrix::identity(dim));
  }
  detail::conjugate_levels(rng, m);
  return m;
}

// A localization-flavored block supported on one coset c/e + Z with a
// unipotent twist: theta acts with nilpotent part n0 on every support level,
// both window ends continue.  Every loc block uses the window [-1, 1], so
// blocks with different cosets can share a module, and the integer grid
// points 0 and 1 are stored (with zero fibers when c != 0).
inline MonodromicModule random_loc_block(Rng& rng, long dim, long e, long c) {
  if (e < 1 || c < 0 || c >= e) fail(ErrorKind::invalid_input, "loc block coset out of range");
  MonodromicModule m;
  m.r = 1;
  m.denom = e;
  m.chi_min = Rational(-1);
  m.low_flag = true;
  m.high_flag = true;
  long K = 2 * e + 1;
  RatMatrix n0 = detail::strictly_upper(rng, dim);
  std::vector<Subspace> chain;
  for (long p = 1; p <= dim; ++p) {
    Subspace ker = Subspace::from_rows(mat_pow(n0, p).nullspace_rows());
    if (chain.empty() || ker != chain.back()) chain.push_back(ker);
    if (ker.is_full()) break;
  }
  Filtration wf = monodromy_filtration(n0, rng.range(-1, 1));
  auto offs = detail::random_offsets(rng, (K - 1 - c) / e + 1);
  long support_seen = 0;
  for (long k = 0; k < K; ++k) {
    if (k % e == c % e)
      m.spaces.push_back({dim,
                          detail::chain_filtration(
                              chain, offs[static_cast<size_t>(support_seen++)], dim),
                          wf});
    else
      m.spaces.push_back(FilteredSpace::zero());
  }
  m.zmaps.resize(1);
  m.dmaps.resize(1);
  for (long j = 0; j + e <= K - 1; ++j) {
    if (j % e == c % e) {
      Rational src_hi = m.chi_at(j + e);
      m.zmaps[0].push_back(RatMatrix::identity(dim));
      m.dmaps[0].push_back(RatMatrix::identity(dim).scaled(src_hi - 1) + n0);
    } else {
      m.zmaps[0].push_back(RatMatrix(0, 0));
      m.dmaps[0].push_back(RatMatrix(0, 0));
    }
  }
  detail::conjugate_levels(rng, m);
  return m;
}

// External product of two windows over disjoint variable sets.  Requires
// integral grids and matching orientation (both continue above or both
// continue below); those are the products whose windows stay finite.
inline MonodromicModule external_product(const MonodromicModule& a,
                                         const MonodromicModule& b) {
  if (a.denom != 1 || b.denom != 1 || !is_integer(a.chi_min) || !is_integer(b.chi_min))
    fail(ErrorKind::unsupported, "external product needs integral grids");
  if (a.low_flag != b.low_flag || a.high_flag != b.high_flag ||
      a.low_flag == a.high_flag)
    fail(ErrorKind::unsupported,
         "external product needs matching one-sided windows");
  long a_lo = to_long(numerator(a.chi_min)), a_hi = a_lo + a.levels() - 1;
  long b_lo = to_long(numerator(b.chi_min)), b_hi = b_lo + b.levels() - 1;
  long lo, hi;
  if (a.high_flag) {
    lo = a_lo + b_lo;
    hi = std::min(a_hi + b_lo, a_lo + b_hi);
  } else {
    lo = std::max(a_lo + b_hi, a_hi + b_lo);
    hi = a_hi + b_hi;
  }

  MonodromicModule out;
  out.r = a.r + b.r;
  out.denom = 1;
  out.chi_min = Rational(lo);
  out.low_flag = a.low_flag;
  out.high_flag = a.high_flag;
  long K = hi - lo + 1;

  struct Block {
    long ka, kb, off, adim, bdim;
  };
  std::vector<std::vector<Block>> blocks(static_cast<size_t>(K));
  for (long k = 0; k < K; ++k) {
    long chi = lo + k;
    long off = 0;
    for (long ka = 0; ka < a.levels(); ++ka) {
      long kb = chi - (a_lo + ka) - b_lo;
      if (kb < 0 || kb >= b.levels()) continue;
      long adim = a.dim_at(ka), bdim = b.dim_at(kb);
      blocks[static_cast<size_t>(k)].push_back({ka, kb, off, adim, bdim});
      off += adim * bdim;
    }
    Filtration f = Filtration::from_jumps(0, {});
    Filtration w = Filtration::from_jumps(0, {});
    for (const Block& bl : blocks[static_cast<size_t>(k)]) {
      const auto& sa = a.spaces[static_cast<size_t>(bl.ka)];
      const auto& sb = b.spaces[static_cast<size_t>(bl.kb)];
      f = block_sum(f, detail::conv_filtration(sa.F, sb.F));
      w = block_sum(w, detail::conv_filtration(sa.W, sb.W));
    }
    out.spaces.push_back({off, f, w});
  }

  auto find_block = [&](long k, long ka, long kb) -> const Block* {
    if (k < 0 || k >= K) return nullptr;
    for (const Block& bl : blocks[static_cast<size_t>(k)])
      if (bl.ka == ka && bl.kb == kb) return &bl;
    return nullptr;
  };
  auto place = [](RatMatrix& big, const RatMatrix& piece, long row0, long col0) {
    for (long i = 0; i < piece.rows(); ++i)
      for (long j = 0; j < piece.cols(); ++j) big.at(row0 + i, col0 + j) = piece.at(i, j);
  };

  out.zmaps.resize(static_cast<size_t>(out.r));
  out.dmaps.resize(static_cast<size_t>(out.r));
  for (int i = 0; i < out.r; ++i) {
    bool from_a = i < a.r;
    const MonodromicModule& side = from_a ? a : b;
    int si = from_a ? i : i - a.r;
    for (long j = 0; j + 1 <= K - 1; ++j) {
      RatMatrix z(out.dim_at(j + 1), out.dim_at(j));
      RatMatrix d(out.dim_at(j), out.dim_at(j + 1));
      for (const Block& bl : blocks[static_cast<size_t>(j)]) {
        long tka = bl.ka + (from_a ? 1 : 0);
        long tkb = bl.kb + (from_a ? 0 : 1);
        if (const Block* tgt = find_block(j + 1, tka, tkb)) {
          long edge = from_a ? bl.ka : bl.kb;
          const RatMatrix& zi =
              side.zmaps[static_cast<size_t>(si)][static_cast<size_t>(edge)];
          RatMatrix piece = from_a
                                ? RatMatrix::kronecker(zi, RatMatrix::identity(bl.bdim))
                                : RatMatrix::kronecker(RatMatrix::identity(bl.adim), zi);
          place(z, piece, tgt->off, bl.off);
        }
      }
      for (const Block& bl : blocks[static_cast<size_t>(j + 1)]) {
        long tka = bl.ka - (from_a ? 1 : 0);
        long tkb = bl.kb - (from_a ? 0 : 1);
        if (const Block* tgt = find_block(j, tka, tkb)) {
          long edge = from_a ? tka : tkb;
          const RatMatrix& di =
              side.dmaps[static_cast<size_t>(si)][static_cast<size_t>(edge)];
          RatMatrix piece = from_a
                                ? RatMatrix::kronecker(di, RatMatrix::identity(bl.bdim))
                                : RatMatrix::kronecker(RatMatrix::identity(tgt->adim), di);
          place(d, piece, tgt->off, bl.off);
        }
      }
      out.zmaps[static_cast<size_t>(i)].push_back(z);
      out.dmaps[static_cast<size_t>(i)].push_back(d);
    }
  }
  return out;
}

struct CorpusEntry {
  std::string label;
  MonodromicModule m;
};

// Seeded mixed corpus: r = 1 and r = 2, eigenspace dimensions <= 4,
// denominators <= 3, both pinned models included.
inline std::vector<CorpusEntry> standard_corpus(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusEntry> out;
  out.push_back({"cz-model", cz_model()});
  out.push_back({"delta-model", delta_model()});

  for (int t = 0; t < 12; ++t) {
    MonodromicModule m = random_cz_block(rng, rng.range(1, 4), rng.range(1, 3));
    if (rng.flip()) m = tate_twist(m, rng.range(-2, 2));
    out.push_back({"cz-" + std::to_string(t), m});
  }
  for (int t = 0; t < 12; ++t) {
    MonodromicModule m = random_delta_block(rng, rng.range(1, 4), rng.range(1, 3));
    if (rng.flip()) m = tate_twist(m, rng.range(-2, 2));
    out.push_back({"delta-" + std::to_string(t), m});
  }
  for (int t = 0; t < 9; ++t) {
    long e = 1 + t % 3;
    long c = e == 1 ? 0 : rng.range(0, e - 1);
    MonodromicModule m = random_loc_block(rng, rng.range(1, 4), e, c);
    if (rng.flip()) m = tate_twist(m, rng.range(-2, 2));
    out.push_back({"loc-" + std::to_string(t), m});
  }
  for (int t = 0; t < 6; ++t) {
    MonodromicModule x = random_cz_block(rng, rng.range(1, 2), rng.range(1, 2));
    MonodromicModule y = random_delta_block(rng, rng.range(1, 2), rng.range(1, 2));
    MonodromicModule m = t % 2 == 0 ? direct_sum(x, y) : direct_sum(y, x);
    out.push_back({"sum-" + std::to_string(t), m});
  }
  for (int t = 0; t < 3; ++t) {
    long e = 2 + t % 2;
    MonodromicModule x = random_loc_block(rng, rng.range(1, 3), e, rng.range(1, e - 1));
    MonodromicModule y = re_grid(random_loc_block(rng, rng.range(1, 2), 1, 0), e);
    out.push_back({"sum-loc-" + std::to_string(t), direct_sum(x, y)});
  }
  for (int t = 0; t < 6; ++t) {
    // one wide factor and one dim-1 factor keeps every product level at dim 4
    // or less
    MonodromicModule x = random_cz_block(rng, rng.range(1, 2), 1);
    MonodromicModule y = random_cz_block(rng, 1, rng.range(1, 2));
    MonodromicModule m = external_product(x, y);
    if (rng.flip()) m = tate_twist(m, rng.range(-2, 2));
    out.push_back({"prod-cz-" + std::to_string(t), m});
  }
  for (int t = 0; t < 6; ++t) {
    MonodromicModule x = random_delta_block(rng, rng.range(1, 2), 1);
    MonodromicModule y = random_delta_block(rng, 1, rng.range(1, 2));
    MonodromicModule m = external_product(x, y);
    if (rng.flip()) m = tate_twist(m, rng.range(-2, 2));
    out.push_back({"prod-delta-" + std::to_string(t), m});
  }
  for (int t = 0; t < 2; ++t) {
    MonodromicModule x =
        external_product(random_cz_block(rng, 1, 1), random_cz_block(rng, 1, 2));
    MonodromicModule y =
        external_product(random_cz_block(rng, 1, 2), random_cz_block(rng, 1, 1));
    out.push_back({"prod-sum-" + std::to_string(t), direct_sum(x, y)});
  }
  return out;
}

}  // namespace monofl::corpus
