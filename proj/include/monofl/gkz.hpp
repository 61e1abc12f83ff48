#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monofl/error.hpp"
#include "monofl/lattice.hpp"
#include "monofl/matrix.hpp"
#include "monofl/rational.hpp"
#include "monofl/report.hpp"
#include "monofl/rng.hpp"
#include "monofl/weyl.hpp"
#include "monofl/weyl_text.hpp"

namespace monofl {

struct GkzFlags {
  bool homogeneous = false;
  bool pointed = false;
  bool columns_span = false;
};

struct GkzSystem {
  IntMatrix a = IntMatrix(0, 0);
  std::vector<Rational> beta;
  std::vector<std::vector<Int>> lattice_basis;
  std::vector<WeylElement> boxes;
  std::vector<WeylElement> eulers;
  GkzFlags flags;
};

namespace detail {

inline std::pair<Monomial, Monomial> box_monomials(const std::vector<Int>& l) {
  Monomial neg, pos;
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 0)
      neg[derivation(VarGroup::lambda, static_cast<int>(i) + 1)] =
          static_cast<unsigned long>(to_long(-l[i]));
    if (l[i] > 0)
      pos[derivation(VarGroup::lambda, static_cast<int>(i) + 1)] =
          static_cast<unsigned long>(to_long(l[i]));
  }
  return {neg, pos};
}

inline Rational rational_pow(const Rational& q, long e) {
  if (q == 0 && e <= 0) fail(ErrorKind::domain, "zero base with nonpositive exponent");
  Rational out(1);
  for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= q;
  return e < 0 ? Rational(1) / out : out;
}

}  // namespace detail

// The box operator of a kernel vector: d^{l_-} - d^{l_+}.
inline WeylElement box_operator(const std::vector<Int>& l) {
  auto [neg, pos] = detail::box_monomials(l);
  return WeylElement::term(neg, Rational(1)) - WeylElement::term(pos, Rational(1));
}

// Flip the kernel vector's sign when box_operator would print with a leading
// minus; reports then always show "+first - second" binomials.
inline std::vector<Int> orient_box_vector(std::vector<Int> l) {
  auto [neg, pos] = detail::box_monomials(l);
  long dn = total_degree(neg), dp = total_degree(pos);
  bool neg_leads = dn > dp || (dn == dp && neg < pos);
  if (!neg_leads)
    for (Int& v : l) v = -v;
  return l;
}

inline bool is_homogeneous(const IntMatrix& a) {
  std::vector<Int> ones(static_cast<size_t>(a.cols()), Int(1));
  return integer_solve(a.transpose(), ones).has_value();
}

namespace detail {

// Fourier-Motzkin elimination over Q.  Constraints are rows (c, b) meaning
// c . x <= b; returns whether the system has a rational solution.
inline bool fm_feasible(std::vector<std::pair<std::vector<Rational>, Rational>> cons,
                        long nvars) {
  auto normalized = [](std::pair<std::vector<Rational>, Rational> c) {
    Rational scale(0);
    for (const Rational& v : c.first)
      if (v != 0) {
        scale = v < 0 ? -v : v;
        break;
      }
    if (scale == 0) return c;
    for (Rational& v : c.first) v /= scale;
    c.second /= scale;
    return c;
  };
  for (long var = 0; var < nvars; ++var) {
    std::vector<std::pair<std::vector<Rational>, Rational>> pos, neg;
    std::set<std::pair<std::vector<Rational>, Rational>> next;
    for (auto& c : cons) {
      const Rational& coef = c.first[static_cast<size_t>(var)];
      if (coef > 0)
        pos.push_back(std::move(c));
      else if (coef < 0)
        neg.push_back(std::move(c));
      else
        next.insert(normalized(std::move(c)));
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational alpha = p.first[static_cast<size_t>(var)];
        Rational gamma = -q.first[static_cast<size_t>(var)];
        std::pair<std::vector<Rational>, Rational> row;
        row.first.resize(p.first.size());
        for (size_t i = 0; i < p.first.size(); ++i)
          row.first[i] = gamma * p.first[i] + alpha * q.first[i];
        row.second = gamma * p.second + alpha * q.second;
        next.insert(normalized(std::move(row)));
      }
    cons.assign(next.begin(), next.end());
  }
  for (const auto& c : cons)
    if (c.second < 0) return false;
  return true;
}

}  // namespace detail

// The semigroup generated by the columns is pointed: no nonzero nonnegative
// combination of columns vanishes.
inline bool is_pointed(const IntMatrix& a) {
  for (long j = 0; j < a.cols(); ++j) {
    bool all_zero = true;
    for (long i = 0; i < a.rows(); ++i)
      if (a.at(i, j) != 0) all_zero = false;
    if (all_zero) return false;
  }
  long n = a.cols();
  std::vector<std::pair<std::vector<Rational>, Rational>> cons;
  auto push = [&](std::vector<Rational> c, Rational b) { cons.push_back({std::move(c), b}); };
  for (long i = 0; i < a.rows(); ++i) {
    std::vector<Rational> row(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) row[static_cast<size_t>(j)] = Rational(a.at(i, j));
    std::vector<Rational> mrow = row;
    for (Rational& v : mrow) v = -v;
    push(row, Rational(0));
    push(mrow, Rational(0));
  }
  for (long j = 0; j < n; ++j) {
    std::vector<Rational> row(static_cast<size_t>(n));
    row[static_cast<size_t>(j)] = Rational(-1);
    push(row, Rational(0));
  }
  push(std::vector<Rational>(static_cast<size_t>(n), Rational(1)), Rational(1));
  push(std::vector<Rational>(static_cast<size_t>(n), Rational(-1)), Rational(-1));
  return !detail::fm_feasible(std::move(cons), n);
}

// Columns generate all of Z^d: full rank d and every invariant factor 1.
inline bool columns_span(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  if (snf.rank() != a.rows()) return false;
  for (const Int& f : snf.invariant_factors())
    if (f != 1 && f != -1) return false;
  return true;
}

inline GkzSystem gkz_construct(const IntMatrix& a, const std::vector<Rational>& beta) {
  if (a.rows() < 1 || a.cols() < 1)
    fail(ErrorKind::invalid_input, "the matrix must have at least one row and column");
  if (static_cast<long>(beta.size()) != a.rows())
    fail(ErrorKind::dimension, "beta length must match the row count");
  bool nonzero = false;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) nonzero = true;
  if (!nonzero) fail(ErrorKind::invalid_input, "the matrix must be nonzero");

  GkzSystem sys;
  sys.a = a;
  sys.beta = beta;
  for (std::vector<Int> l : kernel_lattice(a)) {
    l = orient_box_vector(std::move(l));
    sys.boxes.push_back(box_operator(l));
    sys.lattice_basis.push_back(std::move(l));
  }
  for (long k = 0; k < a.rows(); ++k) {
    WeylElement e = WeylElement::constant(-beta[static_cast<size_t>(k)]);
    for (long i = 0; i < a.cols(); ++i) {
      if (a.at(k, i) == 0) continue;
      WeylElement li = WeylElement::generator(position(VarGroup::lambda, static_cast<int>(i) + 1));
      WeylElement di = WeylElement::generator(derivation(VarGroup::lambda, static_cast<int>(i) + 1));
      e = e + (li * di).scaled(Rational(a.at(k, i)));
    }
    sys.eulers.push_back(e);
  }
  sys.flags.homogeneous = is_homogeneous(a);
  sys.flags.pointed = is_pointed(a);
  sys.flags.columns_span = columns_span(a);
  return sys;
}

// All kernel vectors with |l|_1 <= bound, one representative per +- pair,
// oriented like the stored basis.
inline std::vector<std::vector<Int>> enumerate_boxes(const IntMatrix& a, long bound) {
  std::vector<std::vector<Int>> out;
  long n = a.cols();
  std::vector<Int> l(static_cast<size_t>(n), Int(0));
  std::set<std::vector<Int>> seen;
  std::function<void(long, long)> walk = [&](long pos, long left) {
    if (pos == n) {
      bool zero = true;
      for (const Int& v : l) zero &= v == 0;
      if (zero) return;
      std::vector<Int> img = a.apply(l);
      for (const Int& v : img)
        if (v != 0) return;
      std::vector<Int> canon = l;
      for (const Int& v : canon) {
        if (v == 0) continue;
        if (v < 0)
          for (Int& x : canon) x = -x;
        break;
      }
      if (seen.insert(canon).second) out.push_back(orient_box_vector(canon));
      return;
    }
    for (long v = -left; v <= left; ++v) {
      l[static_cast<size_t>(pos)] = v;
      walk(pos + 1, left - (v < 0 ? -v : v));
    }
    l[static_cast<size_t>(pos)] = 0;
  };
  walk(0, bound);
  return out;
}

// [E_k, box_l] = -(A l_-)_k box_l, exactly, for every Euler operator and
// every stored box.
inline Report euler_box_commutators(const GkzSystem& sys) {
  Report rep("euler-box-commutators");
  for (size_t b = 0; b < sys.boxes.size(); ++b) {
    const std::vector<Int>& l = sys.lattice_basis[b];
    for (long k = 0; k < sys.a.rows(); ++k) {
      Rational coef(0);
      for (size_t i = 0; i < l.size(); ++i)
        if (l[i] < 0) coef += Rational(sys.a.at(k, static_cast<long>(i))) * Rational(-l[i]);
      WeylElement want = sys.boxes[b].scaled(-coef);
      WeylElement got = commutator(sys.eulers[static_cast<size_t>(k)], sys.boxes[b]);
      if (got - want == WeylElement::zero())
        rep.note("[E_" + std::to_string(k + 1) + ", box_" + std::to_string(b + 1) +
                 "] = " + (coef == 0 ? std::string("0") : "-" + to_string(coef)) +
                 (coef == 0 ? std::string(" (commutes)") : " box_" + std::to_string(b + 1)));
      else
        rep.fail_with("[E_" + std::to_string(k + 1) + ", box_" + std::to_string(b + 1) +
                      "] has a nonzero residual " + print_weyl(got - want));
    }
  }
  return rep;
}

// Every box binomial is degree-balanced exactly when its kernel vector sums
// to zero; under an integral grading witness all of them must balance.
inline Report homogeneity_degree_check(const GkzSystem& sys) {
  Report rep("homogeneity-degree");
  bool all_balanced = true;
  for (size_t b = 0; b < sys.lattice_basis.size(); ++b) {
    const std::vector<Int>& l = sys.lattice_basis[b];
    auto [neg, pos] = detail::box_monomials(l);
    long dn = total_degree(neg), dp = total_degree(pos);
    Int dot(0);
    for (const Int& v : l) dot += v;
    bool balanced = dn == dp;
    all_balanced = all_balanced && balanced;
    if (balanced != (dot == 0)) {
      rep.fail_with("box_" + std::to_string(b + 1) +
                    ": degree balance disagrees with the kernel vector sum");
      continue;
    }
    rep.note("box_" + std::to_string(b + 1) + " degrees (" + std::to_string(dn) + ", " +
             std::to_string(dp) + "), kernel sum " + to_string(dot));
  }
  if (sys.flags.homogeneous && !all_balanced)
    rep.fail_with("an integral grading witness exists but some box is unbalanced");
  if (!sys.flags.homogeneous && all_balanced)
    rep.note("all boxes balance without an integral grading witness");
  return rep;
}

struct GkzFourier {
  std::vector<WeylElement> primary;    // lambda -> mu, inverse convention
  std::vector<WeylElement> alternate;  // lambda -> mu, forward convention
  Report report = Report("gkz-fourier");
};

// Images of the boxes and Euler operators on the mu side under both sign
// conventions; the inverse convention turns boxes into the positively signed
// toric binomials.
inline GkzFourier fourier_transform_generators(const GkzSystem& sys) {
  GkzFourier out;
  std::vector<WeylElement> gens = sys.boxes;
  for (const WeylElement& e : sys.eulers) gens.push_back(e);
  size_t n_boxes = sys.boxes.size();
  for (size_t g = 0; g < gens.size(); ++g) {
    WeylElement inv = fl_automorphism(gens[g], VarGroup::lambda, VarGroup::mu, true);
    WeylElement fwd = fl_automorphism(gens[g], VarGroup::lambda, VarGroup::mu, false);
    out.primary.push_back(inv);
    out.alternate.push_back(fwd);
    WeylElement back = fl_automorphism(inv, VarGroup::mu, VarGroup::lambda, false);
    std::string tag = g < n_boxes ? "box_" + std::to_string(g + 1)
                                  : "E_" + std::to_string(g - n_boxes + 1);
    out.report.check(back == gens[g],
                     "transforming " + tag + " there and back does not return it");
    if (g < n_boxes) {
      bool polynomial = true;
      for (const auto& [mono, c] : inv.terms())
        for (const auto& [v, e] : mono)
          if (v.kind != VarKind::position) polynomial = false;
      out.report.check(polynomial,
                       "the transformed " + tag + " is not a polynomial binomial");
    }
  }
  out.report.note("primary images use the inverse convention (d_lambda -> +mu)");
  return out;
}

// The transformed boxes vanish on the torus orbit parameterized by
// mu_i = prod_k t_k^{a_ki}, checked at seeded random rational points.
inline Report toric_vanishing(const GkzSystem& sys, int points, std::uint64_t seed) {
  Report rep("toric-vanishing");
  GkzFourier four = fourier_transform_generators(sys);
  Rng rng(seed);
  for (int p = 0; p < points; ++p) {
    std::vector<Rational> t;
    for (long k = 0; k < sys.a.rows(); ++k)
      t.push_back(make_rational(Int(rng.nonzero(4)), Int(rng.range(1, 4))));
    std::vector<Rational> mu;
    for (long i = 0; i < sys.a.cols(); ++i) {
      Rational v(1);
      for (long k = 0; k < sys.a.rows(); ++k)
        v *= detail::rational_pow(t[static_cast<size_t>(k)], to_long(sys.a.at(k, i)));
      mu.push_back(v);
    }
    for (size_t b = 0; b < sys.boxes.size(); ++b) {
      Rational val(0);
      for (const auto& [mono, c] : four.primary[b].terms()) {
        Rational term = c;
        for (const auto& [var, e] : mono) {
          if (var.group != VarGroup::mu || var.kind != VarKind::position)
            fail(ErrorKind::domain, "transformed box is not a mu polynomial");
          term *= detail::rational_pow(mu[static_cast<size_t>(var.index - 1)],
                                       static_cast<long>(e));
        }
        val += term;
      }
      if (val != 0)
        rep.fail_with("box_" + std::to_string(b + 1) + " does not vanish at sample point " +
                      std::to_string(p));
    }
  }
  rep.note("checked " + std::to_string(points) + " torus points, " +
           std::to_string(sys.boxes.size()) + " binomials each");
  return rep;
}

}  // namespace monofl
