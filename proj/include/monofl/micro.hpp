#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monofl/error.hpp"
#include "monofl/poly.hpp"
#include "monofl/rational.hpp"
#include "monofl/report.hpp"
#include "monofl/rng.hpp"
#include "monofl/weyl.hpp"
#include "monofl/weyl_text.hpp"

namespace monofl {

// Graph-side and microlocal-side modules for a map f = (f_1 .. f_r) out of
// affine n-space.  Elements are finite sums m * dt^alpha * delta resp.
// m * y^alpha * dxi^j * delta_g with m a polynomial in the x variables only;
// the generator actions below are closed on that shape, which is what makes
// the window finite.
struct MicroContext {
  int n = 0;
  int r = 0;
  std::vector<WeylElement> f;
  std::vector<std::vector<WeylElement>> df;  // df[j][i-1] = d f_{j+1} / d x_i

  static MicroContext make(int n, int r, std::vector<WeylElement> fs) {
    if (n < 1 || r < 1) fail(ErrorKind::invalid_input, "context needs n >= 1 and r >= 1");
    if (static_cast<int>(fs.size()) != r)
      fail(ErrorKind::invalid_input, "context needs exactly r polynomials");
    MicroContext ctx;
    ctx.n = n;
    ctx.r = r;
    for (int j = 0; j < r; ++j) {
      require_x_polynomial(fs[static_cast<size_t>(j)], "f_" + std::to_string(j + 1));
      if (fs[static_cast<size_t>(j)].is_zero())
        fail(ErrorKind::invalid_input, "f_" + std::to_string(j + 1) + " must be nonzero");
      if (max_x_index(fs[static_cast<size_t>(j)]) > n)
        fail(ErrorKind::invalid_input,
             "f_" + std::to_string(j + 1) + " uses an x variable beyond n");
      std::vector<WeylElement> row;
      for (int i = 1; i <= n; ++i) row.push_back(poly_partial(fs[static_cast<size_t>(j)], i));
      ctx.df.push_back(std::move(row));
    }
    ctx.f = std::move(fs);
    return ctx;
  }

  // The workbench default: f = (x1^2 - x2^3, x1 x2) out of the plane.
  static MicroContext standard() {
    WeylElement x1 = WeylElement::generator(position(VarGroup::x, 1));
    WeylElement x2 = WeylElement::generator(position(VarGroup::x, 2));
    return make(2, 2, {x1.pow(2) - x2.pow(3), x1 * x2});
  }
};

using ExpVec = std::vector<long>;

namespace detail {

inline long exp_sum(const ExpVec& a) {
  long s = 0;
  for (long v : a) s += v;
  return s;
}

inline void check_alpha(const MicroContext& ctx, const ExpVec& a) {
  if (static_cast<int>(a.size()) != ctx.r)
    fail(ErrorKind::dimension, "exponent vector length must equal r");
  for (long v : a)
    if (v < 0) fail(ErrorKind::invalid_input, "negative t/y exponent");
}

inline void check_index(int i, int hi, const char* what) {
  if (i < 1 || i > hi) fail(ErrorKind::invalid_input, std::string(what) + " index out of range");
}

}  // namespace detail

struct GraphElement {
  std::map<ExpVec, WeylElement> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const ExpVec& alpha, const WeylElement& m) {
    if (m.is_zero()) return;
    auto it = terms.find(alpha);
    if (it == terms.end()) {
      terms.emplace(alpha, m);
      return;
    }
    it->second = it->second + m;
    if (it->second.is_zero()) terms.erase(it);
  }

  GraphElement operator+(const GraphElement& o) const {
    GraphElement out = *this;
    for (const auto& [a, m] : o.terms) out.add_term(a, m);
    return out;
  }
  GraphElement operator-(const GraphElement& o) const { return *this + o.scaled(Rational(-1)); }
  GraphElement scaled(const Rational& c) const {
    GraphElement out;
    if (c == 0) return out;
    for (const auto& [a, m] : terms) out.terms.emplace(a, m.scaled(c));
    return out;
  }
  bool operator==(const GraphElement& o) const { return terms == o.terms; }
  bool operator!=(const GraphElement& o) const { return !(*this == o); }
};

struct MicroElement {
  std::map<std::pair<ExpVec, long>, WeylElement> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const ExpVec& alpha, long j, const WeylElement& m) {
    if (m.is_zero()) return;
    std::pair<ExpVec, long> key{alpha, j};
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(std::move(key), m);
      return;
    }
    it->second = it->second + m;
    if (it->second.is_zero()) terms.erase(it);
  }

  MicroElement operator+(const MicroElement& o) const {
    MicroElement out = *this;
    for (const auto& [k, m] : o.terms) out.add_term(k.first, k.second, m);
    return out;
  }
  MicroElement operator-(const MicroElement& o) const { return *this + o.scaled(Rational(-1)); }
  MicroElement scaled(const Rational& c) const {
    MicroElement out;
    if (c == 0) return out;
    for (const auto& [k, m] : terms) out.terms.emplace(k, m.scaled(c));
    return out;
  }
  bool operator==(const MicroElement& o) const { return terms == o.terms; }
  bool operator!=(const MicroElement& o) const { return !(*this == o); }
};

inline GraphElement graph_delta(const MicroContext& ctx) {
  GraphElement e;
  e.add_term(ExpVec(static_cast<size_t>(ctx.r), 0), WeylElement::one());
  return e;
}

inline MicroElement micro_delta(const MicroContext& ctx) {
  MicroElement e;
  e.add_term(ExpVec(static_cast<size_t>(ctx.r), 0), 0, WeylElement::one());
  return e;
}

// Graph-side actions on m dt^alpha delta.

inline GraphElement graph_mul(const MicroContext& ctx, const WeylElement& h,
                              const GraphElement& e) {
  require_x_polynomial(h, "coefficient");
  GraphElement out;
  for (const auto& [a, m] : e.terms) {
    detail::check_alpha(ctx, a);
    out.add_term(a, h * m);
  }
  return out;
}

inline GraphElement graph_dx(const MicroContext& ctx, int i, const GraphElement& e) {
  detail::check_index(i, ctx.n, "x");
  GraphElement out;
  for (const auto& [a, m] : e.terms) {
    detail::check_alpha(ctx, a);
    out.add_term(a, poly_partial(m, i));
    for (int j = 0; j < ctx.r; ++j) {
      ExpVec up = a;
      up[static_cast<size_t>(j)] += 1;
      out.add_term(up, (ctx.df[static_cast<size_t>(j)][static_cast<size_t>(i - 1)] * m)
                           .scaled(Rational(-1)));
    }
  }
  return out;
}

inline GraphElement graph_t(const MicroContext& ctx, int i, const GraphElement& e) {
  detail::check_index(i, ctx.r, "t");
  GraphElement out;
  for (const auto& [a, m] : e.terms) {
    detail::check_alpha(ctx, a);
    out.add_term(a, ctx.f[static_cast<size_t>(i - 1)] * m);
    long ai = a[static_cast<size_t>(i - 1)];
    if (ai > 0) {
      ExpVec down = a;
      down[static_cast<size_t>(i - 1)] -= 1;
      out.add_term(down, m.scaled(Rational(-ai)));
    }
  }
  return out;
}

inline GraphElement graph_dt(const MicroContext& ctx, int i, const GraphElement& e) {
  detail::check_index(i, ctx.r, "t");
  GraphElement out;
  for (const auto& [a, m] : e.terms) {
    detail::check_alpha(ctx, a);
    ExpVec up = a;
    up[static_cast<size_t>(i - 1)] += 1;
    out.add_term(up, m);
  }
  return out;
}

// s = -sum dt_i t_i, the operator whose eigenvalues the V-filtration reads.
inline GraphElement s_graph(const MicroContext& ctx, const GraphElement& e) {
  GraphElement out;
  for (int i = 1; i <= ctx.r; ++i) out = out - graph_dt(ctx, i, graph_t(ctx, i, e));
  return out;
}

// Microlocal actions on m y^alpha dxi^j delta_g.

inline MicroElement micro_mul(const MicroContext& ctx, const WeylElement& h,
                              const MicroElement& e) {
  require_x_polynomial(h, "coefficient");
  MicroElement out;
  for (const auto& [k, m] : e.terms) {
    detail::check_alpha(ctx, k.first);
    out.add_term(k.first, k.second, h * m);
  }
  return out;
}

inline MicroElement micro_dx(const MicroContext& ctx, int i, const MicroElement& e) {
  detail::check_index(i, ctx.n, "x");
  MicroElement out;
  for (const auto& [k, m] : e.terms) {
    detail::check_alpha(ctx, k.first);
    out.add_term(k.first, k.second, poly_partial(m, i));
    for (int j = 0; j < ctx.r; ++j) {
      ExpVec up = k.first;
      up[static_cast<size_t>(j)] += 1;
      out.add_term(up, k.second + 1,
                   (ctx.df[static_cast<size_t>(j)][static_cast<size_t>(i - 1)] * m)
                       .scaled(Rational(-1)));
    }
  }
  return out;
}

inline MicroElement micro_y(const MicroContext& ctx, int i, const MicroElement& e) {
  detail::check_index(i, ctx.r, "y");
  MicroElement out;
  for (const auto& [k, m] : e.terms) {
    ExpVec up = k.first;
    up[static_cast<size_t>(i - 1)] += 1;
    out.add_term(up, k.second, m);
  }
  return out;
}

inline MicroElement micro_dy(const MicroContext& ctx, int i, const MicroElement& e) {
  detail::check_index(i, ctx.r, "y");
  MicroElement out;
  for (const auto& [k, m] : e.terms) {
    long ai = k.first[static_cast<size_t>(i - 1)];
    if (ai > 0) {
      ExpVec down = k.first;
      down[static_cast<size_t>(i - 1)] -= 1;
      out.add_term(down, k.second, m.scaled(Rational(ai)));
    }
    out.add_term(k.first, k.second + 1,
                 (ctx.f[static_cast<size_t>(i - 1)] * m).scaled(Rational(-1)));
  }
  return out;
}

inline MicroElement micro_xi(const MicroContext& ctx, const MicroElement& e) {
  MicroElement out;
  for (const auto& [k, m] : e.terms) {
    for (int j = 0; j < ctx.r; ++j) {
      ExpVec up = k.first;
      up[static_cast<size_t>(j)] += 1;
      out.add_term(up, k.second, ctx.f[static_cast<size_t>(j)] * m);
    }
    if (k.second != 0)
      out.add_term(k.first, k.second - 1, m.scaled(Rational(-k.second)));
  }
  return out;
}

// dxi is invertible on the microlocalization; k may be any integer.
inline MicroElement micro_dxi(const MicroElement& e, long k) {
  MicroElement out;
  for (const auto& [key, m] : e.terms) out.add_term(key.first, key.second + k, m);
  return out;
}

inline MicroElement theta_y(const MicroContext& ctx, const MicroElement& e) {
  MicroElement out;
  for (int i = 1; i <= ctx.r; ++i) out = out + micro_y(ctx, i, micro_dy(ctx, i, e));
  return out;
}

// s = -dxi xi on the microlocal side.
inline MicroElement s_micro(const MicroContext& ctx, const MicroElement& e) {
  return micro_dxi(micro_xi(ctx, e), 1).scaled(Rational(-1));
}

// The microlocalization map: m y^alpha dxi^j delta_g -> (-1)^{|alpha|+j} m
// dt^alpha delta.
inline GraphElement phi(const MicroContext& ctx, const MicroElement& e) {
  GraphElement out;
  for (const auto& [k, m] : e.terms) {
    detail::check_alpha(ctx, k.first);
    long parity = ((detail::exp_sum(k.first) + k.second) % 2 + 2) % 2;
    out.add_term(k.first, parity == 0 ? m : m.scaled(Rational(-1)));
  }
  return out;
}

// Splits by the theta_y - s eigenvalue l = |alpha| - j.
inline std::map<long, MicroElement> eigen_decompose(const MicroElement& e) {
  std::map<long, MicroElement> out;
  for (const auto& [k, m] : e.terms)
    out[detail::exp_sum(k.first) - k.second].add_term(k.first, k.second, m);
  return out;
}

// Hodge level of the lowest F step containing the element; weight level is
// constant on each side.
inline long f_level(const MicroContext& ctx, const GraphElement& e) {
  if (e.is_zero()) fail(ErrorKind::domain, "the zero element has no level");
  long best = 0;
  bool first = true;
  for (const auto& [a, m] : e.terms) {
    long v = detail::exp_sum(a);
    if (first || v > best) best = v;
    first = false;
  }
  return best + ctx.r;
}

inline long f_level(const MicroContext& ctx, const MicroElement& e) {
  if (e.is_zero()) fail(ErrorKind::domain, "the zero element has no level");
  long best = 0;
  bool first = true;
  for (const auto& [k, m] : e.terms) {
    if (first || k.second > best) best = k.second;
    first = false;
  }
  return best + ctx.r + 1;
}

inline long w_level(const MicroContext& ctx, const GraphElement& e) {
  if (e.is_zero()) fail(ErrorKind::domain, "the zero element has no level");
  return ctx.n;
}

inline long w_level(const MicroContext& ctx, const MicroElement& e) {
  if (e.is_zero()) fail(ErrorKind::domain, "the zero element has no level");
  return ctx.n - ctx.r;
}

// Element text. Graph terms print as "(m)*dt1^a*dt2^b*delta_f", microlocal
// terms as "(m)*y1^a*y2^b*dxi^j*delta_g"; the coefficient parenthesis is
// dropped when m = 1 and dxi exponents may be negative.  The parser accepts
// bare "delta" for either symbol.

namespace detail {

inline std::string exp_piece(const std::string& tok, long e) {
  if (e == 1) return tok;
  return tok + "^" + std::to_string(e);
}

template <typename TermPieces>
inline std::string print_element(const WeylElement& m, TermPieces&& pieces,
                                 const std::string& delta_sym) {
  std::vector<std::string> parts;
  if (!(m == WeylElement::one())) parts.push_back("(" + print_weyl(m) + ")");
  for (const std::string& p : pieces) parts.push_back(p);
  parts.push_back(delta_sym);
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

}  // namespace detail

inline std::string print_graph(const MicroContext& ctx, const GraphElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, m] : e.terms) {
    if (!first) out += " + ";
    first = false;
    std::vector<std::string> pieces;
    for (int i = 0; i < ctx.r; ++i)
      if (a[static_cast<size_t>(i)] != 0)
        pieces.push_back(
            detail::exp_piece("dt" + std::to_string(i + 1), a[static_cast<size_t>(i)]));
    out += detail::print_element(m, pieces, "delta_f");
  }
  return out;
}

inline std::string print_micro(const MicroContext& ctx, const MicroElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, m] : e.terms) {
    if (!first) out += " + ";
    first = false;
    std::vector<std::string> pieces;
    for (int i = 0; i < ctx.r; ++i)
      if (k.first[static_cast<size_t>(i)] != 0)
        pieces.push_back(
            detail::exp_piece("y" + std::to_string(i + 1), k.first[static_cast<size_t>(i)]));
    if (k.second != 0) pieces.push_back(detail::exp_piece("dxi", k.second));
    out += detail::print_element(m, pieces, "delta_g");
  }
  return out;
}

namespace detail {

// One multiplicative term "factor*...*factor*delta"; collects an x-polynomial
// coefficient, t/y exponents, and the dxi power.
struct ElementTermParser {
  WeylLexer& lex;
  const MicroContext& ctx;
  bool graph;

  WeylElement coeff = WeylElement::one();
  ExpVec alpha;
  long j = 0;

  explicit ElementTermParser(WeylLexer& l, const MicroContext& c, bool g)
      : lex(l), ctx(c), graph(g), alpha(static_cast<size_t>(c.r), 0) {}

  long exponent(bool allow_negative) {
    if (!lex.eat('^')) return 1;
    bool neg = lex.eat('-');
    if (neg && !allow_negative) lex.error("negative exponent is only allowed on dxi");
    std::string d = lex.digits();
    if (d.empty()) lex.error("expected exponent digits");
    long v = std::stol(d);
    return neg ? -v : v;
  }

  // Returns true when the term is finished (delta was consumed).
  bool factor() {
    lex.skip_ws();
    if (lex.peek() == '(') {
      size_t start = lex.pos;
      long depth = 0;
      size_t end = start;
      while (end < lex.text.size()) {
        if (lex.text[end] == '(') ++depth;
        if (lex.text[end] == ')' && --depth == 0) break;
        ++end;
      }
      if (end >= lex.text.size()) lex.error("unbalanced parenthesis");
      WeylElement inner = parse_weyl(lex.text.substr(start + 1, end - start - 1));
      require_x_polynomial(inner, "coefficient");
      lex.pos = end + 1;
      long e = exponent(false);
      coeff = coeff * inner.pow(static_cast<unsigned long>(e));
      return false;
    }
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      std::string num = lex.digits();
      Rational c{Int(num)};
      if (lex.eat('/')) {
        std::string den = lex.digits();
        if (den.empty()) lex.error("expected denominator digits");
        if (Int(den) == 0) lex.error("zero denominator");
        c = make_rational(Int(num), Int(den));
      }
      coeff = coeff.scaled(c);
      return false;
    }
    std::string word = lex.letters();
    if (word.empty()) lex.error("expected a factor");
    if (word == "delta") {
      if (lex.pos < lex.text.size() && lex.text[lex.pos] == '_') {
        ++lex.pos;
        std::string suffix = lex.letters();
        if (suffix != (graph ? "f" : "g"))
          lex.error(graph ? "expected delta_f" : "expected delta_g");
      }
      return true;
    }
    if (word == "x") {
      std::string idx = lex.digits();
      if (idx.empty()) lex.error("expected index after x");
      int i = std::stoi(idx);
      if (i < 1 || i > ctx.n) lex.error("x index out of range");
      long e = exponent(false);
      coeff = coeff * WeylElement::generator(position(VarGroup::x, i)).pow(
                          static_cast<unsigned long>(e));
      return false;
    }
    if (graph && word == "dt") {
      std::string idx = lex.digits();
      if (idx.empty()) lex.error("expected index after dt");
      int i = std::stoi(idx);
      if (i < 1 || i > ctx.r) lex.error("dt index out of range");
      alpha[static_cast<size_t>(i - 1)] += exponent(false);
      return false;
    }
    if (!graph && word == "y") {
      std::string idx = lex.digits();
      if (idx.empty()) lex.error("expected index after y");
      int i = std::stoi(idx);
      if (i < 1 || i > ctx.r) lex.error("y index out of range");
      alpha[static_cast<size_t>(i - 1)] += exponent(false);
      return false;
    }
    if (!graph && word == "dxi") {
      j += exponent(true);
      return false;
    }
    lex.error("unexpected factor '" + word + "'");
  }

  void run() {
    bool closed = factor();
    while (!closed) {
      if (!lex.eat('*')) lex.error("expected '*' or the closing delta");
      closed = factor();
    }
  }
};

template <typename Element, typename AddTerm>
inline Element parse_element(const MicroContext& ctx, const std::string& text, bool graph,
                             AddTerm&& add) {
  WeylLexer lex{text};
  Element out;
  if (lex.done()) lex.error("empty element");
  bool negate = false;
  if (lex.eat('-')) negate = true;
  while (true) {
    ElementTermParser term(lex, ctx, graph);
    term.run();
    add(out, term, negate ? Rational(-1) : Rational(1));
    if (lex.done()) break;
    if (lex.eat('+'))
      negate = false;
    else if (lex.eat('-'))
      negate = true;
    else
      lex.error("expected '+' or '-' between terms");
  }
  return out;
}

}  // namespace detail

inline GraphElement parse_graph(const MicroContext& ctx, const std::string& text) {
  return detail::parse_element<GraphElement>(
      ctx, text, true, [](GraphElement& out, const detail::ElementTermParser& t, Rational s) {
        out.add_term(t.alpha, t.coeff.scaled(s));
      });
}

inline MicroElement parse_micro(const MicroContext& ctx, const std::string& text) {
  return detail::parse_element<MicroElement>(
      ctx, text, false, [](MicroElement& out, const detail::ElementTermParser& t, Rational s) {
        out.add_term(t.alpha, t.j, t.coeff.scaled(s));
      });
}

// Seeded samplers used by the identity suites and the CLI.

inline WeylElement random_x_poly(const MicroContext& ctx, Rng& rng) {
  WeylElement out = WeylElement::zero();
  long monomials = rng.range(1, 2);
  for (long t = 0; t < monomials; ++t) {
    WeylElement mono = WeylElement::constant(Rational(rng.nonzero(5)));
    for (int i = 1; i <= ctx.n; ++i) {
      long e = rng.range(0, 3);
      if (e > 0)
        mono = mono * WeylElement::generator(position(VarGroup::x, i))
                          .pow(static_cast<unsigned long>(e));
    }
    out = out + mono;
  }
  if (out.is_zero()) out = WeylElement::one();
  return out;
}

inline MicroElement random_micro_element(const MicroContext& ctx, Rng& rng) {
  MicroElement out;
  long n_terms = rng.range(1, 3);
  for (long t = 0; t < n_terms; ++t) {
    ExpVec alpha;
    for (int i = 0; i < ctx.r; ++i) alpha.push_back(rng.range(0, 3));
    out.add_term(alpha, rng.range(-3, 3), random_x_poly(ctx, rng));
  }
  if (out.is_zero()) out = micro_delta(ctx);
  return out;
}

// The six defining identities of phi, checked on seeded random elements, plus
// the eigenvalue bookkeeping they rely on.
inline Report verify_phi_identities(const MicroContext& ctx, int samples,
                                    std::uint64_t seed) {
  Report rep("phi-identities");
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    MicroElement e = random_micro_element(ctx, rng);
    GraphElement pe = phi(ctx, e);
    std::string tag = " (sample " + std::to_string(s) + ")";

    WeylElement h = random_x_poly(ctx, rng);
    rep.check(phi(ctx, micro_mul(ctx, h, e)) == graph_mul(ctx, h, pe),
              "phi is not O_X-linear" + tag);
    for (int i = 1; i <= ctx.n; ++i)
      rep.check(phi(ctx, micro_dx(ctx, i, e)) == graph_dx(ctx, i, pe),
                "phi does not commute with dx" + std::to_string(i) + tag);

    for (long k : {-2L, -1L, 1L, 2L}) {
      GraphElement want = (k % 2 == 0) ? pe : pe.scaled(Rational(-1));
      rep.check(phi(ctx, micro_dxi(e, k)) == want,
                "phi dxi^" + std::to_string(k) + " != (-1)^k phi" + tag);
    }

    for (int i = 1; i <= ctx.r; ++i) {
      rep.check(phi(ctx, micro_y(ctx, i, e)) ==
                    graph_dt(ctx, i, pe).scaled(Rational(-1)),
                "phi y" + std::to_string(i) + " != -dt" + std::to_string(i) + " phi" + tag);
      rep.check(phi(ctx, micro_dy(ctx, i, e)) == graph_t(ctx, i, pe),
                "phi dy" + std::to_string(i) + " != t" + std::to_string(i) + " phi" + tag);
    }

    rep.check(phi(ctx, theta_y(ctx, e)) == s_graph(ctx, pe),
              "phi theta_y != s phi" + tag);

    MicroElement back;
    for (const auto& [l, comp] : eigen_decompose(e)) {
      back = back + comp;
      rep.check(theta_y(ctx, comp) - s_micro(ctx, comp) == comp.scaled(Rational(l)),
                "theta_y - s - " + std::to_string(l) + " does not annihilate the component" +
                    tag);
      rep.check(phi(ctx, s_micro(ctx, comp)) ==
                    s_graph(ctx, phi(ctx, comp)) - phi(ctx, comp).scaled(Rational(l)),
                "phi s != (s - " + std::to_string(l) + ") phi on the component" + tag);
    }
    rep.check(back == e, "eigen components do not sum back" + tag);

    // generator relations behind the identities
    rep.check(micro_dxi(micro_dxi(e, 1), -1) == e, "dxi dxi^-1 != id" + tag);
    MicroElement comm = micro_dxi(micro_xi(ctx, e), 1) - micro_xi(ctx, micro_dxi(e, 1));
    rep.check(comm == e, "[dxi, xi] != id" + tag);
    for (int i = 1; i <= ctx.r; ++i) {
      rep.check(micro_dy(ctx, i, micro_y(ctx, i, e)) - micro_y(ctx, i, micro_dy(ctx, i, e)) ==
                    e,
                "[dy, y] != id" + tag);
      rep.check(graph_dt(ctx, i, graph_t(ctx, i, pe)) - graph_t(ctx, i, graph_dt(ctx, i, pe)) ==
                    pe,
                "[dt, t] != id" + tag);
    }
  }

  // phi restricted to each eigenspace is a bijection on monomial basis
  // elements up to the sampling bound.
  long bound = 3;
  for (long l = -2; l <= 2; ++l) {
    long seen = 0, expected = 0;
    bool ok = true;
    ExpVec alpha(static_cast<size_t>(ctx.r), 0);
    // enumerate alpha with |alpha| <= bound
    std::vector<ExpVec> all;
    std::function<void(size_t, long)> walk = [&](size_t pos, long left) {
      if (pos == alpha.size()) {
        all.push_back(alpha);
        return;
      }
      for (long v = 0; v <= left; ++v) {
        alpha[pos] = v;
        walk(pos + 1, left - v);
      }
      alpha[pos] = 0;
    };
    walk(0, bound);
    std::map<ExpVec, int> hits;
    for (const ExpVec& a : all) {
      ++expected;
      MicroElement basis;
      basis.add_term(a, detail::exp_sum(a) - l, WeylElement::one());
      GraphElement img = phi(ctx, basis);
      if (img.terms.size() != 1) {
        ok = false;
        continue;
      }
      const auto& [ia, im] = *img.terms.begin();
      Rational want = (l % 2 == 0) ? Rational(1) : Rational(-1);
      if (ia != a || !(im == WeylElement::constant(want))) ok = false;
      ++hits[ia];
      ++seen;
    }
    for (const auto& [a, c] : hits)
      if (c != 1) ok = false;
    rep.check(ok && seen == expected,
              "phi is not a signed monomial bijection on the eigenspace l=" +
                  std::to_string(l));
  }
  rep.note("checked " + std::to_string(samples) + " seeded samples");
  return rep;
}

// F and W transport under phi, exhaustively over monomials with
// |alpha| + |j| <= bound: F drops to level + l - 1 and W shifts by r.
inline Report verify_filtration_shift(const MicroContext& ctx, long bound) {
  Report rep("filtration-shift");
  long checked = 0;
  std::vector<ExpVec> all;
  ExpVec alpha(static_cast<size_t>(ctx.r), 0);
  std::function<void(size_t, long)> walk = [&](size_t pos, long left) {
    if (pos == alpha.size()) {
      all.push_back(alpha);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      alpha[pos] = v;
      walk(pos + 1, left - v);
    }
    alpha[pos] = 0;
  };
  walk(0, bound);
  for (const ExpVec& a : all) {
    long asum = detail::exp_sum(a);
    for (long j = -(bound - asum); j <= bound - asum; ++j) {
      MicroElement e;
      e.add_term(a, j, WeylElement::one());
      long l = asum - j;
      GraphElement img = phi(ctx, e);
      ++checked;
      if (f_level(ctx, img) != f_level(ctx, e) + l - 1)
        rep.fail_with("F level off for |alpha|=" + std::to_string(asum) +
                      ", j=" + std::to_string(j));
      if (w_level(ctx, img) != w_level(ctx, e) + ctx.r)
        rep.fail_with("W level off for |alpha|=" + std::to_string(asum) +
                      ", j=" + std::to_string(j));
    }
  }
  rep.note("checked " + std::to_string(checked) + " monomials");
  return rep;
}

// Comma-separated list of x-polynomials, e.g. "x1^2-x2^3, x1*x2".
inline std::vector<WeylElement> parse_poly_list(const std::string& text) {
  std::vector<WeylElement> out;
  size_t start = 0;
  long depth = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string piece = text.substr(start, i - start);
      WeylElement p = parse_weyl(piece);
      require_x_polynomial(p, "f component");
      out.push_back(p);
      start = i + 1;
    }
  }
  if (out.empty()) fail(ErrorKind::parse, "empty polynomial list");
  return out;
}

}  // namespace monofl
