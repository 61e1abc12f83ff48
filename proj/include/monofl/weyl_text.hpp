#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "monofl/weyl.hpp"

namespace monofl {

// Token names for the operator grammar (documented in docs/grammar.md):
// positions x1 t1 z1 y1 l1 m1 xi, derivations dx1 dt1 dz1 dy1 d1 dm1 dxi.
// The bare d<i> shorthand is the lambda-side derivation used by the GKZ
// displays; mu derivations need the explicit dm<i>.
inline std::string variable_token(const Variable& v) {
  if (v.group == VarGroup::xi)
    return v.kind == VarKind::position ? "xi" : "dxi";
  std::string idx = std::to_string(v.index);
  bool der = v.kind == VarKind::derivation;
  switch (v.group) {
    case VarGroup::x: return (der ? "dx" : "x") + idx;
    case VarGroup::t: return (der ? "dt" : "t") + idx;
    case VarGroup::z: return (der ? "dz" : "z") + idx;
    case VarGroup::y: return (der ? "dy" : "y") + idx;
    case VarGroup::lambda: return (der ? "d" : "l") + idx;
    case VarGroup::mu: return (der ? "dm" : "m") + idx;
    case VarGroup::xi: break;
  }
  fail(ErrorKind::domain, "unprintable variable");
}

namespace detail {

struct WeylLexer {
  std::string text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::string out;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      out.push_back(text[pos++]);
    return out;
  }

  std::string letters() {
    std::string out;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))
      out.push_back(text[pos++]);
    return out;
  }

  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::parse, what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
  }
};

inline Variable token_to_variable(WeylLexer& lex, const std::string& word) {
  auto var = [&](VarGroup g, VarKind k) -> Variable {
    std::string idx = lex.digits();
    if (idx.empty()) lex.error("expected variable index after '" + word + "'");
    return Variable{g, std::stoi(idx), k};
  };
  if (word == "xi") return Variable{VarGroup::xi, 1, VarKind::position};
  if (word == "dxi") return Variable{VarGroup::xi, 1, VarKind::derivation};
  if (word == "x") return var(VarGroup::x, VarKind::position);
  if (word == "t") return var(VarGroup::t, VarKind::position);
  if (word == "z") return var(VarGroup::z, VarKind::position);
  if (word == "y") return var(VarGroup::y, VarKind::position);
  if (word == "l") return var(VarGroup::lambda, VarKind::position);
  if (word == "m") return var(VarGroup::mu, VarKind::position);
  if (word == "dx") return var(VarGroup::x, VarKind::derivation);
  if (word == "dt") return var(VarGroup::t, VarKind::derivation);
  if (word == "dz") return var(VarGroup::z, VarKind::derivation);
  if (word == "dy") return var(VarGroup::y, VarKind::derivation);
  if (word == "d") return var(VarGroup::lambda, VarKind::derivation);
  if (word == "dm") return var(VarGroup::mu, VarKind::derivation);
  lex.error("unknown variable '" + word + "'");
}

WeylElement parse_expr(WeylLexer& lex);

inline WeylElement parse_atom(WeylLexer& lex) {
  if (lex.eat('(')) {
    WeylElement inner = parse_expr(lex);
    if (!lex.eat(')')) lex.error("expected ')'");
    return inner;
  }
  char c = lex.peek();
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::string num = lex.digits();
    if (lex.pos < lex.text.size() && lex.text[lex.pos] == '/') {
      ++lex.pos;
      std::string den = lex.digits();
      if (den.empty()) lex.error("expected denominator");
      Int d(den);
      if (d == 0) lex.error("zero denominator");
      return WeylElement::constant(Rational(Int(num), d));
    }
    return WeylElement::constant(Rational(Int(num)));
  }
  if (std::isalpha(static_cast<unsigned char>(c))) {
    lex.skip_ws();
    std::string word = lex.letters();
    return WeylElement::generator(token_to_variable(lex, word));
  }
  lex.error("expected atom");
}

inline WeylElement parse_factor(WeylLexer& lex) {
  WeylElement base = parse_atom(lex);
  if (lex.eat('^')) {
    lex.skip_ws();
    std::string e = lex.digits();
    if (e.empty()) lex.error("expected exponent");
    return base.pow(std::stoul(e));
  }
  return base;
}

inline WeylElement parse_term(WeylLexer& lex) {
  WeylElement acc = parse_factor(lex);
  while (lex.eat('*')) acc = acc * parse_factor(lex);
  return acc;
}

inline WeylElement parse_expr(WeylLexer& lex) {
  bool negate = lex.eat('-');
  WeylElement acc = parse_term(lex);
  if (negate) acc = -acc;
  for (;;) {
    if (lex.eat('+')) {
      acc = acc + parse_term(lex);
    } else if (lex.eat('-')) {
      acc = acc - parse_term(lex);
    } else {
      return acc;
    }
  }
}

}  // namespace detail

inline WeylElement parse_weyl(const std::string& text) {
  detail::WeylLexer lex{text};
  if (lex.done()) fail(ErrorKind::parse, "empty operator expression");
  WeylElement e = detail::parse_expr(lex);
  if (!lex.done()) lex.error("trailing input");
  return e;
}

// Canonical printing: terms sorted by total degree (descending), ties by the
// monomial order, so displays come out as e.g. "d1*d3 - d2^2".
inline std::string print_weyl(const WeylElement& e) {
  if (e.is_zero()) return "0";
  std::vector<std::pair<const Monomial*, const Rational*>> order;
  for (const auto& [m, c] : e.terms()) order.push_back({&m, &c});
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    long da = total_degree(*a.first), db = total_degree(*b.first);
    if (da != db) return da > db;
    return *a.first < *b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : order) {
    Rational coeff = *c;
    if (first) {
      if (coeff < 0) {
        out << "-";
        coeff = -coeff;
      }
      first = false;
    } else {
      out << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    bool printed = false;
    if (coeff != 1 || m->empty()) {
      out << to_string(coeff);
      printed = true;
    }
    for (const auto& [v, exp] : *m) {
      if (printed) out << "*";
      out << variable_token(v);
      if (exp > 1) out << "^" << exp;
      printed = true;
    }
  }
  return out.str();
}

}  // namespace monofl
