#pragma once

#include "monofl/weyl.hpp"

namespace monofl {

// Polynomials in the x variables, carried as WeylElements whose monomials
// contain only x positions. On that subalgebra the Weyl product is the plain
// commutative product, so arithmetic comes for free.

inline bool is_x_polynomial(const WeylElement& e) {
  for (const auto& [m, c] : e.terms())
    for (const auto& [v, exp] : m)
      if (v.group != VarGroup::x || v.kind != VarKind::position) return false;
  return true;
}

inline void require_x_polynomial(const WeylElement& e, const std::string& what) {
  if (!is_x_polynomial(e))
    fail(ErrorKind::invalid_input, what + " must be a polynomial in the x variables");
}

// d/dx_i by exponent drop; [dx_i, p] computes the same thing the slow way.
inline WeylElement poly_partial(const WeylElement& p, int i) {
  require_x_polynomial(p, "poly_partial argument");
  WeylElement out;
  const Variable xi = position(VarGroup::x, i);
  for (const auto& [m, c] : p.terms()) {
    auto it = m.find(xi);
    if (it == m.end()) continue;
    unsigned long e = it->second;
    Monomial dropped = m;
    if (e == 1)
      dropped.erase(xi);
    else
      dropped[xi] = e - 1;
    out.add_term(dropped, c * Rational(static_cast<long>(e)));
  }
  return out;
}

inline Rational poly_eval(const WeylElement& p, const std::vector<Rational>& point) {
  require_x_polynomial(p, "poly_eval argument");
  Rational out = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      if (v.index < 1 || static_cast<size_t>(v.index) > point.size())
        fail(ErrorKind::invalid_input,
             "poly_eval: no coordinate for x" + std::to_string(v.index));
      for (unsigned long k = 0; k < e; ++k) t *= point[static_cast<size_t>(v.index - 1)];
    }
    out += t;
  }
  return out;
}

inline int max_x_index(const WeylElement& p) {
  int out = 0;
  for (const auto& [m, c] : p.terms())
    for (const auto& [v, e] : m)
      if (v.group == VarGroup::x && v.index > out) out = v.index;
  return out;
}

}  // namespace monofl
