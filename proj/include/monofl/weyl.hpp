#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "monofl/rational.hpp"

namespace monofl {

// Variable groups of the ambient Weyl algebras. x spectates under the
// Fourier automorphisms; z/y and lambda/mu are the swapped pairs; t and xi
// belong to the graph and microlocal pictures.
enum class VarGroup : unsigned char { x, t, z, y, lambda, mu, xi };

enum class VarKind : unsigned char { position, derivation };

inline const char* group_name(VarGroup g) {
  switch (g) {
    case VarGroup::x: return "x";
    case VarGroup::t: return "t";
    case VarGroup::z: return "z";
    case VarGroup::y: return "y";
    case VarGroup::lambda: return "lambda";
    case VarGroup::mu: return "mu";
    case VarGroup::xi: return "xi";
  }
  return "?";
}

// Member order (group, index, kind) is the monomial order; position sorts
// before derivation, which is exactly the normal-ordered storage convention.
struct Variable {
  VarGroup group;
  int index;
  VarKind kind;

  auto operator<=>(const Variable&) const = default;
};

inline Variable position(VarGroup g, int index) {
  return Variable{g, index, VarKind::position};
}

inline Variable derivation(VarGroup g, int index) {
  return Variable{g, index, VarKind::derivation};
}

// Normal-ordered word: for each conjugate pair (group, index) the positions
// stand left of the derivations; distinct pairs commute.
using Monomial = std::map<Variable, unsigned long>;

inline long total_degree(const Monomial& m) {
  long d = 0;
  for (const auto& [v, e] : m) d += static_cast<long>(e);
  return d;
}

class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement zero() { return WeylElement(); }

  static WeylElement constant(const Rational& c) {
    WeylElement e;
    if (c != 0) e.terms_[Monomial{}] = c;
    return e;
  }

  static WeylElement one() { return constant(1); }

  static WeylElement generator(const Variable& v) {
    WeylElement e;
    e.terms_[Monomial{{v, 1}}] = 1;
    return e;
  }

  static WeylElement term(const Monomial& m, const Rational& c) {
    WeylElement e;
    if (c != 0) e.terms_[m] = c;
    return e;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }

  WeylElement operator+(const WeylElement& o) const {
    WeylElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  WeylElement operator-(const WeylElement& o) const {
    WeylElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }

  WeylElement operator-() const {
    WeylElement r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  WeylElement scaled(const Rational& c) const {
    WeylElement r;
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
  }

  // Normal-ordered product. Within one conjugate pair,
  //   d^b x^a = sum_k k! C(b,k) C(a,k) x^(a-k) d^(b-k),
  // and distinct pairs commute, so the correction factors multiply.
  WeylElement operator*(const WeylElement& o) const {
    WeylElement r;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) multiply_terms(ma, ca, mb, cb, r);
    return r;
  }

  WeylElement pow(unsigned long k) const {
    WeylElement r = one();
    for (unsigned long i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // (min, max) of position-minus-derivation exponent sums in `group`.
  std::pair<long, long> v_degree(VarGroup group) const {
    if (terms_.empty()) fail(ErrorKind::domain, "v_degree of the zero element");
    bool first = true;
    std::pair<long, long> out{0, 0};
    for (const auto& [m, c] : terms_) {
      long d = 0;
      for (const auto& [v, e] : m) {
        if (v.group != group) continue;
        d += (v.kind == VarKind::position) ? static_cast<long>(e) : -static_cast<long>(e);
      }
      if (first) {
        out = {d, d};
        first = false;
      } else {
        out.first = std::min(out.first, d);
        out.second = std::max(out.second, d);
      }
    }
    return out;
  }

 private:
  static void multiply_terms(const Monomial& ma, const Rational& ca, const Monomial& mb,
                             const Rational& cb, WeylElement& out) {
    // Conjugate pairs where a derivation of ma meets a position of mb.
    struct Collision {
      Variable pos, der;
      unsigned long b, a;  // derivation exponent (left), position exponent (right)
    };
    std::vector<Collision> collisions;
    for (const auto& [v, e] : ma) {
      if (v.kind != VarKind::derivation) continue;
      auto it = mb.find(position(v.group, v.index));
      if (it != mb.end() && it->second > 0)
        collisions.push_back({it->first, v, e, it->second});
    }

    Monomial base = ma;
    for (const auto& [v, e] : mb) {
      auto [it, inserted] = base.emplace(v, e);
      if (!inserted) it->second += e;
    }

    std::vector<unsigned long> k(collisions.size(), 0);
    for (;;) {
      Rational coeff = ca * cb;
      Monomial m = base;
      for (size_t i = 0; i < collisions.size(); ++i) {
        if (k[i] == 0) continue;
        const Collision& col = collisions[i];
        coeff *= Rational(factorial(static_cast<long>(k[i])) *
                          binomial(Int(col.b), Int(k[i])) * binomial(Int(col.a), Int(k[i])));
        drop_exponent(m, col.pos, k[i]);
        drop_exponent(m, col.der, k[i]);
      }
      out.add_term(m, coeff);

      // Odometer over 0 <= k_i <= min(b_i, a_i).
      size_t pos = 0;
      while (pos < collisions.size()) {
        unsigned long cap = std::min(collisions[pos].b, collisions[pos].a);
        if (k[pos] < cap) {
          ++k[pos];
          break;
        }
        k[pos] = 0;
        ++pos;
      }
      if (pos == collisions.size()) break;
    }
  }

  static void drop_exponent(Monomial& m, const Variable& v, unsigned long by) {
    auto it = m.find(v);
    it->second -= by;
    if (it->second == 0) m.erase(it);
  }

  std::map<Monomial, Rational> terms_;
};

inline WeylElement commutator(const WeylElement& a, const WeylElement& b) {
  return a * b - b * a;
}

// The Fourier automorphism on generators. Forward sends src positions to dst
// derivations and src derivations to minus dst positions; inverse flips the
// sign placement. Only x variables may spectate.
inline WeylElement fl_automorphism(const WeylElement& e, VarGroup src, VarGroup dst,
                                   bool inverse = false) {
  if (src == dst) fail(ErrorKind::invalid_input, "fl_automorphism: src equals dst");
  if (src == VarGroup::x || dst == VarGroup::x)
    fail(ErrorKind::invalid_input, "fl_automorphism: x is a spectator group");
  WeylElement out;
  for (const auto& [m, c] : e.terms()) {
    WeylElement acc = WeylElement::constant(c);
    for (const auto& [v, exp] : m) {
      WeylElement image;
      if (v.group == VarGroup::x) {
        image = WeylElement::generator(v);
      } else if (v.group == src) {
        if (v.kind == VarKind::position) {
          image = WeylElement::generator(derivation(dst, v.index));
          if (inverse) image = -image;
        } else {
          image = WeylElement::generator(position(dst, v.index));
          if (!inverse) image = -image;
        }
      } else {
        fail(ErrorKind::unsupported,
             std::string("fl_automorphism: unsupported group ") + group_name(v.group) +
                 " in element (only src and x spectators allowed)");
      }
      acc = acc * image.pow(exp);
    }
    out = out + acc;
  }
  return out;
}

}  // namespace monofl
