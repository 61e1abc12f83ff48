#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "monofl/error.hpp"

namespace monofl {

// Arbitrary-precision exact scalars. cpp_rational keeps every value in lowest
// terms with a positive denominator, which is exactly the contract the rest
// of the library (canonical forms, byte-stable serialization) relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline Int denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// The two-integer cpp_rational constructor rejects negative denominators, so
// route all num/den pairs through here.
inline Rational make_rational(Int num, Int den) {
  if (den == 0) fail(ErrorKind::domain, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

// Floor division for cpp_int (operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

inline Int ceil_rat(const Rational& q) { return -floor_rat(-q); }

// Fits-in-long guards for indices derived from rationals (window arithmetic).
inline long to_long(const Int& v) {
  if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
    fail(ErrorKind::domain, "integer out of index range: " + v.str());
  return static_cast<long>(v);
}

inline std::string to_string(const Rational& q) {
  Int num = numerator(q);
  Int den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Int& v) { return v.str(); }

// Accepts "p" or "p/q" with optional leading minus; q > 0 after parsing.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(ErrorKind::parse, "empty rational literal");
  auto check_digits = [&](const std::string& s) {
    if (s.empty()) fail(ErrorKind::parse, "bad rational literal: " + text);
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) fail(ErrorKind::parse, "bad rational literal: " + text);
    for (size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail(ErrorKind::parse, "bad rational literal: " + text);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    check_digits(text);
    return Rational(Int(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  check_digits(num);
  check_digits(den);
  if (den[0] == '-' || den[0] == '+')
    fail(ErrorKind::parse, "signed denominator: " + text);
  Int d(den);
  if (d == 0) fail(ErrorKind::parse, "zero denominator: " + text);
  return Rational(Int(num), d);
}

inline Int binomial(const Int& n, const Int& k) {
  if (k < 0 || k > n) return 0;
  Int result = 1;
  for (Int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

inline Int factorial(long n) {
  Int result = 1;
  for (long i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace monofl
