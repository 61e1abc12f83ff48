#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "monofl/rational.hpp"

namespace monofl {

// Deterministic RNG wrapper. mt19937_64's output sequence is pinned by the
// standard; we avoid std::uniform_int_distribution (implementation-defined)
// so that seeded corpora and CLI output are byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform-ish integer in [lo, hi]; modulo bias is irrelevant at test scale.
  long range(long lo, long hi) {
    if (hi < lo) fail(ErrorKind::domain, "rng range is empty");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool flip() { return (next() & 1) != 0; }

  // Nonzero value in [-bound, bound].
  long nonzero(long bound) {
    long v = range(1, bound);
    return flip() ? v : -v;
  }

  Rational rational(long num_bound, long den_bound) {
    return Rational(Int(range(-num_bound, num_bound)), Int(range(1, den_bound)));
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    if (items.empty()) fail(ErrorKind::domain, "rng pick from empty list");
    return items[static_cast<size_t>(range(0, static_cast<long>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace monofl
