#include <catch2/catch_amalgamated.hpp>

#include "monofl/filtration.hpp"
#include "monofl/rng.hpp"

using namespace monofl;

namespace {

Subspace span_rows(const std::vector<std::vector<Rational>>& rows, long ambient) {
  if (rows.empty()) return Subspace::zero(ambient);
  return Subspace::from_rows(RatMatrix::from_rows(rows));
}

Filtration random_filtration(Rng& rng, long ambient) {
  // Build an increasing chain by adding random vectors step by step.
  std::map<long, Subspace> jumps;
  Subspace cur = Subspace::zero(ambient);
  long idx = rng.range(-3, 3);
  while (!cur.is_full()) {
    std::vector<Rational> v(static_cast<size_t>(ambient));
    for (auto& e : v) e = Rational(rng.range(-2, 2));
    Subspace next = cur.sum(Subspace::from_rows(RatMatrix::from_rows({v})));
    if (next.dim() > cur.dim()) {
      cur = next;
      jumps[idx] = cur;
    }
    idx += rng.range(1, 2);
  }
  return Filtration::from_jumps(ambient, jumps);
}

}  // namespace

TEST_CASE("value_at steps through the jumps") {
  long n = 3;
  Subspace s1 = span_rows({{Rational(1), Rational(0), Rational(0)}}, n);
  Subspace s2 = span_rows({{Rational(1), Rational(0), Rational(0)},
                           {Rational(0), Rational(1), Rational(0)}},
                          n);
  Filtration f = Filtration::from_jumps(
      n, {{-1, s1}, {2, s2}, {5, Subspace::full(n)}});
  REQUIRE(f.value_at(-2).is_zero());
  REQUIRE(f.value_at(-1) == s1);
  REQUIRE(f.value_at(0) == s1);
  REQUIRE(f.value_at(1) == s1);
  REQUIRE(f.value_at(2) == s2);
  REQUIRE(f.value_at(4) == s2);
  REQUIRE(f.value_at(5).is_full());
  REQUIRE(f.value_at(100).is_full());
  REQUIRE(f.min_jump() == -1);
  REQUIRE(f.max_jump() == 5);
}

TEST_CASE("from_jumps validates monotonicity and exhaustion") {
  long n = 2;
  Subspace a = span_rows({{Rational(1), Rational(0)}}, n);
  Subspace b = span_rows({{Rational(0), Rational(1)}}, n);
  REQUIRE_THROWS_AS(Filtration::from_jumps(n, {{0, a}, {1, b}}), Error);
  REQUIRE_THROWS_AS(Filtration::from_jumps(n, {{0, a}}), Error);
}

TEST_CASE("shift moves jump indices") {
  Rng rng(660);
  for (int trial = 0; trial < 30; ++trial) {
    long n = rng.range(1, 4);
    Filtration f = random_filtration(rng, n);
    long s = rng.range(-3, 3);
    Filtration g = f.shift(s);
    for (long p = -8; p <= 8; ++p) REQUIRE(g.value_at(p) == f.value_at(p - s));
  }
}

TEST_CASE("graded dimensions sum to the ambient dimension") {
  Rng rng(661);
  for (int trial = 0; trial < 30; ++trial) {
    long n = rng.range(1, 5);
    Filtration f = random_filtration(rng, n);
    long total = 0;
    for (auto& [idx, d] : f.graded_dims()) {
      REQUIRE(d > 0);
      total += d;
    }
    REQUIRE(total == n);
  }
}

TEST_CASE("induced filtrations on subobjects and quotients") {
  Rng rng(662);
  for (int trial = 0; trial < 40; ++trial) {
    long n = rng.range(2, 5);
    Filtration f = random_filtration(rng, n);
    // Random subspace; retry if trivial cases make the quotient empty.
    RatMatrix gen(rng.range(1, 3), n);
    for (long i = 0; i < gen.rows(); ++i)
      for (long j = 0; j < n; ++j) gen.at(i, j) = Rational(rng.range(-2, 2));
    Subspace s = Subspace::from_rows(gen);

    if (s.dim() > 0) {
      Filtration sub = f.induced_on_sub(s);
      // F_p(S) = F_p cap S, expressed in the basis of S.
      for (long p = f.min_jump() - 1; p <= f.max_jump() + 1; ++p) {
        Subspace expect = f.value_at(p).intersect(s);
        Subspace got_in_ambient =
            sub.value_at(p).image_under(s.basis().transpose());
        REQUIRE(got_in_ambient == expect);
      }
    }
    if (s.dim() < n) {
      Filtration quo = f.induced_on_quotient(s);
      RatMatrix q = s.quotient_map();
      for (long p = f.min_jump() - 1; p <= f.max_jump() + 1; ++p) {
        REQUIRE(quo.value_at(p) == f.value_at(p).image_under(q));
      }
    }
  }
}

TEST_CASE("single jump filtration") {
  Filtration f = Filtration::single_jump(4, 7);
  REQUIRE(f.value_at(6).is_zero());
  REQUIRE(f.value_at(7).is_full());
  REQUIRE(f.graded_dims() == std::map<long, long>{{7, 4}});
}
