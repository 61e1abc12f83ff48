#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "monofl/rmf.hpp"
#include "monofl/rng.hpp"
#include "support/rmf_oracle.hpp"

using namespace monofl;
using monofl_test::count_admissible;
using monofl_test::jordan_block;
using monofl_test::subspace_lattice;

TEST_CASE("monodromy filtration of a full Jordan block") {
  RatMatrix n = jordan_block(3);
  Filtration w = monodromy_filtration(n, 0);
  REQUIRE(w.jump_indices() == std::vector<long>{-2, 0, 2});
  REQUIRE(w.value_at(-2).dim() == 1);
  REQUIRE(w.value_at(0).dim() == 2);
  REQUIRE(w.value_at(2).dim() == 3);
  // the centered jumps follow the center
  REQUIRE(monodromy_filtration(n, 5).jump_indices() == std::vector<long>{3, 5, 7});
  // weight -2 part is the image of n squared
  REQUIRE(w.value_at(-2) == Subspace::from_rows((n * n).transpose()));
  REQUIRE(w.value_at(0) == Subspace::from_rows(n.transpose()));
}

TEST_CASE("monodromy filtration properties hold for random nilpotents") {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    long dim = rng.range(1, 4);
    RatMatrix n(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = i + 1; j < dim; ++j) n.at(i, j) = rng.rational(3, 2);
    long center = rng.range(-2, 2);
    Filtration w = monodromy_filtration(n, center);
    REQUIRE(verify_rmf(n, Filtration::single_jump(dim, 0), center, w).passed);
  }
}

TEST_CASE("relative filtration for a trivial weight input is the monodromy filtration") {
  RatMatrix n = jordan_block(3);
  RmfResult res = rmf(n, Filtration::single_jump(3, 4), 0);
  REQUIRE(res.exists);
  REQUIRE(res.w == monodromy_filtration(n, 4));
}

TEST_CASE("zero nilpotent re-indexes the weights by the center") {
  Rng rng(72);
  RatMatrix n(3, 3);
  Filtration l = Filtration::from_jumps(
      3, {{-1, Subspace::span_of({{Rational(1), Rational(0), Rational(0)}}, 3)},
          {2, Subspace::full(3)}});
  RmfResult res = rmf(n, l, 5);
  REQUIRE(res.exists);
  REQUIRE(res.w == l.shift(5));
}

TEST_CASE("pinned two-step existence case") {
  RatMatrix n = jordan_block(2);
  Subspace im = Subspace::from_rows(n.transpose());
  Filtration l = Filtration::from_jumps(2, {{-1, im}, {1, Subspace::full(2)}});
  RmfResult res = rmf(n, l, 0);
  REQUIRE(res.exists);
  REQUIRE(res.w.jump_indices() == std::vector<long>{-1, 1});
  REQUIRE(res.w.value_at(-1) == im);
}

TEST_CASE("pinned nonexistence witness") {
  RatMatrix n = jordan_block(2);
  Subspace im = Subspace::from_rows(n.transpose());
  Filtration l = Filtration::from_jumps(2, {{-1, im}, {0, Subspace::full(2)}});
  RmfResult res = rmf(n, l, 0);
  REQUIRE(!res.exists);
  REQUIRE(!res.reason.empty());
}

TEST_CASE("second pinned nonexistence witness with the kernel below") {
  RatMatrix n = jordan_block(2);
  Subspace ker = Subspace::from_rows(n.nullspace_rows());
  Filtration l = Filtration::from_jumps(2, {{0, ker}, {1, Subspace::full(2)}});
  REQUIRE(!rmf(n, l, 0).exists);
}

TEST_CASE("input contracts") {
  RatMatrix not_nilpotent = RatMatrix::identity(2);
  REQUIRE_THROWS_AS(rmf(not_nilpotent, Filtration::single_jump(2, 0), 0), Error);
  RatMatrix n = jordan_block(2);
  Subspace unstable = Subspace::span_of({{Rational(0), Rational(1)}}, 2);
  Filtration l = Filtration::from_jumps(2, {{0, unstable}, {1, Subspace::full(2)}});
  REQUIRE_THROWS_AS(rmf(n, l, 0), Error);
}

namespace {

void brute_force_check(const RatMatrix& n, const Filtration& l, long center) {
  RmfResult res = rmf(n, l, center);
  std::vector<Subspace> extra;
  if (res.exists)
    for (const auto& [idx, sub] : res.w.jumps()) extra.push_back(sub);
  std::set<Subspace> lattice = subspace_lattice(n, l, extra);
  if (lattice.size() > 40) return;  // keep the exhaustive walk cheap

  Filtration found = Filtration::from_jumps(0, {});
  long admissible = count_admissible(n, l, center, lattice, &found);
  if (res.exists) {
    REQUIRE(admissible == 1);
    REQUIRE(found == res.w);
  } else {
    REQUIRE(admissible == 0);
  }
}

}  // namespace

TEST_CASE("brute force over the subspace lattice agrees and pins uniqueness") {
  // both outcomes pinned first, then random instances
  RatMatrix j2 = jordan_block(2);
  Subspace im = Subspace::from_rows(j2.transpose());
  brute_force_check(
      j2, Filtration::from_jumps(2, {{-1, im}, {1, Subspace::full(2)}}), 0);
  brute_force_check(
      j2, Filtration::from_jumps(2, {{-1, im}, {0, Subspace::full(2)}}), 0);

  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    long dim = rng.range(2, 3);
    RatMatrix n(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = i + 1; j < dim; ++j)
        if (rng.flip()) n.at(i, j) = Rational(rng.nonzero(2));
    long center = rng.range(-1, 1);

    std::set<Subspace> pool = subspace_lattice(n, Filtration::single_jump(dim, 0), {});
    std::map<long, Subspace> values;
    long jump = rng.range(-1, 0);
    for (const Subspace& s : pool) {
      if (s.is_zero()) continue;
      if (!values.empty() && !s.contains(values.rbegin()->second)) continue;
      if (!values.empty() && s == values.rbegin()->second) continue;
      if (rng.flip()) continue;
      values[jump] = s;
      jump += rng.range(1, 2);
    }
    if (values.empty() || !values.rbegin()->second.is_full())
      values[jump] = Subspace::full(dim);
    Filtration l = Filtration::from_jumps(dim, values);

    brute_force_check(n, l, center);
  }
}
