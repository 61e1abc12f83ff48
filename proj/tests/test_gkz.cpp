#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "monofl/gkz.hpp"
#include "monofl/weyl_text.hpp"

using namespace monofl;

namespace {

GkzSystem twisted_cubic() {
  return gkz_construct(IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}}),
                       {Rational(0), Rational(0)});
}

}  // namespace

TEST_CASE("running example: kernel, box, Euler operators, flags") {
  GkzSystem sys = twisted_cubic();
  REQUIRE(sys.lattice_basis.size() == 1);
  bool plus = sys.lattice_basis[0] == std::vector<Int>{1, -2, 1};
  bool minus = sys.lattice_basis[0] == std::vector<Int>{-1, 2, -1};
  REQUIRE((plus || minus));
  REQUIRE(sys.boxes.size() == 1);
  REQUIRE(sys.boxes[0] == parse_weyl("d1*d3 - d2^2"));
  REQUIRE(print_weyl(sys.boxes[0]) == "d1*d3 - d2^2");
  REQUIRE(sys.eulers.size() == 2);
  REQUIRE(sys.eulers[0] == parse_weyl("l1*d1 + l2*d2 + l3*d3"));
  REQUIRE(sys.eulers[1] == parse_weyl("l2*d2 + 2*l3*d3"));
  REQUIRE(sys.flags.homogeneous);
  REQUIRE(sys.flags.pointed);
  REQUIRE(sys.flags.columns_span);
}

TEST_CASE("beta enters the Euler operators with a minus sign") {
  GkzSystem sys = gkz_construct(IntMatrix::from_rows({{1, 1}}), {Rational(1, 2)});
  REQUIRE(sys.eulers[0] == parse_weyl("l1*d1 + l2*d2 - 1/2"));
  REQUIRE(sys.lattice_basis.size() == 1);
  // kernel (1, -1) keeps degrees balanced even though beta is fractional
  REQUIRE(sys.boxes[0] == parse_weyl("d1 - d2"));
  REQUIRE(homogeneity_degree_check(sys).passed);
}

TEST_CASE("euler box commutators vanish up to the weight of the box") {
  GkzSystem sys = twisted_cubic();
  Report rep = euler_box_commutators(sys);
  REQUIRE(rep.passed);
  // [E_k, box] = -2 box for both rows here
  WeylElement e1 = sys.eulers[0], b = sys.boxes[0];
  REQUIRE(commutator(e1, b) == b.scaled(Rational(-2)));
  REQUIRE(commutator(sys.eulers[1], b) == b.scaled(Rational(-2)));
}

TEST_CASE("a square invertible matrix gives no boxes at all") {
  GkzSystem sys = gkz_construct(IntMatrix::identity(2), {Rational(1), Rational(2)});
  REQUIRE(sys.lattice_basis.empty());
  REQUIRE(sys.boxes.empty());
  REQUIRE(euler_box_commutators(sys).passed);
  REQUIRE(sys.flags.homogeneous);
  REQUIRE(sys.flags.pointed);
  REQUIRE(sys.flags.columns_span);
}

TEST_CASE("unbalanced box from a non-homogeneous single row") {
  GkzSystem sys = gkz_construct(IntMatrix::from_rows({{1, 2}}), {Rational(1, 2)});
  REQUIRE(sys.lattice_basis.size() == 1);
  // kernel (2, -1), oriented so the printed leading term is positive
  REQUIRE(sys.boxes[0] == parse_weyl("d1^2 - d2"));
  REQUIRE(!sys.flags.homogeneous);
  Report rep = homogeneity_degree_check(sys);
  REQUIRE(rep.passed);
  REQUIRE(euler_box_commutators(sys).passed);
}

TEST_CASE("scaled lattice points break the integral grading witness") {
  // rational witness y = (1/2, 1/2) exists but no integral one
  GkzSystem sys =
      gkz_construct(IntMatrix::from_rows({{2, 0}, {0, 2}}), {Rational(0), Rational(0)});
  REQUIRE(!sys.flags.homogeneous);
  REQUIRE(sys.flags.pointed);
  REQUIRE(!sys.flags.columns_span);
}

TEST_CASE("balanced boxes without an integral witness are flagged in the notes") {
  GkzSystem sys = gkz_construct(IntMatrix::from_rows({{2, 2}}), {Rational(0)});
  REQUIRE(!sys.flags.homogeneous);
  Report rep = homogeneity_degree_check(sys);
  REQUIRE(rep.passed);
  bool noted = false;
  for (const auto& n : rep.notes)
    noted = noted || n.find("without an integral grading witness") != std::string::npos;
  REQUIRE(noted);
}

TEST_CASE("pointedness detects cancelling columns and zero columns") {
  REQUIRE(!is_pointed(IntMatrix::from_rows({{1, -1}})));
  REQUIRE(!is_pointed(IntMatrix::from_rows({{1, 0}})));
  REQUIRE(is_pointed(IntMatrix::from_rows({{1, 1}})));
  REQUIRE(is_pointed(IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}})));
  // three vectors positively spanning the plane are not pointed
  REQUIRE(!is_pointed(IntMatrix::from_rows({{1, 0, -1}, {0, 1, -1}})));
}

TEST_CASE("column span needs the cokernel to vanish") {
  REQUIRE(columns_span(IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}})));
  REQUIRE(!columns_span(IntMatrix::from_rows({{2, 0}, {0, 1}})));
  REQUIRE(columns_span(IntMatrix::from_rows({{1, 1}})));
  REQUIRE(!columns_span(IntMatrix::from_rows({{2, 2}})));
  REQUIRE(columns_span(IntMatrix::from_rows({{1, 2}})));
}

TEST_CASE("transform of the generators is an automorphism round trip") {
  GkzSystem sys = twisted_cubic();
  GkzFourier four = fourier_transform_generators(sys);
  REQUIRE(four.report.passed);
  REQUIRE(four.primary.size() == sys.boxes.size() + sys.eulers.size());
  REQUIRE(four.primary[0] == parse_weyl("m1*m3 - m2^2"));
  // the conventions differ only on odd-degree terms, and everything here is even
  REQUIRE(four.alternate[0] == four.primary[0]);
  for (size_t g = 0; g < four.primary.size(); ++g) {
    WeylElement back =
        fl_automorphism(four.primary[g], VarGroup::mu, VarGroup::lambda, false);
    WeylElement original = g == 0 ? sys.boxes[0] : sys.eulers[g - 1];
    REQUIRE(back == original);
  }
}

TEST_CASE("transformed boxes vanish on the torus orbit") {
  GkzSystem sys = twisted_cubic();
  Report rep = toric_vanishing(sys, 25, 99);
  REQUIRE(rep.passed);
  // a corrupted box must be caught
  GkzSystem bad = sys;
  bad.boxes[0] = parse_weyl("d1*d3 - 2*d2^2");
  REQUIRE(!toric_vanishing(bad, 5, 99).passed);
}

TEST_CASE("enumeration finds the basis vector and respects the bound") {
  IntMatrix a = IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}});
  auto found = enumerate_boxes(a, 4);
  REQUIRE(found.size() == 1);
  GkzSystem sys = twisted_cubic();
  REQUIRE(found[0] == sys.lattice_basis[0]);
  // doubling the bound admits the doubled vector too
  REQUIRE(enumerate_boxes(a, 8).size() == 2);
  REQUIRE(enumerate_boxes(IntMatrix::identity(3), 6).empty());
}

TEST_CASE("kernel data is basis independent up to unimodular change") {
  // post-composing with a unimodular matrix keeps the kernel lattice equal
  IntMatrix a = IntMatrix::from_rows({{1, 1, 1}, {0, 1, 2}});
  IntMatrix u = IntMatrix::from_rows({{1, 1}, {0, 1}});
  IntMatrix ua = u * a;
  GkzSystem left = gkz_construct(a, {Rational(0), Rational(0)});
  GkzSystem right = gkz_construct(ua, {Rational(0), Rational(0)});
  REQUIRE(left.lattice_basis == right.lattice_basis);
  REQUIRE(left.boxes.size() == right.boxes.size());
  REQUIRE(left.boxes[0] == right.boxes[0]);
  REQUIRE(left.flags.columns_span == right.flags.columns_span);
  REQUIRE(left.flags.pointed == right.flags.pointed);
  REQUIRE(left.flags.homogeneous == right.flags.homogeneous);
}

TEST_CASE("construction rejects malformed input") {
  REQUIRE_THROWS_AS(gkz_construct(IntMatrix(2, 2), {Rational(0), Rational(0)}), Error);
  REQUIRE_THROWS_AS(gkz_construct(IntMatrix::from_rows({{1, 1}}), {}), Error);
  REQUIRE_THROWS_AS(
      gkz_construct(IntMatrix::from_rows({{1, 1}}), {Rational(0), Rational(0)}), Error);
}
