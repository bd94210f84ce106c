#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/rational.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::q;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(to_string(QVector{q(1, 2), 0}) == "(1/2, 0)");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("ratio is canonical") {
  Rational r = ratio(3, 3);
  CHECK(r.get_num() == 1);
  CHECK(r.get_den() == 1);
  CHECK(ratio(-4, 6) == q(-2, 3));
  CHECK(ratio(4, -6).get_den() == 3);
  // Arithmetic on a canonical 2/2 behaves like 1.
  CHECK(Rational(2) * ratio(2, 2) == 2);
}

TEST_CASE("solve carries the right hand side through elimination") {
  QMatrix m{{1, 0}, {0, 1}};
  auto x = solve(m, {1, 1});
  REQUIRE(x);
  CHECK(*x == QVector{1, 1});
  QMatrix a{{2, 1}, {1, 3}};
  auto y = solve(a, {3, 5});
  REQUIRE(y);
  CHECK(a * *y == QVector{3, 5});
  CHECK_FALSE(solve(QMatrix{{1, 2}, {2, 4}}, {1, 1}));
}

TEST_CASE("inverse, determinant, rank, nullspace") {
  QMatrix g{{2, -1}, {-1, 2}};
  CHECK(determinant(g) == 3);
  auto inv = inverse(g);
  REQUIRE(inv);
  CHECK(g * *inv == identity_matrix(2));
  CHECK(rank(QMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
  auto ns = nullspace(QMatrix{{1, 1, 0}}, 3);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + v[1] == 0);
}

TEST_CASE("primitive forms and affine dimension") {
  auto pf = primitive_form({q(2, 3), q(4, 3)});
  CHECK(pf.primitive == std::vector<Integer>{1, 2});
  CHECK(pf.scale == q(2, 3));
  CHECK(primitive_direction({6, -9}) == QVector{2, -3});
  CHECK_THROWS_AS(primitive_form({0, 0}), Error);
  CHECK(affine_dimension({{0, 0}, {1, 1}, {2, 2}}) == 1);
  CHECK(affine_dimension({{0, 0}, {1, 0}, {0, 1}}) == 2);
  CHECK(affine_dimension({}) == -1);
}

TEST_CASE("unimodular completion") {
  QMatrix u = unimodular_completion({2, 3});
  Rational d = determinant(u);
  CHECK((d == 1 || d == -1));
  CHECK(covector_times({2, 3}, u) == QVector{1, 0});
}
