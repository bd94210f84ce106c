#include "doctest.h"
#include "kstab/polynomial.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::q;

namespace {
Polynomial x() { return Polynomial::variable(2, 0); }
Polynomial y() { return Polynomial::variable(2, 1); }
}  // namespace

TEST_CASE("multivariate arithmetic and evaluation") {
  Polynomial p = x() * x() + Rational(3) * x() * y() - Polynomial::constant(2, 1);
  CHECK(p.degree() == 2);
  CHECK(p.evaluate({2, q(1, 3)}) == 4 + 2 - 1);
  CHECK(p.coefficient({1, 1}) == 3);
  CHECK((p - p).is_zero());
  CHECK(p.derivative(0) == Rational(2) * x() + Rational(3) * y());
  CHECK(p.directional_derivative({1, 0}) == p.derivative(0));
  CHECK((x() + y()).pow(2) == x() * x() + Rational(2) * x() * y() + y() * y());
}

TEST_CASE("affine substitution") {
  Polynomial p = x() * y();
  // (1 + t, 2 - t) in one variable t.
  Polynomial s = p.substitute_affine({{1}, {-1}}, {1, 2});
  CHECK(s.arity() == 1);
  CHECK(s.evaluate(QVector{3}) == 4 * -1);
}

TEST_CASE("univariate interpolation reproduces polynomials") {
  UPoly f({q(1, 2), -3, 0, q(2, 7)});
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.push_back(ratio(2 * i - 3, 3));
    ys.push_back(f(xs.back()));
  }
  CHECK(UPoly::interpolate(xs, ys) == f);
}

TEST_CASE("division, gcd and square-free part") {
  UPoly a = UPoly({-1, 1}) * UPoly({-1, 1}) * UPoly({2, 1});
  auto [quot, rem] = UPoly::divmod(a, UPoly({-1, 1}));
  CHECK(rem.is_zero());
  CHECK(quot == UPoly({-1, 1}) * UPoly({2, 1}));
  CHECK(a.square_free() == UPoly({-1, 1}) * UPoly({2, 1}));
}

TEST_CASE("root counting and isolation") {
  UPoly p = UPoly({-2, 0, 1}) * UPoly({-1, 2});  // roots +-sqrt 2 and 1/2
  CHECK(count_roots(p, -2, 2) == 3);
  CHECK(count_roots(p, 0, 1) == 1);
  auto roots = isolate_roots(p, -2, 2, default_root_width());
  REQUIRE(roots.size() == 3);
  CHECK_FALSE(roots[0].exact);
  CHECK(roots[1].exact);
  CHECK(roots[1].lo == q(1, 2));
  CHECK(roots[2].approx() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(roots[2].hi - roots[2].lo < default_root_width());
  // Roots at the interval ends are reported exactly.
  auto ends = isolate_roots(UPoly({0, 1}) * UPoly({-1, 1}), 0, 1, default_root_width());
  REQUIRE(ends.size() == 2);
  CHECK(ends[0].exact);
  CHECK(ends[1].lo == 1);
}

TEST_CASE("piecewise polynomials") {
  PiecewisePolynomial1D f;
  f.breakpoints = {0, 1};
  f.pieces = {UPoly(), UPoly({0, 0, 1}), UPoly({0, 2, -1})};
  CHECK(f(q(1, 2)) == q(1, 4));
  CHECK(f(2) == 0);
  CHECK(f.piece_index(1) == 1);
  CHECK(f.is_continuous());
  auto d = f.derivative();
  CHECK(d(q(1, 2)) == 1);
  f.pieces[2] = UPoly({3});
  CHECK_FALSE(f.is_continuous());
}
