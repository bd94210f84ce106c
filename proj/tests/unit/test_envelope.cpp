#include "doctest.h"
#include "kstab/envelope.hpp"
#include "kstab/error.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::box;
using kstab::testing::load;
using kstab::testing::q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

void check_cells_on_boundary(const EnvelopeResult& e, const Polytope& p) {
  for (const auto& c : e.cells)
    for (const auto& v : c.vertices) CHECK(p.on_boundary(v));
}

}  // namespace

TEST_CASE("planar hull helpers") {
  auto h = convex_hull_2d({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
  CHECK(h.size() == 4);
  CHECK(hull_area({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}}) == 4);
  CHECK(hull_area({{0, 0}, {1, 1}, {2, 2}}) == 0);
  auto p = box(0, 1, 0, 1);
  CHECK(ccw_vertices(p) == std::vector<QVector>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("affine boundary data give the affine function") {
  auto p = box(-1, 1, -1, 1);
  PLFunction a = PLFunction::affine({2, -1}, q(1, 3));
  auto e = convex_envelope(boundary_from_pl(p, a));
  CHECK(e.exact);
  CHECK(kstab::testing::agree_on(p, e.function, a));
  CHECK(e.ma.zero);
  check_cells_on_boundary(e, p);
}

TEST_CASE("|x| boundary data are reproduced exactly") {
  auto p = box(-1, 1, -1, 1);
  PLFunction u({{{1, 0}, 0}, {{-1, 0}, 0}});
  auto e = convex_envelope(boundary_from_pl(p, u));
  CHECK(kstab::testing::agree_on(p, e.function, u));
  CHECK(e.ma.zero);
  check_cells_on_boundary(e, p);
}

TEST_CASE("sampled quadratic boundary data") {
  auto p = box(-1, 1, -1, 1);
  const Rational h = q(1, 16);
  Polynomial g = Polynomial::variable(2, 0) * Polynomial::variable(2, 0) +
                 Polynomial::variable(2, 1) * Polynomial::variable(2, 1);
  auto e = convex_envelope(boundary_from_polynomial(p, g, h));
  CHECK_FALSE(e.exact);
  Rational centre = e.function({0, 0});
  CHECK(centre <= 1 + 2 * h);
  CHECK(centre >= 1 - 2 * h);
  CHECK(e.ma.zero);
  check_cells_on_boundary(e, p);
}

TEST_CASE("concave edge data are refused") {
  auto p = box(-1, 1, -1, 1);
  Polynomial g = Rational(-1) * Polynomial::variable(2, 0) * Polynomial::variable(2, 0);
  CHECK(code_of([&] { convex_envelope(boundary_from_polynomial(p, g, q(1, 4))); }) == ErrorCode::NonConvexEdgeData);
}

TEST_CASE("Monge-Ampere mass of a planted cone") {
  auto p = box(-1, 1, -1, 1);
  PLFunction cone({{{1, 0}, 0}, {{-1, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 0}});
  auto m = ma_measure_zero_check(cone, p);
  CHECK_FALSE(m.zero);
  REQUIRE(m.offending.size() == 1);
  CHECK(m.offending[0] == QVector{0, 0});
  for (const auto& vm : m.masses)
    if (vm.vertex == QVector{0, 0}) CHECK(vm.mass == 2);
  // The envelope of the cone's boundary values is flatter and carries no
  // interior mass.
  auto e = convex_envelope(boundary_from_pl(p, cone));
  CHECK(e.ma.zero);
  CHECK(e.function({0, 0}) == 1);
}

TEST_CASE("W-dominate functions and their extensions") {
  auto ctx = load("rank2_kstable").ctx;
  CHECK(is_w_dominate(ctx.rd(), PLFunction::simple({1, 0}, 1), ctx.plus()));
  CHECK_FALSE(is_w_dominate(ctx.rd(), PLFunction::affine({-1, 0}), ctx.plus()));
  CHECK(w_extension_convex(ctx.rd(), PLFunction::simple({1, 0}, 1), ctx.plus()));
  CHECK_FALSE(w_extension_convex(ctx.rd(), PLFunction::affine({-1, 0}), ctx.plus()));
}

TEST_CASE("crease search recovers the planted crease") {
  auto t = load("synthetic_crease");
  auto r = crease_search(t.ctx, t.problem.crease->function, KernelFunctional::Fano);
  CHECK(r.z_o == QVector{0, 0});
  CHECK(r.contact_dim == 2);
  bool found = false;
  for (const auto& c : r.candidates) {
    if (c.normal == QVector{1, 0} && c.lambda == 1) {
      found = true;
      CHECK(c.dominant);
      REQUIRE(c.value);
      CHECK(*c.value == 0);
    }
  }
  CHECK(found);
}

TEST_CASE("crease search refuses non-kernel input") {
  auto t = load("rank2_kstable");
  CHECK(code_of([&] { crease_search(t.ctx, PLFunction::simple({1, 0}, 1), KernelFunctional::Fano); }) ==
        ErrorCode::NotAKernelElement);
}
