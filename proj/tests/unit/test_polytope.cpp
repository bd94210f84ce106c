#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/polytope.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::box;
using kstab::testing::hs;
using kstab::testing::q;

namespace {

RootDatum a1() { return RootDatum(2, identity_matrix(2), {{1, 0}, {1, 0}}, {1, 0}, {{1, 0}}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("vertex enumeration of a square with a redundant constraint") {
  auto p = Polytope::from_halfspaces({hs({1, 0}, 1), hs({-1, 0}, 1), hs({0, 1}, 1), hs({0, -1}, 1), hs({1, 1}, 5),
                                      hs({2, 0}, 2)},
                                     2);
  CHECK(p.vertices() == std::vector<QVector>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
  CHECK(p.halfspaces().size() == 4);
  CHECK(p.contains({q(1, 2), -1}));
  CHECK(p.on_boundary({q(1, 2), -1}));
  CHECK_FALSE(p.on_boundary({0, 0}));
  CHECK(p.vertex_average() == QVector{0, 0});
}

TEST_CASE("normals are made primitive") {
  auto p = Polytope::from_halfspaces({hs({2, 0}, 3), hs({-1, 0}, 0), hs({0, 3}, 3), hs({0, -1}, 1)}, 2);
  CHECK(p.find_facet({{1, 0}, q(3, 2)}));
  CHECK(p.find_facet({{0, 1}, 1}));
}

TEST_CASE("degenerate systems raise the documented errors") {
  CHECK(code_of([] { Polytope::from_halfspaces({hs({1, 0}, 1), hs({-1, 0}, 1), hs({0, 1}, 1)}, 2); }) ==
        ErrorCode::Unbounded);
  CHECK(code_of([] { Polytope::from_halfspaces({hs({1, 0}, -1), hs({-1, 0}, -1), hs({0, 1}, 1), hs({0, -1}, 1)}, 2); }) ==
        ErrorCode::Empty);
  CHECK(code_of([] { Polytope::from_halfspaces({hs({1, 0}, 0), hs({-1, 0}, 0), hs({0, 1}, 1), hs({0, -1}, 1)}, 2); }) ==
        ErrorCode::LowerDimensional);
}

TEST_CASE("hull of points agrees with the halfspace description") {
  auto p = Polytope::from_vertices({{0, 0}, {2, 0}, {0, 1}, {1, 1}, {1, q(1, 2)}});
  auto h = Polytope::from_halfspaces(p.halfspaces(), 2);
  CHECK(p == h);
  CHECK(p.vertices().size() == 4);
}

TEST_CASE("planar and general vertex enumeration agree in three dimensions") {
  // Cube cut by one corner plane.
  std::vector<Halfspace> cube;
  for (std::size_t i = 0; i < 3; ++i) {
    cube.push_back({unit_vector(3, i), 1});
    cube.push_back({-unit_vector(3, i), 0});
  }
  cube.push_back({{1, 1, 1}, q(5, 2)});
  auto v = enumerate_vertices(cube, 3);
  CHECK(v.size() == 10);
}

TEST_CASE("intersection with a halfspace") {
  auto p = box(0, 2, -1, 1);
  auto cut = p.intersect_halfspace({1, 0}, 1);
  CHECK(cut == box(1, 2, -1, 1));
  CHECK(code_of([&] { p.intersect_halfspace({1, 0}, 3); }) == ErrorCode::Empty);
  CHECK(code_of([&] { p.intersect_halfspace({1, 0}, 2); }) == ErrorCode::LowerDimensional);
}

TEST_CASE("restriction to the chamber classifies facets") {
  RootDatum rd = a1();
  auto cp = restrict_to_chamber(box(-2, 2, -1, 1), rd);
  CHECK(cp.plus == box(0, 2, -1, 1));
  CHECK(cp.wall_facets.size() == 1);
  CHECK(cp.outer_facets.size() == 3);
  for (auto f : cp.wall_facets) CHECK_FALSE(cp.is_outer(f));
  CHECK(code_of([&] { restrict_to_chamber(box(-1, 2, -1, 1), rd); }) == ErrorCode::NotWeylInvariant);
}

TEST_CASE("Weyl extension: convex and planted nonconvex cases") {
  RootDatum rd = a1();
  auto ok = weyl_extension_convexity({hs({1, 0}, q(4, 3)), hs({-1, 0}, 0), hs({0, 1}, 1), hs({0, -1}, 1)}, rd);
  CHECK(ok.convex);
  CHECK(ok.hull == box(q(-4, 3), q(4, 3), -1, 1));
  REQUIRE(ok.chamber);
  CHECK(ok.chamber->plus == box(0, q(4, 3), -1, 1));

  auto bad = weyl_extension_convexity({hs({0, -1}, 0), hs({1, 0}, 1), hs({-1, 1}, 0)}, rd);
  CHECK_FALSE(bad.convex);
  REQUIRE(bad.witness);
  // The witness is in the hull but in no W-translate of P+.
  CHECK(bad.hull.contains(*bad.witness));
  for (const auto& w : rd.group()) {
    auto inv = *inverse(w);
    CHECK_FALSE(bad.plus.contains(inv * *bad.witness));
  }
}

TEST_CASE("polytope from divisor data") {
  RootDatum toric(2, identity_matrix(2), {}, {0, 0}, {});
  auto res = polytope_from_divisor(toric, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}, true);
  CHECK(res.chamber.plus == box(-1, 1, -1, 1));

  RootDatum rd = a1();
  auto r2 = polytope_from_divisor(rd, {{{-1, 0}, 2}, {{0, 1}, 1}, {{0, -1}, 1}}, true);
  CHECK(r2.chamber.plus == box(0, 2, -1, 1));
  CHECK(r2.chamber.base == box(-2, 2, -1, 1));
  // (1, 0) pairs positively with the simple root, so it is not in the valuation cone.
  CHECK(code_of([&] { polytope_from_divisor(rd, {{{1, 0}, 2}}, true); }) == ErrorCode::InvalidInput);
}
