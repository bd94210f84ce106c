#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/futaki.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::load;
using kstab::testing::q;

TEST_CASE("toric square: mean scalar and the simple function max{x, 0}") {
  auto t = load("toric_square");
  CHECK(t.ctx.volume() == 4);
  CHECK(t.ctx.mean_scalar() == 2);
  CHECK(futaki_L(t.ctx, PLFunction::simple({1, 0}, 0)) == q(1, 4));
  // Ehrhart polynomial of [-k, k]^2 is 4k^2 + 4k + 1.
  CHECK(t.ctx.h0_leading() == 4);
  CHECK(t.ctx.h0_subleading() == 4);
}

TEST_CASE("L vanishes on affine functions of a cscK polytope") {
  for (const char* name : {"toric_square", "toric_rectangle"}) {
    auto t = load(name);
    CHECK(futaki_L(t.ctx, PLFunction::affine({0, 0}, 1)) == 0);
    CHECK(futaki_L(t.ctx, PLFunction::affine({1, 0})) == 0);
    CHECK(futaki_L(t.ctx, PLFunction::affine({0, 1})) == 0);
    CHECK(is_zero(t.ctx.extremal().x));
  }
}

TEST_CASE("Hirzebruch trapezoid has a nonzero extremal field") {
  auto t = load("toric_hirzebruch");
  CHECK(t.ctx.extremal().x == QVector{0, q(-24, 13)});
  CHECK(futaki_L(t.ctx, PLFunction::affine({0, 1})) != 0);
  CHECK(relative_futaki_identity(t.ctx, PLFunction::affine({0, 1})) == 0);
  CHECK(relative_futaki_identity(t.ctx, PLFunction::affine({1, 0})) == 0);
}

TEST_CASE("flux form of L_X agrees with the defining identity") {
  for (const auto& name : kstab::testing::context_catalog()) {
    auto t = load(name);
    const std::size_t r = t.ctx.rd().rank();
    std::vector<PLFunction> us{PLFunction::affine(zeros(r), 1)};
    for (const auto& w : t.ctx.rd().fundamental_weights()) {
      QVector c = t.ctx.rd().covector_of(w);
      us.push_back(PLFunction::simple(c, q(1, 3)));
      us.push_back(PLFunction::affine(c));
    }
    for (const auto& u : us) {
      CAPTURE(name);
      CHECK(relative_futaki(t.ctx, u) == relative_futaki_identity(t.ctx, u));
    }
  }
}

TEST_CASE("shift policy does not change the value") {
  auto p = kstab::testing::catalog_problem("rank2_strict_ss");
  auto w = build_workspace(p);
  auto shifted = build_context(p, w);
  p.options.shift = false;
  auto plain = build_context(p, w);
  PLFunction u = PLFunction::simple({1, 0}, q(1, 2));
  CHECK(relative_futaki(shifted, u) == relative_futaki_identity(plain, u));
}

TEST_CASE("non-dominant test functions are rejected") {
  auto t = load("rank2_kstable");
  try {
    futaki_L(t.ctx, PLFunction::affine({-1, 0}));
    FAIL("expected NotDominant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDominant);
  }
}

TEST_CASE("Theta function of the rank one model") {
  auto t = load("rank2_strict_ss");
  auto th = theta_function(t.ctx);
  // One pole per restricted root counted with multiplicity, each with
  // coefficient <alpha, 2 rho> = 1.
  REQUIRE(th.poles.size() == 2);
  for (const auto& p : th.poles) CHECK(p.coefficient == 1);
  CHECK(th.constant == t.ctx.mean_scalar() + t.ctx.extremal().c);
  REQUIRE(th.strip);
  CHECK(th.strip->bound == 2 / th.constant);
  CHECK(th.sign_at({q(1, 100), 0}) < 0);
  CHECK(th.sign_at({1, 0}) > 0);
  CHECK(theta_negative_on_segment(th, {q(1, 100), -1}, {q(1, 100), 1}));
  CHECK_FALSE(theta_negative_on_segment(th, {1, -1}, {1, 1}));
}
