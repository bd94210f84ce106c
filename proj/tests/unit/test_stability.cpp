#include <cmath>
#include <set>

#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/integrate.hpp"
#include "kstab/stability.hpp"
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

FutakiContext toric_context(const Polytope& p, const QVector& two_rho) {
  RootDatum rd(2, identity_matrix(2), {}, two_rho, {});
  return FutakiContext::build(rd, restrict_to_chamber(p, rd));
}

// Root of int_0^1 (x - b) e^{v x} dx = 0 by bisection on the closed form.
double scalar_soliton(double b) {
  auto g = [b](double v) {
    if (std::abs(v) < 1e-8) return 0.5 - b;
    const double e = std::exp(v);
    return (e * (v - 1) + 1) / (v * v) - b * (e - 1) / v;
  };
  double lo = -50, hi = 50;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("Fano normalization check") {
  CHECK(check_fano(load("toric_square").ctx).fano);
  CHECK(check_fano(load("a2_hexagon").ctx).fano);
  CHECK(check_fano(load("rank2_kstable").ctx).fano);
  auto f = check_fano(load("rank2_strict_ss").ctx);
  CHECK_FALSE(f.fano);
  bool some_bad = false;
  for (const auto& fc : f.facets) some_bad = some_bad || !fc.ok;
  CHECK(some_bad);
}

TEST_CASE("Fano functional equals L on Fano contexts") {
  for (const char* name : {"toric_square", "rank2_kstable", "a1xa1_group", "a2_hexagon"}) {
    auto t = load(name);
    for (const auto& w : t.ctx.rd().fundamental_weights()) {
      QVector c = t.ctx.rd().covector_of(w);
      for (Rational lam : {q(0), q(1, 2), q(1)}) {
        PLFunction u = PLFunction::simple(c, lam);
        CAPTURE(name);
        CHECK(fano_futaki(t.ctx, u) == futaki_L(t.ctx, u));
      }
    }
  }
}

TEST_CASE("barycenter criterion on the rank one models") {
  auto ks = barycenter_criterion(load("rank2_kstable").ctx);
  CHECK(ks.barycenter == QVector{q(3, 2), 0});
  CHECK(ks.verdict.kind == VerdictKind::KStable);

  auto ctx = load("rank2_strict_ss").ctx;
  auto ss = barycenter_criterion(ctx);
  CHECK(ss.barycenter == QVector{1, 0});
  CHECK(ss.verdict.kind == VerdictKind::StrictlySemistable);
  REQUIRE(ss.verdict.weight);
  CHECK(*ss.verdict.weight == QVector{q(1, 2), 0});
  REQUIRE(ss.verdict.witness_value);
  CHECK(*ss.verdict.witness_value == 0);
  CHECK(fano_futaki(ctx, PLFunction::affine({1, 0})) == 0);
  bool flagged = false;
  for (const auto& f : ss.theorem_flags) flagged = flagged || f.find("model functional") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("a nonzero central barycenter component is unstable") {
  auto r = barycenter_criterion(load("toric_hirzebruch").ctx);
  CHECK(r.verdict.kind == VerdictKind::Unstable);
  CHECK_FALSE(is_zero(r.central_component));
  CHECK(r.verdict.note.find("unmodified") != std::string::npos);
  REQUIRE(r.verdict.witness_value);
  CHECK(*r.verdict.witness_value < 0);
}

TEST_CASE("slice functional of the strictly semistable model") {
  auto ctx = load("rank2_strict_ss").ctx;
  auto e = scan_direction(ctx, {1, 0});
  CHECK(e.lambda_min == 0);
  CHECK(e.lambda_max == q(4, 3));
  CHECK(e.values(0) == 0);
  CHECK(e.values(q(4, 3)) == 0);
  CHECK(e.nonnegative);
  CHECK(e.positive_inside);
  auto d = e.values.derivative();
  for (Rational lam : {q(1, 7), q(1, 2), q(1), q(5, 4)})
    CHECK(ctx.volume() * d(lam) == -2 * (lam - 1) * lam * lam);
}

TEST_CASE("direction net") {
  auto rd = load("a2_hexagon").ctx.rd();
  auto net = direction_net(rd, 4);
  std::set<QVector> uniq(net.begin(), net.end());
  CHECK(uniq.size() == net.size());
  for (const auto& w : rd.fundamental_weights()) CHECK(uniq.count(primitive_direction(rd.covector_of(w))));
  for (const auto& c : net) {
    CHECK(rd.is_dominant_covector(c));
    CHECK(c == primitive_direction(c));
  }
  CHECK(direction_net(rd, 8).size() > net.size());
}

TEST_CASE("witness scan agrees with the verdicts") {
  auto ks = load("rank2_kstable").ctx;
  CHECK(witness_scan(ks, direction_net(ks.rd(), 6)).all_nonnegative);
  auto un = load("toric_hirzebruch").ctx;
  auto scan = witness_scan(un, direction_net(un.rd(), 6));
  CHECK_FALSE(scan.all_nonnegative);
  CHECK(scan.min_value < 0);
}

TEST_CASE("polystable degeneration") {
  auto ctx = load("rank2_strict_ss").ctx;
  auto d = polystable_degeneration(ctx);
  CHECK(d.polytope.plus == ctx.plus());
  CHECK(d.weyl_order == 1);
  CHECK(d.fiber_datum.group().size() == 1);
  CHECK(d.barycenter_check);
  CHECK(d.classification == FiberClass::HorosphericalKStable);
  CHECK(d.polytope.wall_facets.empty());
  auto fiber = fiber_context(d);
  for (Rational lam : {q(1, 3), q(1)}) {
    PLFunction u = PLFunction::simple({1, 0}, lam);
    CHECK(fano_futaki(fiber, u) == fano_futaki(ctx, u));
  }
  CHECK(code_of([] { polystable_degeneration(load("rank2_kstable").ctx); }) == ErrorCode::PreconditionNotMet);
  CHECK(code_of([] { polystable_degeneration(load("a2_hexagon").ctx); }) == ErrorCode::PreconditionNotMet);
}

TEST_CASE("optimal degeneration objective") {
  auto ctx = load("rank2_strict_ss").ctx;
  auto o = optimal_objective(ctx, PLFunction::affine({1, 0}));
  CHECK(o.value == 0);
  CHECK(o.norm2 > 0);
  CHECK(o.w == 0);
  PLFunction u = PLFunction::simple({1, 0}, q(1, 2));
  auto o1 = optimal_objective(ctx, u);
  auto o2 = optimal_objective(ctx, u.scaled(2));
  CHECK(o2.value == 2 * o1.value);
  CHECK(o2.norm2 == 4 * o1.norm2);
  CHECK(o2.w == doctest::Approx(o1.w));
  CHECK(code_of([&] { optimal_objective(ctx, PLFunction::affine({0, 0}, 1)); }) == ErrorCode::ZeroNorm);
  CHECK(code_of([&] { optimal_objective(ctx, PLFunction::affine({0, 1})); }) == ErrorCode::ZeroNorm);
}

TEST_CASE("soliton field") {
  SUBCASE("symmetric contexts give zero") {
    for (const char* name : {"toric_square", "rank2_kstable"}) {
      auto s = soliton_field(load(name).ctx);
      for (double v : s.field) CHECK(std::abs(v) < 1e-12);
    }
  }
  SUBCASE("rectangle against a scalar root-find") {
    auto ctx = toric_context(box(0, 1, -1, 1), {q(1, 3), 0});
    SolitonOptions opt;
    opt.tolerance = 1e-13;
    auto s = soliton_field(ctx, opt);
    CHECK(std::abs(s.field[0] - scalar_soliton(1.0 / 3)) < 1e-10);
    CHECK(std::abs(s.field[1]) < 1e-12);
    for (std::size_t i = 1; i < s.objective.size(); ++i) CHECK(s.objective[i] < s.objective[i - 1]);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { soliton_field(load("a2_hexagon").ctx); }) == ErrorCode::PreconditionNotMet);
    // No critical point: int_0^1 x e^{v x} dx never vanishes.
    CHECK(code_of([] { soliton_field(load("toric_rectangle").ctx); }) == ErrorCode::NoConvergence);
  }
}
