// Randomized exact properties. Seeds are fixed so failures reproduce.

#include <random>

#include "doctest.h"
#include "kstab/envelope.hpp"
#include "kstab/integrate.hpp"
#include "kstab/stability.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::load;
using kstab::testing::q;
using kstab::testing::random_rational;

namespace {

Polytope random_polygon(std::mt19937_64& rng) {
  for (;;) {
    std::vector<QVector> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({random_rational(rng, 12, 4), random_rational(rng, 12, 4)});
    try {
      return Polytope::from_vertices(pts);
    } catch (const Error&) {
    }
  }
}

Polynomial random_polynomial(std::mt19937_64& rng, unsigned degree) {
  Polynomial p(2);
  std::uniform_int_distribution<unsigned> d(0, degree);
  for (int k = 0; k < 5; ++k) {
    unsigned a = d(rng), b = d(rng);
    if (a + b > degree) continue;
    p.add_term({a, b}, random_rational(rng, 5, 3));
  }
  return p;
}

QVector random_dominant_covector(std::mt19937_64& rng, const RootDatum& rd) {
  std::uniform_int_distribution<int> c(0, 6), z(-6, 6);
  QVector v = zeros(rd.rank());
  for (const auto& w : rd.fundamental_weights()) v = v + Rational(c(rng)) * rd.covector_of(w);
  for (const auto& b : rd.central_basis()) v = v + Rational(z(rng)) * rd.covector_of(b);
  return v;
}

}  // namespace

TEST_CASE("integration is additive under a cut and translation invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    Polytope p = random_polygon(rng);
    Polynomial g = random_polynomial(rng, 4);
    const QVector c{random_rational(rng, 3, 2), random_rational(rng, 3, 2)};
    if (is_zero(c)) continue;
    const Rational t = dot(c, p.vertex_average());
    auto lower = p.halfspaces(), upper = p.halfspaces();
    lower.push_back({c, t});
    upper.push_back({-c, -t});
    CHECK(integrate_region(lower, 2, g) + integrate_region(upper, 2, g) == integrate(p, g));

    const QVector shift{random_rational(rng, 4, 3), random_rational(rng, 4, 3)};
    std::vector<QVector> moved;
    for (const auto& v : p.vertices()) moved.push_back(v + shift);
    Polynomial pulled = g.substitute_affine(identity_matrix(2), shift);
    CHECK(integrate(Polytope::from_vertices(moved), g) == integrate(p, pulled));
  }
}

TEST_CASE("slice moments match direct integration at random heights") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Polytope p = random_polygon(rng);
    Polynomial g = random_polynomial(rng, 3);
    QVector dir{random_rational(rng, 4, 1), random_rational(rng, 4, 1)};
    if (is_zero(dir)) continue;
    auto f = slice_moments(p, dir, g);
    CHECK(f.is_continuous());
    for (int k = 0; k < 4; ++k) {
      Rational t = random_rational(rng, 30, 7);
      auto h = p.halfspaces();
      h.push_back({-dir, -t});
      CHECK(f(t) == integrate_region(h, 2, g));
    }
  }
}

TEST_CASE("L is linear on convex PL functions and vanishes on the extremal kernel") {
  std::mt19937_64 rng(13);
  for (const auto& name : kstab::testing::context_catalog()) {
    auto t = load(name);
    const auto& rd = t.ctx.rd();
    for (int k = 0; k < 4; ++k) {
      QVector a = random_dominant_covector(rng, rd), b = random_dominant_covector(rng, rd);
      PLFunction u = PLFunction::simple(a, random_rational(rng, 3, 2));
      PLFunction v = PLFunction::simple(b, random_rational(rng, 3, 2));
      CAPTURE(name);
      CHECK(futaki_L(t.ctx, u + v) == futaki_L(t.ctx, u) + futaki_L(t.ctx, v));
      CHECK(futaki_L(t.ctx, u.scaled(3)) == 3 * futaki_L(t.ctx, u));
      CHECK(relative_futaki(t.ctx, u) == relative_futaki_identity(t.ctx, u));
    }
    CHECK(relative_futaki(t.ctx, PLFunction::affine(zeros(rd.rank()), 1)) == 0);
    for (const auto& z : rd.central_basis()) CHECK(relative_futaki(t.ctx, PLFunction::affine(rd.covector_of(z))) == 0);
  }
}

TEST_CASE("the Fano functional on linear functions is the barycenter pairing") {
  std::mt19937_64 rng(14);
  for (const auto& name : kstab::testing::context_catalog()) {
    auto t = load(name);
    auto report = barycenter_criterion(t.ctx);
    for (int k = 0; k < 10; ++k) {
      QVector lam = random_dominant_covector(rng, t.ctx.rd());
      CHECK(fano_futaki(t.ctx, PLFunction::affine(lam)) == dot(lam, report.barycenter - t.ctx.rd().two_rho()));
    }
  }
}

TEST_CASE("envelopes of random PL boundary data") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    Polytope p = random_polygon(rng);
    std::vector<AffineForm> pieces;
    for (int k = 0; k < 4; ++k)
      pieces.push_back({{random_rational(rng, 4, 2), random_rational(rng, 4, 2)}, random_rational(rng, 4, 2)});
    PLFunction u(pieces);
    auto bd = boundary_from_pl(p, u);
    auto e = convex_envelope(bd);
    CHECK(e.ma.zero);
    for (std::size_t i = 0; i < bd.points.size(); ++i) CHECK(e.function(bd.points[i]) == bd.values[i]);
    // Convex data: the envelope is the function itself.
    for (const auto& v : p.vertices()) CHECK(e.function(v) == u(v));
    CHECK(e.function(p.vertex_average()) >= u(p.vertex_average()));
    for (const auto& c : e.cells)
      for (const auto& v : c.vertices) CHECK(p.on_boundary(v));
  }
}

TEST_CASE("restrict-then-extend on random symmetric polygons") {
  std::mt19937_64 rng(16);
  RootDatum rd(2, identity_matrix(2), {{1, 0}, {1, 0}}, {1, 0}, {{1, 0}});
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<QVector> pts;
    for (int i = 0; i < 4; ++i) {
      QVector v{random_rational(rng, 8, 3), random_rational(rng, 8, 3)};
      pts.push_back(v);
      pts.push_back({-v[0], v[1]});
    }
    Polytope base;
    try {
      base = Polytope::from_vertices(pts);
    } catch (const Error&) {
      continue;
    }
    auto cp = restrict_to_chamber(base, rd);
    auto ext = weyl_extension_convexity(cp.plus.halfspaces(), rd);
    CHECK(ext.convex);
    CHECK(ext.hull == base);
  }
}
