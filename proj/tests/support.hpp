#pragma once

#include <random>
#include <string>
#include <vector>

#include "kstab/futaki.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/problem.hpp"

namespace kstab::testing {

inline std::filesystem::path catalog_path(const std::string& name) {
  return std::filesystem::path(KSTAB_CATALOG_DIR) / (name + ".json");
}

inline ProblemFile catalog_problem(const std::string& name) { return parse_problem_file(catalog_path(name)); }

// Catalog entries that build a Futaki context (all but the planted
// nonconvex extension).
inline const std::vector<std::string>& context_catalog() {
  static const std::vector<std::string> names{"toric_square",  "toric_rectangle", "toric_hirzebruch",
                                              "rank2_kstable", "rank2_strict_ss", "a1xa1_group",
                                              "a2_hexagon",    "synthetic_crease"};
  return names;
}

struct Loaded {
  ProblemFile problem;
  Workspace workspace;
  FutakiContext ctx;
};

inline Loaded load(const std::string& name) {
  ProblemFile p = catalog_problem(name);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  return {std::move(p), std::move(w), std::move(ctx)};
}

inline Halfspace hs(std::initializer_list<long> normal, const Rational& offset) {
  QVector n;
  for (long x : normal) n.emplace_back(x);
  return {n, offset};
}

inline Polytope box(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return Polytope::from_halfspaces({hs({1, 0}, x1), hs({-1, 0}, -x0), hs({0, 1}, y1), hs({0, -1}, -y0)}, 2);
}

inline Rational q(long n, long d = 1) { return ratio(n, d); }

inline Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, den_bound);
  return ratio(num(rng), den(rng));
}

// Two PL functions agree on a polygon when they agree at its vertices, at
// the vertices of every cell of either function, and on a 17 x 17 grid of
// the bounding box points inside it.
inline bool agree_on(const Polytope& p, const PLFunction& f, const PLFunction& g) {
  std::vector<QVector> points = p.vertices();
  for (const auto* u : {&f, &g})
    for (const auto& c : pl_cells(*u, p.halfspaces(), p.dim()))
      points.insert(points.end(), c.vertices.begin(), c.vertices.end());
  Rational lo[2] = {p.vertices()[0][0], p.vertices()[0][1]}, hi[2] = {lo[0], lo[1]};
  for (const auto& v : p.vertices())
    for (int i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  for (long i = 0; i <= 16; ++i)
    for (long j = 0; j <= 16; ++j) {
      QVector y{lo[0] + (hi[0] - lo[0]) * ratio(i, 16), lo[1] + (hi[1] - lo[1]) * ratio(j, 16)};
      if (p.contains(y)) points.push_back(y);
    }
  for (const auto& y : points)
    if (f(y) != g(y)) return false;
  return true;
}

}  // namespace kstab::testing
