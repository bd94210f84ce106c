#include "kstab/envelope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kstab/error.hpp"
#include "kstab/stability.hpp"

namespace kstab {

namespace {

Rational cross(const QVector& a, const QVector& b) { return a[0] * b[1] - a[1] * b[0]; }

void require_planar(const Polytope& p) {
  if (p.dim() != 2) throw Error(ErrorCode::RankUnsupported, "envelope tools work in rank 2 only");
}

// Ceiling of a nonnegative rational.
Integer ceil_of(const Rational& q) {
  Integer n = q.get_num(), d = q.get_den();
  Integer c = n / d;
  if (c * d < n) c += 1;
  return c;
}

}  // namespace

std::vector<QVector> convex_hull_2d(std::vector<QVector> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<QVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Rational hull_area(std::vector<QVector> points) {
  auto h = convex_hull_2d(std::move(points));
  if (h.size() < 3) return 0;
  Rational twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) twice += cross(h[i], h[(i + 1) % h.size()]);
  return abs(twice) / 2;
}

std::vector<QVector> ccw_vertices(const Polytope& polygon) {
  require_planar(polygon);
  return convex_hull_2d(polygon.vertices());
}

BoundaryData boundary_from_pl(const Polytope& polygon, const PLFunction& u) {
  require_planar(polygon);
  if (u.dim() != 2) throw Error(ErrorCode::ArityMismatch, "boundary data needs a function of two variables");
  BoundaryData bd;
  bd.polygon = polygon;
  const auto verts = ccw_vertices(polygon);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const QVector& a = verts[k];
    const QVector d = verts[(k + 1) % verts.size()] - a;
    // Along the edge each piece is c_j + s_j t for t in [0, 1].
    std::vector<std::pair<Rational, Rational>> lines;
    for (const auto& p : u.pieces()) lines.emplace_back(p(a), dot(p.grad, d));
    std::set<Rational> ts{Rational(0)};
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        if (lines[i].second == lines[j].second) continue;
        Rational t = (lines[j].first - lines[i].first) / (lines[i].second - lines[j].second);
        if (t <= 0 || t >= 1) continue;
        Rational v = lines[i].first + lines[i].second * t;
        bool top = true;
        for (const auto& l : lines)
          if (l.first + l.second * t > v) top = false;
        if (top) ts.insert(t);
      }
    for (const auto& t : ts) {
      QVector p = a + t * d;
      bd.values.push_back(u(p));
      bd.points.push_back(std::move(p));
      bd.edge.push_back(k);
    }
  }
  return bd;
}

BoundaryData boundary_from_polynomial(const Polytope& polygon, const Polynomial& q, const Rational& h) {
  require_planar(polygon);
  if (h <= 0) throw Error(ErrorCode::InvalidInput, "sampling step must be positive");
  BoundaryData bd;
  bd.polygon = polygon;
  bd.exact = false;
  bd.h = h;
  const auto verts = ccw_vertices(polygon);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    const QVector& a = verts[k];
    const QVector d = verts[(k + 1) % verts.size()] - a;
    Rational len = std::max(abs(d[0]), abs(d[1]));
    unsigned long n = std::max<unsigned long>(1, ceil_of(len / h).get_ui());
    for (unsigned long i = 0; i < n; ++i) {
      QVector p = a + ratio(i, n) * d;
      bd.values.push_back(q.evaluate(p));
      bd.points.push_back(std::move(p));
      bd.edge.push_back(k);
    }
  }
  return bd;
}

// ---------------------------------------------------------------- envelope

namespace {

struct Lifted {
  const std::vector<QVector>& pts;
  const std::vector<Rational>& vals;
};

// Tilts the plane through the lifted points a, b about the line ab toward
// the side where `toward` is positive until it first touches the data.
AffineForm rotate_about(const Lifted& data, std::size_t ia, std::size_t ib, const QVector& toward) {
  const QVector& a = data.pts[ia];
  const QVector d = data.pts[ib] - a;
  // l0 restricted to the line is the chord; it is constant across the line.
  const Rational slope = (data.vals[ib] - data.vals[ia]) / dot(d, d);
  AffineForm l0{slope * d, data.vals[ia] - slope * dot(d, a)};
  QVector n{-d[1], d[0]};
  if (dot(n, toward) < 0) n = -n;
  AffineForm m{n, -dot(n, a)};
  std::optional<Rational> best;
  for (std::size_t i = 0; i < data.pts.size(); ++i) {
    Rational mi = m(data.pts[i]);
    if (mi <= 0) continue;
    Rational t = (data.vals[i] - l0(data.pts[i])) / mi;
    if (!best || t < *best) best = t;
  }
  if (!best) throw Error(ErrorCode::InvalidInput, "no boundary data beyond a hull edge");
  return {l0.grad + *best * m.grad, l0.c + *best * m.c};
}

bool on_common_edge(const Polytope& p, const QVector& a, const QVector& b) {
  for (const auto& h : p.halfspaces())
    if (h.tight(a) && h.tight(b)) return true;
  return false;
}

void check_edge_convexity(const BoundaryData& bd) {
  const std::size_t n = bd.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n, k = (i + 2) % n;
    // Every edge starts at a polygon vertex, so j is interior to edge[i]
    // exactly when i and j share it; k then lies on the same line.
    if (bd.edge[i] != bd.edge[j]) continue;
    const QVector d1 = bd.points[j] - bd.points[i], d2 = bd.points[k] - bd.points[j];
    // Slopes per unit of the traversal parameter, so the test does not
    // depend on which way the edge runs.
    const std::size_t c = abs(d1[0]) >= abs(d1[1]) ? 0 : 1;
    Rational s1 = (bd.values[j] - bd.values[i]) / abs(d1[c]);
    Rational s2 = (bd.values[k] - bd.values[j]) / abs(d2[c]);
    if (s2 < s1)
      throw Error(ErrorCode::NonConvexEdgeData,
                  "boundary data is not convex along the edge through " + to_string(bd.points[j]));
  }
}

}  // namespace

EnvelopeResult convex_envelope(const BoundaryData& bd) {
  require_planar(bd.polygon);
  const std::size_t n = bd.points.size();
  if (n < 3 || bd.values.size() != n || bd.edge.size() != n)
    throw Error(ErrorCode::InvalidInput, "boundary data needs at least three consistent samples");
  for (const auto& p : bd.points)
    if (!bd.polygon.on_boundary(p)) throw Error(ErrorCode::InvalidInput, "sample " + to_string(p) + " is not on the boundary");
  check_edge_convexity(bd);

  const Lifted data{bd.points, bd.values};
  const QVector centre = bd.polygon.vertex_average();
  std::map<AffineForm, std::size_t> index;
  std::vector<ContactCell> cells;
  std::vector<std::vector<std::size_t>> touching;
  std::vector<bool> covered(n, false);  // boundary segment (i, i+1) already in a cell
  std::deque<std::size_t> queue;

  auto add_plane = [&](const AffineForm& plane) {
    auto [it, inserted] = index.emplace(plane, cells.size());
    if (!inserted) return;
    std::vector<std::size_t> touch;
    std::vector<QVector> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (plane(bd.points[i]) == bd.values[i]) {
        touch.push_back(i);
        pts.push_back(bd.points[i]);
      }
    std::set<std::size_t> in(touch.begin(), touch.end());
    for (auto i : touch)
      if (in.count((i + 1) % n)) covered[i] = true;
    cells.push_back({plane, convex_hull_2d(pts)});
    touching.push_back(std::move(touch));
    queue.push_back(cells.size() - 1);
  };

  auto locate = [&](const QVector& p) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (bd.points[i] == p) return i;
    throw Error(ErrorCode::InvalidInput, "hull vertex is not a sample");
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    add_plane(rotate_about(data, i, (i + 1) % n, centre - bd.points[i]));
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      const auto verts = cells[c].vertices;
      if (verts.size() < 3) continue;
      QVector inside = zeros(2);
      for (const auto& v : verts) inside = inside + v;
      inside = Rational(1, verts.size()) * inside;
      for (std::size_t k = 0; k < verts.size(); ++k) {
        const QVector& a = verts[k];
        const QVector& b = verts[(k + 1) % verts.size()];
        if (on_common_edge(bd.polygon, a, b)) continue;
        add_plane(rotate_about(data, locate(a), locate(b), a - inside));
      }
    }
  }

  EnvelopeResult res;
  std::vector<AffineForm> planes;
  for (const auto& c : cells) planes.push_back(c.plane);
  res.function = PLFunction(planes);
  res.cells = std::move(cells);
  res.exact = bd.exact;
  res.h = bd.h;
  res.ma = ma_measure_zero_check(res.function, bd.polygon);
  return res;
}

MACheck ma_measure_zero_check(const PLFunction& u, const Polytope& polygon) {
  require_planar(polygon);
  std::set<QVector> vertices;
  for (const auto& cell : pl_cells(u, polygon.halfspaces(), 2))
    for (const auto& v : cell.vertices) vertices.insert(v);
  MACheck out;
  for (const auto& v : vertices) {
    std::vector<QVector> grads;
    for (auto i : u.active(v)) grads.push_back(u.pieces()[i].grad);
    VertexMass m{v, hull_area(grads), !polygon.on_boundary(v)};
    if (m.interior && m.mass != 0) {
      out.zero = false;
      out.offending.push_back(v);
    }
    out.masses.push_back(std::move(m));
  }
  return out;
}

MACheck ma_measure_zero_check(const EnvelopeResult& er, const Polytope& polygon) {
  return ma_measure_zero_check(er.function, polygon);
}

bool is_w_dominate(const RootDatum& rd, const PLFunction& u, const Polytope& p) {
  return gradients_dominant(rd, u, p.halfspaces());
}

bool w_extension_convex(const RootDatum& rd, const PLFunction& u, const Polytope& plus) {
  std::vector<AffineForm> pieces;
  std::vector<std::pair<QVector, Rational>> samples;
  for (const auto& cell : pl_cells(u, plus.halfspaces(), plus.dim())) {
    const AffineForm& a = u.pieces()[cell.piece];
    for (const auto& w : rd.group()) {
      pieces.push_back({RootDatum::act_on_covector(w, a.grad), a.c});
      for (const auto& v : cell.vertices) samples.emplace_back(w * v, u(v));
    }
  }
  for (const auto& a : pieces)
    for (const auto& [p, val] : samples)
      if (a(p) > val) return false;
  return true;
}

// ---------------------------------------------------------------- crease search

namespace {

Rational evaluate_functional(const FutakiContext& ctx, const PLFunction& u, KernelFunctional f) {
  if (f == KernelFunctional::Relative) return relative_futaki(ctx, u);
  if (!gradients_dominant(ctx.rd(), u, ctx.plus().halfspaces()))
    throw Error(ErrorCode::NotDominant, "an active gradient of the test function is not dominant");
  return fano_futaki(ctx, u);
}

// P+ cut by the line {n . y = lambda}.
std::vector<QVector> crease_segment(const Polytope& plus, const QVector& n, const Rational& lambda) {
  auto hs = plus.halfspaces();
  hs.push_back({n, lambda});
  hs.push_back({-n, -lambda});
  return enumerate_vertices(hs, 2);
}

}  // namespace

CreaseResult crease_search(const FutakiContext& ctx, const PLFunction& u0, KernelFunctional functional) {
  const auto& rd = ctx.rd();
  if (rd.rank() != 2) throw Error(ErrorCode::RankUnsupported, "crease search works in rank 2 only");
  const Rational v0 = evaluate_functional(ctx, u0, functional);
  if (v0 != 0) throw Error(ErrorCode::NotAKernelElement, "functional value of u0 is " + to_string(v0) + ", not 0");

  const Polytope& base = ctx.cp().base;
  const Polytope& plus = ctx.plus();
  CreaseResult res;

  // Interior point of P fixed by W: the middle of P with the wall when
  // there is a single wall, otherwise the average of the vertices of P.
  if (rd.simple_roots().size() == 1) {
    auto seg = crease_segment(base, rd.covector_of(rd.simple_roots()[0]), 0);
    res.z_o = zeros(2);
    for (const auto& p : seg) res.z_o = res.z_o + p;
    res.z_o = Rational(1, seg.size()) * res.z_o;
  } else {
    res.z_o = base.vertex_average();
  }

  QVector g;
  for (auto i : u0.active(res.z_o)) {
    g = u0.pieces()[i].grad;
    if (rd.is_dominant_covector(g)) break;
  }
  QVector gbar = zeros(2);
  for (const auto& w : rd.group()) gbar = gbar + RootDatum::act_on_covector(w, g);
  gbar = Rational(1, rd.group().size()) * gbar;
  res.support = {gbar, u0(res.z_o) - dot(gbar, res.z_o)};
  res.normalized = u0.minus(res.support);

  for (const auto& cell : pl_cells(res.normalized, plus.halfspaces(), 2))
    for (const auto& v : cell.vertices)
      if (res.normalized(v) < 0)
        throw Error(ErrorCode::PreconditionNotMet,
                    "central support at " + to_string(res.z_o) + " is not below u0 at " + to_string(v));

  auto hs = plus.halfspaces();
  for (const auto& p : res.normalized.pieces()) hs.push_back({p.grad, -p.c});
  res.contact = enumerate_vertices(hs, 2);
  res.contact_dim = affine_dimension(res.contact);

  const ThetaFunction theta = theta_function(ctx);
  auto parallel_to_root = [&](const QVector& dir) {
    for (const auto& a : rd.restricted_roots())
      if (cross(dir, a) == 0) return true;
    return false;
  };
  auto annotate = [&](CreaseCandidate& c) {
    c.dominant = rd.is_dominant_covector(c.normal);
    if (c.dominant) c.value = evaluate_functional(ctx, c.function, functional);
    if (c.segment.size() == 2) c.in_theta_negative = theta_negative_on_segment(theta, c.segment[0], c.segment[1]);
    res.candidates.push_back(std::move(c));
  };

  std::vector<QVector> walls;
  for (const auto& s : rd.simple_roots()) {
    QVector cov = rd.covector_of(s);
    bool inside = std::all_of(res.contact.begin(), res.contact.end(), [&](const QVector& v) { return dot(cov, v) == 0; });
    if (inside) walls.push_back(primitive_direction(cov));
  }
  if (!walls.empty()) {
    res.case_label = "contact set inside a wall";
    for (const auto& n : walls) {
      CreaseCandidate c;
      c.function = PLFunction::affine(n);
      c.normal = n;
      c.lambda = 0;
      c.kind = "wall";
      c.segment = crease_segment(plus, n, 0);
      annotate(c);
    }
    return res;
  }

  auto edge_candidate = [&](const QVector& a, const QVector& b, const QVector& away) {
    QVector d = b - a;
    QVector n{-d[1], d[0]};
    if (dot(n, away) < 0) n = -n;
    n = primitive_direction(n);
    const Rational lambda = dot(n, a);
    CreaseCandidate c;
    c.function = PLFunction::simple(n, lambda);
    c.normal = n;
    c.lambda = lambda;
    c.kind = "edge";
    c.parallel_to_root = parallel_to_root(d);
    c.segment = crease_segment(plus, n, lambda);
    annotate(c);
  };

  if (res.contact_dim == 2) {
    res.case_label = "contact set is a polygon";
    auto hull = convex_hull_2d(res.contact);
    QVector inside = zeros(2);
    for (const auto& v : hull) inside = inside + v;
    inside = Rational(1, hull.size()) * inside;
    for (std::size_t k = 0; k < hull.size(); ++k) {
      const QVector& a = hull[k];
      const QVector& b = hull[(k + 1) % hull.size()];
      if (on_common_edge(plus, a, b)) continue;
      edge_candidate(a, b, a - inside);
    }
  } else if (res.contact_dim == 1) {
    res.case_label = "contact set is a segment";
    const QVector& a = res.contact.front();
    const QVector& b = res.contact.back();
    QVector d = b - a;
    QVector n{-d[1], d[0]};
    edge_candidate(a, b, n);
    edge_candidate(a, b, -n);
  } else {
    res.case_label = "contact set is a point";
  }
  return res;
}

}  // namespace kstab
