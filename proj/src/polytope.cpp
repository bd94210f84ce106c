#include "kstab/polytope.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

Halfspace normalize_primitive(const Halfspace& h) {
  auto pf = primitive_form(h.normal);
  Halfspace out;
  out.normal.reserve(pf.primitive.size());
  for (const auto& x : pf.primitive) out.normal.emplace_back(x);
  out.offset = h.offset / pf.scale;
  return out;
}

namespace {

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// In the plane every vertex is an endpoint of the feasible interval of some
// constraint line, and each line has at most two. Same output as the subset
// search at O(n^2) instead of O(n^3).
std::vector<QVector> planar_vertices(const std::vector<const Halfspace*>& hs) {
  std::set<QVector> found;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const QVector& n = hs[i]->normal;
    // Line: base + t * dir.
    const QVector dir{-n[1], n[0]};
    const Rational nn = dot(n, n);
    const QVector base{n[0] * hs[i]->offset / nn, n[1] * hs[i]->offset / nn};
    std::optional<Rational> lo, hi;
    bool empty = false;
    for (std::size_t j = 0; j < hs.size() && !empty; ++j) {
      if (j == i) continue;
      const Rational a = dot(hs[j]->normal, dir);
      const Rational rest = hs[j]->offset - dot(hs[j]->normal, base);
      if (a == 0) {
        if (rest < 0) empty = true;
        continue;
      }
      const Rational t = rest / a;  // a t <= rest
      if (a > 0) {
        if (!hi || t < *hi) hi = t;
      } else {
        if (!lo || t > *lo) lo = t;
      }
    }
    if (empty || (lo && hi && *lo > *hi)) continue;
    if (lo) found.insert(base + *lo * dir);
    if (hi) found.insert(base + *hi * dir);
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::vector<QVector> enumerate_vertices(const std::vector<Halfspace>& hs, std::size_t dim) {
  std::vector<const Halfspace*> active;
  for (const auto& h : hs) {
    if (h.normal.size() != dim) throw Error(ErrorCode::ArityMismatch, "halfspace dimension mismatch");
    if (kstab::is_zero(h.normal)) {
      if (h.offset < 0) return {};
      continue;
    }
    active.push_back(&h);
  }
  if (dim == 0) return {QVector{}};
  if (dim == 2) return planar_vertices(active);

  std::set<QVector> found;
  QMatrix m(dim);
  QVector rhs(dim);
  for_each_subset(active.size(), dim, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < dim; ++i) {
      m[i] = active[idx[i]]->normal;
      rhs[i] = active[idx[i]]->offset;
    }
    auto sol = solve(m, rhs);
    if (!sol) return;
    for (const auto* h : active)
      if (!h->contains(*sol)) return;
    found.insert(std::move(*sol));
  });
  return {found.begin(), found.end()};
}

Polytope Polytope::from_halfspaces(const std::vector<Halfspace>& input, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidInput, "polytope dimension must be positive");
  std::vector<Halfspace> hs;
  for (const auto& h : input) {
    if (h.normal.size() != dim) throw Error(ErrorCode::ArityMismatch, "halfspace dimension mismatch");
    if (kstab::is_zero(h.normal)) {
      if (h.offset < 0) throw Error(ErrorCode::Empty, "constraint 0 <= " + to_string(h.offset) + " is infeasible");
      continue;
    }
    Halfspace n = normalize_primitive(h);
    if (std::find(hs.begin(), hs.end(), n) == hs.end()) hs.push_back(std::move(n));
  }

  // Bounded iff the recession cone {d : n.d <= 0} is {0}; cut it with a box.
  std::vector<Halfspace> cone;
  for (const auto& h : hs) cone.push_back({h.normal, Rational(0)});
  for (std::size_t j = 0; j < dim; ++j) {
    cone.push_back({unit_vector(dim, j), Rational(1)});
    cone.push_back({-unit_vector(dim, j), Rational(1)});
  }
  for (const auto& v : enumerate_vertices(cone, dim))
    if (!kstab::is_zero(v)) throw Error(ErrorCode::Unbounded, "halfspace system is unbounded in direction " + to_string(v));

  Polytope p;
  p.dim_ = dim;
  p.vertices_ = enumerate_vertices(hs, dim);
  if (p.vertices_.empty()) throw Error(ErrorCode::Empty, "halfspace system is infeasible");
  if (affine_dimension(p.vertices_) < static_cast<int>(dim))
    throw Error(ErrorCode::LowerDimensional, "polytope has empty interior");

  for (auto& h : hs) {
    std::vector<QVector> on;
    for (const auto& v : p.vertices_)
      if (h.tight(v)) on.push_back(v);
    if (affine_dimension(on) == static_cast<int>(dim) - 1) p.hs_.push_back(std::move(h));
  }
  return p;
}

Polytope Polytope::from_vertices(const std::vector<QVector>& points) {
  if (points.empty()) throw Error(ErrorCode::Empty, "hull of no points");
  std::set<QVector> uniq(points.begin(), points.end());
  std::vector<QVector> pts(uniq.begin(), uniq.end());
  const std::size_t dim = pts.front().size();
  if (affine_dimension(pts) < static_cast<int>(dim))
    throw Error(ErrorCode::LowerDimensional, "point set does not span the space");

  std::vector<Halfspace> hs;
  for_each_subset(pts.size(), dim, [&](const std::vector<std::size_t>& idx) {
    QMatrix diffs;
    for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(pts[idx[i]] - pts[idx[0]]);
    auto ns = nullspace(diffs, dim);
    if (ns.size() != 1) return;
    QVector n = ns[0];
    Rational off = dot(n, pts[idx[0]]);
    bool below = true, above = true;
    for (const auto& q : pts) {
      Rational v = dot(n, q);
      if (v > off) below = false;
      if (v < off) above = false;
    }
    if (!below && !above) return;
    if (!below) {
      n = -n;
      off = -off;
    }
    Halfspace h = normalize_primitive({n, off});
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));
  });
  return from_halfspaces(hs, dim);
}

std::vector<std::size_t> Polytope::facet_vertices(std::size_t i) const {
  if (i >= hs_.size()) throw Error(ErrorCode::BadFacet, "facet index " + std::to_string(i) + " out of range");
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (hs_[i].tight(vertices_[v])) out.push_back(v);
  return out;
}

bool Polytope::contains(const QVector& y) const {
  return std::all_of(hs_.begin(), hs_.end(), [&](const Halfspace& h) { return h.contains(y); });
}

bool Polytope::on_boundary(const QVector& y) const {
  return contains(y) && std::any_of(hs_.begin(), hs_.end(), [&](const Halfspace& h) { return h.tight(y); });
}

QVector Polytope::vertex_average() const {
  QVector s = zeros(dim_);
  for (const auto& v : vertices_) s = s + v;
  return Rational(1, static_cast<unsigned long>(vertices_.size())) * s;
}

Polytope Polytope::intersect_halfspace(const QVector& c, const Rational& t) const {
  auto hs = hs_;
  hs.push_back({-c, -t});
  return from_halfspaces(hs, dim_);
}

std::optional<std::size_t> Polytope::find_facet(const Halfspace& h) const {
  Halfspace n = normalize_primitive(h);
  for (std::size_t i = 0; i < hs_.size(); ++i)
    if (hs_[i] == n) return i;
  return std::nullopt;
}

bool operator==(const Polytope& a, const Polytope& b) { return a.dim_ == b.dim_ && a.vertices_ == b.vertices_; }

// ---------------------------------------------------------------- chambers

std::vector<Halfspace> chamber_halfspaces(const RootDatum& rd) {
  std::vector<Halfspace> hs;
  for (const auto& s : rd.simple_roots()) hs.push_back(normalize_primitive({-rd.covector_of(s), Rational(0)}));
  return hs;
}

bool ChamberPolytope::is_outer(std::size_t facet) const {
  return std::find(outer_facets.begin(), outer_facets.end(), facet) != outer_facets.end();
}

void classify_chamber_facets(ChamberPolytope& cp, const RootDatum& rd) {
  cp.outer_facets.clear();
  cp.wall_facets.clear();
  cp.parent_facet.clear();
  const auto& verts = cp.plus.vertices();
  for (std::size_t i = 0; i < cp.plus.halfspaces().size(); ++i) {
    auto on = cp.plus.facet_vertices(i);
    bool wall = false;
    for (const auto& s : rd.simple_roots()) {
      bool inside = std::all_of(on.begin(), on.end(), [&](std::size_t v) { return rd.inner(s, verts[v]) == 0; });
      if (inside) wall = true;
    }
    if (wall) {
      cp.wall_facets.push_back(i);
      continue;
    }
    auto parent = cp.base.find_facet(cp.plus.halfspaces()[i]);
    if (!parent) throw Error(ErrorCode::BadFacet, "outer facet of P+ is not a facet of P");
    cp.outer_facets.push_back(i);
    cp.parent_facet.push_back(*parent);
  }
}

ChamberPolytope restrict_to_chamber(const Polytope& p, const RootDatum& rd) {
  if (p.dim() != rd.rank()) throw Error(ErrorCode::ArityMismatch, "polytope and root datum ranks differ");
  std::set<QVector> verts(p.vertices().begin(), p.vertices().end());
  for (const auto& g : rd.generators())
    for (const auto& v : p.vertices())
      if (!verts.count(g * v))
        throw Error(ErrorCode::NotWeylInvariant, "reflection maps vertex " + to_string(v) + " outside the vertex set");
  ChamberPolytope cp;
  cp.base = p;
  auto hs = p.halfspaces();
  for (auto& h : chamber_halfspaces(rd)) hs.push_back(std::move(h));
  cp.plus = Polytope::from_halfspaces(hs, p.dim());
  classify_chamber_facets(cp, rd);
  return cp;
}

ExtensionResult weyl_extension_convexity(const std::vector<Halfspace>& plus_halfspaces, const RootDatum& rd) {
  const std::size_t r = rd.rank();
  auto hs = plus_halfspaces;
  auto chamber = chamber_halfspaces(rd);
  hs.insert(hs.end(), chamber.begin(), chamber.end());
  ExtensionResult out;
  out.plus = Polytope::from_halfspaces(hs, r);

  std::vector<QVector> orbit;
  for (const auto& w : rd.group())
    for (const auto& v : out.plus.vertices()) orbit.push_back(w * v);
  out.hull = Polytope::from_vertices(orbit);

  auto cut = out.hull.halfspaces();
  cut.insert(cut.end(), chamber.begin(), chamber.end());
  Polytope hull_plus = Polytope::from_halfspaces(cut, r);
  if (hull_plus == out.plus) {
    out.convex = true;
    out.chamber = restrict_to_chamber(out.hull, rd);
    return out;
  }
  for (const auto& v : hull_plus.vertices())
    if (!out.plus.contains(v)) {
      out.witness = v;
      break;
    }
  return out;
}

// ---------------------------------------------------------------- divisors

std::vector<ColourDiagnostic> validate_colours(const RootDatum& rd, bool strict) {
  std::vector<ColourDiagnostic> out;
  std::set<QVector> roots(rd.positive_roots().begin(), rd.positive_roots().end());
  for (std::size_t i = 0; i < rd.colours().size(); ++i) {
    const auto& col = rd.colours()[i];
    ColourDiagnostic d;
    d.index = i;
    if (col.type == ColourType::External) {
      d.message = "external colour, not validated";
      out.push_back(d);
      continue;
    }
    if (kstab::is_zero(col.covector)) {
      d.valid = false;
      d.message = "zero colour image";
    } else {
      d.in_root_span = std::all_of(rd.central_basis().begin(), rd.central_basis().end(),
                                   [&](const QVector& z) { return dot(col.covector, z) == 0; });
      if (d.in_root_span) {
        // (alpha^v|M)^v must be a positive root or twice one.
        QVector coroot = col.type == ColourType::TwoA ? Rational(2) * col.covector : col.covector;
        QVector v = rd.vector_of(coroot);
        QVector root = (Rational(2) / rd.inner(v, v)) * v;
        bool ok = roots.count(root) || roots.count(Rational(1, 2) * root);
        d.valid = ok;
        d.message = ok ? "dual of the coroot is the positive root " + to_string(root)
                       : "dual of the coroot " + to_string(root) + " is not in Phi+ or 2 Phi+";
      } else {
        bool anti = std::all_of(rd.simple_roots().begin(), rd.simple_roots().end(),
                                [&](const QVector& s) { return dot(col.covector, s) <= 0; });
        bool dual = std::all_of(rd.fundamental_weights().begin(), rd.fundamental_weights().end(),
                                [&](const QVector& w) { return dot(col.covector, w) >= 0; }) &&
                    std::all_of(rd.central_basis().begin(), rd.central_basis().end(),
                                [&](const QVector& z) { return dot(col.covector, z) == 0; });
        d.valid = anti || dual;
        d.message = anti   ? "outside the root span, in the valuation cone"
                    : dual ? "outside the root span, in the dual cone of V+"
                           : "outside the root span and in neither the valuation cone nor the dual cone of V+";
      }
    }
    if (!d.valid && strict)
      throw Error(ErrorCode::InvalidInput, "colour " + std::to_string(i) + ": " + d.message);
    out.push_back(d);
  }
  return out;
}

DivisorResult polytope_from_divisor(const RootDatum& rd, const std::vector<DivisorRay>& rays, bool strict_colours) {
  DivisorResult res;
  res.colours = validate_colours(rd, strict_colours);
  std::vector<Halfspace> hs;
  for (const auto& ray : rays) {
    if (ray.u.size() != rd.rank()) throw Error(ErrorCode::ArityMismatch, "ray has wrong length");
    for (const auto& s : rd.simple_roots())
      if (dot(ray.u, s) > 0)
        throw Error(ErrorCode::InvalidInput, "ray " + to_string(ray.u) + " is not in the valuation cone");
    hs.push_back({-ray.u, ray.c});
  }
  for (const auto& col : rd.colours()) hs.push_back({-col.covector, Rational(0)});
  auto ext = weyl_extension_convexity(hs, rd);
  if (!ext.convex)
    throw Error(ErrorCode::NotExtendable, "W-orbit of P+ is not convex; witness " + to_string(*ext.witness));
  res.chamber = *ext.chamber;
  return res;
}

}  // namespace kstab
