#include "kstab/pl_function.hpp"

#include <algorithm>

#include "kstab/error.hpp"

namespace kstab {

PLFunction::PLFunction(std::vector<AffineForm> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidInput, "PL function needs at least one piece");
  const std::size_t r = pieces_.front().grad.size();
  for (const auto& p : pieces_)
    if (p.grad.size() != r) throw Error(ErrorCode::ArityMismatch, "PL pieces of different dimension");
  std::sort(pieces_.begin(), pieces_.end());
  pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
}

PLFunction PLFunction::affine(const QVector& grad, const Rational& c) { return PLFunction({{grad, c}}); }

PLFunction PLFunction::simple(const QVector& grad, const Rational& lambda) {
  return PLFunction({{grad, -lambda}, {zeros(grad.size()), Rational(0)}});
}

Rational PLFunction::operator()(const QVector& y) const {
  Rational best = pieces_.front()(y);
  for (std::size_t i = 1; i < pieces_.size(); ++i) best = std::max(best, pieces_[i](y));
  return best;
}

std::vector<std::size_t> PLFunction::active(const QVector& y) const {
  Rational v = (*this)(y);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i](y) == v) out.push_back(i);
  return out;
}

PLFunction PLFunction::minus(const AffineForm& phi) const {
  std::vector<AffineForm> p;
  for (const auto& a : pieces_) p.push_back({a.grad - phi.grad, a.c - phi.c});
  return PLFunction(std::move(p));
}

PLFunction PLFunction::scaled(const Rational& s) const {
  if (s < 0) throw Error(ErrorCode::InvalidInput, "negative multiple of a convex function");
  std::vector<AffineForm> p;
  for (const auto& a : pieces_) p.push_back({s * a.grad, s * a.c});
  return PLFunction(std::move(p));
}

PLFunction operator+(const PLFunction& a, const PLFunction& b) {
  std::vector<AffineForm> p;
  for (const auto& x : a.pieces_)
    for (const auto& y : b.pieces_) p.push_back({x.grad + y.grad, x.c + y.c});
  return PLFunction(std::move(p));
}

PLFunction PLFunction::pullback(const QMatrix& basis, const QVector& origin) const {
  std::vector<AffineForm> p;
  for (const auto& a : pieces_) p.push_back({covector_times(a.grad, basis), dot(a.grad, origin) + a.c});
  return PLFunction(std::move(p));
}

PLFunction PLFunction::transformed(const QMatrix& w) const {
  auto inv = inverse(w);
  if (!inv) throw Error(ErrorCode::InvalidInput, "singular transformation");
  std::vector<AffineForm> p;
  for (const auto& a : pieces_) p.push_back({covector_times(a.grad, *inv), a.c});
  return PLFunction(std::move(p));
}

std::vector<Halfspace> cell_halfspaces(const PLFunction& u, std::size_t k, const std::vector<Halfspace>& region) {
  std::vector<Halfspace> hs = region;
  const auto& pk = u.pieces()[k];
  for (std::size_t j = 0; j < u.pieces().size(); ++j) {
    if (j == k) continue;
    const auto& pj = u.pieces()[j];
    hs.push_back({pj.grad - pk.grad, pk.c - pj.c});
  }
  return hs;
}

namespace {

// Counterclockwise order around an interior point, exact.
void sort_ccw(std::vector<QVector>& pts) {
  QVector c = zeros(2);
  for (const auto& p : pts) c = c + p;
  c = ratio(1, pts.size()) * c;
  auto half = [&](const QVector& p) {
    const QVector d = p - c;
    return d[1] > 0 || (d[1] == 0 && d[0] > 0) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const QVector& a, const QVector& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const QVector da = a - c, db = b - c;
    return da[0] * db[1] - da[1] * db[0] > 0;
  });
}

// One Sutherland-Hodgman step on a convex polygon given counterclockwise.
std::vector<QVector> clip(const std::vector<QVector>& poly, const Halfspace& h) {
  std::vector<QVector> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const QVector& a = poly[i];
    const QVector& b = poly[(i + 1) % m];
    const Rational fa = dot(h.normal, a) - h.offset, fb = dot(h.normal, b) - h.offset;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(a + (fa / (fa - fb)) * (b - a));
  }
  return out;
}

// Vertices of a bounded planar region by clipping a starting polygon.
std::vector<QVector> clipped_vertices(std::vector<QVector> poly, const std::vector<Halfspace>& hs) {
  for (const auto& h : hs) {
    poly = clip(poly, h);
    if (poly.empty()) return {};
  }
  std::sort(poly.begin(), poly.end());
  poly.erase(std::unique(poly.begin(), poly.end()), poly.end());
  return poly;
}

}  // namespace

std::vector<PLCell> pl_cells(const PLFunction& u, const std::vector<Halfspace>& region, std::size_t dim) {
  std::vector<PLCell> cells;
  std::vector<QVector> start;
  if (dim == 2) {
    start = enumerate_vertices(region, 2);
    if (affine_dimension(start) == 2) sort_ccw(start);
    else start.clear();
  }
  for (std::size_t k = 0; k < u.pieces().size(); ++k) {
    auto hs = cell_halfspaces(u, k, region);
    auto verts = start.empty() ? enumerate_vertices(hs, dim) : clipped_vertices(start, hs);
    if (verts.empty() || affine_dimension(verts) < static_cast<int>(dim)) continue;
    cells.push_back({k, std::move(hs), std::move(verts)});
  }
  return cells;
}

bool gradients_dominant(const RootDatum& rd, const PLFunction& u, const std::vector<Halfspace>& region) {
  for (const auto& cell : pl_cells(u, region, rd.rank()))
    if (!rd.is_dominant_covector(u.pieces()[cell.piece].grad)) return false;
  return true;
}

}  // namespace kstab
