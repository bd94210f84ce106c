#include "kstab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

namespace {

const Integer& cached_factorial(unsigned n) {
  static thread_local std::vector<Integer> table{Integer(1)};
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

}  // namespace

Rational integrate_simplex(const std::vector<QVector>& simplex, const Polynomial& q) {
  if (simplex.empty()) throw Error(ErrorCode::InvalidInput, "empty simplex");
  const std::size_t d = simplex.size() - 1;
  if (simplex.front().size() != d) throw Error(ErrorCode::ArityMismatch, "simplex is not full-dimensional");
  if (q.arity() != d) throw Error(ErrorCode::ArityMismatch, "integrand arity differs from dimension");
  QMatrix m(d, zeros(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = simplex[j + 1][i] - simplex[0][i];
  Rational det = abs(determinant(m));
  if (det == 0) return 0;
  // Over the standard simplex: int t^e dt = prod e_i! / (d + |e|)!.
  Polynomial p = q.substitute_affine(m, simplex[0]);
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Integer num = 1;
    unsigned total = 0;
    for (auto x : e) {
      num *= cached_factorial(x);
      total += x;
    }
    sum += c * ratio(num, cached_factorial(static_cast<unsigned>(d) + total));
  }
  return det * sum;
}

std::vector<std::vector<std::size_t>> triangulate(const std::vector<Halfspace>& hs,
                                                  const std::vector<QVector>& vertices, std::size_t dim) {
  // tight[i][v]: vertex v lies on the hyperplane of constraint i.
  std::vector<std::vector<bool>> tight(hs.size(), std::vector<bool>(vertices.size()));
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t v = 0; v < vertices.size(); ++v) tight[i][v] = hs[i].tight(vertices[v]);

  auto affdim = [&](const std::vector<std::size_t>& idx) {
    std::vector<QVector> pts;
    for (auto i : idx) pts.push_back(vertices[i]);
    return affine_dimension(pts);
  };

  std::vector<std::vector<std::size_t>> out;
  // Faces are vertex index sets; `vertices` is sorted, so the smallest index
  // is the lexicographically least vertex of the face.
  auto rec = [&](auto&& self, const std::vector<std::size_t>& face, std::size_t d,
                 std::vector<std::size_t>& prefix) -> void {
    if (d == 0) {
      prefix.push_back(face.front());
      out.push_back(prefix);
      prefix.pop_back();
      return;
    }
    const std::size_t apex = *std::min_element(face.begin(), face.end(), [&](std::size_t a, std::size_t b) {
      return lex_less(vertices[a], vertices[b]);
    });
    std::set<std::vector<std::size_t>> facets;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      std::vector<std::size_t> sub;
      for (auto v : face)
        if (tight[i][v]) sub.push_back(v);
      if (sub.size() == face.size() || sub.size() < d) continue;
      if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
      if (affdim(sub) != static_cast<int>(d) - 1) continue;
      facets.insert(std::move(sub));
    }
    prefix.push_back(apex);
    for (const auto& f : facets) self(self, f, d - 1, prefix);
    prefix.pop_back();
  };
  std::vector<std::size_t> all(vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<std::size_t> prefix;
  if (!vertices.empty() && affdim(all) == static_cast<int>(dim)) rec(rec, all, dim, prefix);
  return out;
}

Rational integrate_region(const std::vector<Halfspace>& hs, std::size_t dim, const Polynomial& q) {
  if (q.arity() != dim) throw Error(ErrorCode::ArityMismatch, "integrand arity differs from dimension");
  if (q.is_zero()) return 0;
  auto verts = enumerate_vertices(hs, dim);
  if (verts.empty() || affine_dimension(verts) < static_cast<int>(dim)) return 0;
  Rational sum = 0;
  std::vector<QVector> simplex;
  for (const auto& s : triangulate(hs, verts, dim)) {
    simplex.clear();
    for (auto i : s) simplex.push_back(verts[i]);
    sum += integrate_simplex(simplex, q);
  }
  return sum;
}

Rational integrate(const Polytope& p, const Polynomial& q) {
  if (q.arity() != p.dim()) throw Error(ErrorCode::ArityMismatch, "integrand arity differs from polytope dimension");
  if (q.is_zero()) return 0;
  Rational sum = 0;
  std::vector<QVector> simplex;
  for (const auto& s : triangulate(p.halfspaces(), p.vertices(), p.dim())) {
    simplex.clear();
    for (auto i : s) simplex.push_back(p.vertices()[i]);
    sum += integrate_simplex(simplex, q);
  }
  return sum;
}

// ---------------------------------------------------------------- hyperplanes

QVector HyperplaneChart::point(const QVector& s) const { return origin + basis * s; }

std::vector<Halfspace> HyperplaneChart::restrict(const std::vector<Halfspace>& hs) const {
  std::vector<Halfspace> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back({covector_times(h.normal, basis), h.offset - dot(h.normal, origin)});
  return out;
}

Polynomial HyperplaneChart::pullback(const Polynomial& q) const { return q.substitute_affine(basis, origin); }

PLFunction HyperplaneChart::pullback(const PLFunction& u) const { return u.pullback(basis, origin); }

HyperplaneChart hyperplane_chart(const QVector& primitive_normal, const Rational& offset) {
  std::vector<Integer> ints;
  for (const auto& x : primitive_normal) {
    if (x.get_den() != 1) throw Error(ErrorCode::InvalidInput, "hyperplane normal is not integral");
    ints.push_back(x.get_num());
  }
  QMatrix u = unimodular_completion(ints);
  const std::size_t r = ints.size();
  HyperplaneChart chart;
  chart.origin = zeros(r);
  chart.basis.assign(r, QVector(r - 1));
  for (std::size_t i = 0; i < r; ++i) {
    chart.origin[i] = offset * u[i][0];
    for (std::size_t j = 1; j < r; ++j) chart.basis[i][j - 1] = u[i][j];
  }
  return chart;
}

Rational integrate_facet(const Polytope& p, std::size_t facet, const Polynomial& q) {
  if (facet >= p.halfspaces().size()) throw Error(ErrorCode::BadFacet, "facet index out of range");
  if (q.arity() != p.dim()) throw Error(ErrorCode::ArityMismatch, "integrand arity differs from polytope dimension");
  const auto& h = p.halfspaces()[facet];
  auto chart = hyperplane_chart(h.normal, h.offset);
  return integrate_region(chart.restrict(p.halfspaces()), p.dim() - 1, chart.pullback(q));
}

double integrate_facet_euclidean(const Polytope& p, std::size_t facet, const Polynomial& q, const QMatrix& gram) {
  Rational lattice = integrate_facet(p, facet, q);
  const auto& n = p.halfspaces()[facet].normal;
  auto ginv = inverse(gram);
  if (!ginv) throw Error(ErrorCode::InvalidInput, "singular gram");
  double dual_norm = std::sqrt(dot(n, *ginv * n).get_d());
  return lattice.get_d() * std::sqrt(determinant(gram).get_d()) * dual_norm;
}

Rational integrate_pl(const std::vector<Halfspace>& hs, std::size_t dim, const PLFunction& u, const Polynomial& q,
                      unsigned power) {
  if (u.dim() != dim) throw Error(ErrorCode::ArityMismatch, "PL function dimension differs from region");
  Rational sum = 0;
  for (std::size_t k = 0; k < u.pieces().size(); ++k) {
    Polynomial integrand = u.pieces()[k].polynomial().pow(power) * q;
    if (u.pieces().size() == 1) return integrate_region(hs, dim, integrand);
    sum += integrate_region(cell_halfspaces(u, k, hs), dim, integrand);
  }
  return sum;
}

Rational integrate_pl_on_hyperplane(const std::vector<Halfspace>& hs, const Halfspace& facet, const PLFunction& u,
                                    const Polynomial& q, unsigned power) {
  Halfspace h = normalize_primitive(facet);
  auto chart = hyperplane_chart(h.normal, h.offset);
  return integrate_pl(chart.restrict(hs), h.normal.size() - 1, chart.pullback(u), chart.pullback(q), power);
}

QVector weighted_barycenter(const Polytope& p, const Polynomial& q) {
  Rational mass = integrate(p, q);
  if (mass <= 0) throw Error(ErrorCode::ZeroMass, "weight has nonpositive total mass " + to_string(mass));
  QVector b(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) b[i] = integrate(p, Polynomial::variable(p.dim(), i) * q) / mass;
  return b;
}

PiecewisePolynomial1D slice_moments(const Polytope& p, const QVector& lambda_cov, const Polynomial& q) {
  if (kstab::is_zero(lambda_cov)) throw Error(ErrorCode::InvalidInput, "slice direction is zero");
  std::set<Rational> values;
  for (const auto& v : p.vertices()) values.insert(dot(lambda_cov, v));
  PiecewisePolynomial1D f;
  f.breakpoints.assign(values.begin(), values.end());
  const Rational total = integrate(p, q);
  const int degree = static_cast<int>(p.dim()) + std::max(q.degree(), 0);

  auto value_at = [&](const Rational& t) {
    auto hs = p.halfspaces();
    hs.push_back({-lambda_cov, -t});
    return integrate_region(hs, p.dim(), q);
  };

  f.pieces.push_back(UPoly::constant(total));
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    const Rational a = f.breakpoints[i], b = f.breakpoints[i + 1];
    std::vector<Rational> xs, ys;
    for (int j = 0; j <= degree; ++j) {
      Rational t = a + (b - a) * ratio(j, degree);
      xs.push_back(t);
      ys.push_back(j == 0 && i == 0 ? total : j == degree && i + 2 == f.breakpoints.size() ? Rational(0) : value_at(t));
    }
    f.pieces.push_back(UPoly::interpolate(xs, ys));
  }
  f.pieces.push_back(UPoly());
  return f;
}

Rational slice_section(const Polytope& p, const QVector& lambda_cov, const Rational& t, const Polynomial& q) {
  auto pf = primitive_form(lambda_cov);
  QVector m;
  for (const auto& x : pf.primitive) m.emplace_back(x);
  auto chart = hyperplane_chart(m, t / pf.scale);
  return integrate_region(chart.restrict(p.halfspaces()), p.dim() - 1, chart.pullback(q));
}

MonteCarloEstimate monte_carlo_oracle(const Polytope& p, const Polynomial& q, std::size_t n_samples,
                                      std::uint64_t seed) {
  const std::size_t r = p.dim();
  std::vector<double> lo(r, INFINITY), hi(r, -INFINITY);
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < r; ++i) {
      lo[i] = std::min(lo[i], v[i].get_d());
      hi[i] = std::max(hi[i], v[i].get_d());
    }
  double box = 1;
  for (std::size_t i = 0; i < r; ++i) box *= hi[i] - lo[i];

  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  for (const auto& h : p.halfspaces()) {
    std::vector<double> n;
    for (const auto& x : h.normal) n.push_back(x.get_d());
    normals.push_back(std::move(n));
    offsets.push_back(h.offset.get_d());
  }

  // Flatten the polynomial once; the sampling loop is hot.
  struct Term { double c; std::vector<unsigned> e; };
  std::vector<Term> terms;
  unsigned max_deg = 0;
  for (const auto& [e, c] : q.terms()) {
    terms.push_back({c.get_d(), e});
    for (auto x : e) max_deg = std::max(max_deg, x);
  }
  std::vector<std::vector<double>> powers(r, std::vector<double>(max_deg + 1, 1.0));

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (std::size_t i = 0; i < r; ++i) dist.emplace_back(lo[i], hi[i]);
  double sum = 0, sum2 = 0;
  std::vector<double> y(r);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < r; ++i) y[i] = dist[i](rng);
    bool inside = true;
    for (std::size_t k = 0; k < normals.size() && inside; ++k) {
      double v = 0;
      for (std::size_t i = 0; i < r; ++i) v += normals[k][i] * y[i];
      inside = v <= offsets[k];
    }
    double f = 0.0;
    if (inside) {
      for (std::size_t i = 0; i < r; ++i)
        for (unsigned k = 1; k <= max_deg; ++k) powers[i][k] = powers[i][k - 1] * y[i];
      for (const auto& t : terms) {
        double v = t.c;
        for (std::size_t i = 0; i < r; ++i) v *= powers[i][t.e[i]];
        f += v;
      }
    }
    sum += f;
    sum2 += f * f;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return {box * mean, box * std::sqrt(var / (n - 1)), n_samples};
}

}  // namespace kstab
