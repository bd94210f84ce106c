#pragma once

#include <cstdint>
#include <vector>

#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Exact integral of q over a simplex given by dim + 1 vertices in Q^dim.
Rational integrate_simplex(const std::vector<QVector>& simplex, const Polynomial& q);

/// Triangulation of the polytope {hs} with the given vertex list by
/// recursive fans from the lexicographically least vertex of each face.
/// Returns index tuples into `vertices`.
std::vector<std::vector<std::size_t>> triangulate(const std::vector<Halfspace>& hs,
                                                  const std::vector<QVector>& vertices, std::size_t dim);

/// Integral of q over the region {hs}, in Lebesgue measure of the lattice
/// coordinates. Lower-dimensional or empty regions integrate to zero. The
/// region must be bounded.
Rational integrate_region(const std::vector<Halfspace>& hs, std::size_t dim, const Polynomial& q);

/// Errors: ArityMismatch.
Rational integrate(const Polytope& p, const Polynomial& q);

/// Affine chart y = origin + basis . s of the hyperplane {n . y = offset}
/// for a primitive integer covector n. The columns of `basis` are a basis
/// of the lattice n^perp, so ds is the lattice measure on the hyperplane.
struct HyperplaneChart {
  QVector origin;
  QMatrix basis;  // r x (r - 1)

  QVector point(const QVector& s) const;
  std::vector<Halfspace> restrict(const std::vector<Halfspace>& hs) const;
  Polynomial pullback(const Polynomial& q) const;
  PLFunction pullback(const PLFunction& u) const;
};

HyperplaneChart hyperplane_chart(const QVector& primitive_normal, const Rational& offset);

/// Integral over facet `facet` in the lattice measure. Error: BadFacet.
Rational integrate_facet(const Polytope& p, std::size_t facet, const Polynomial& q);

/// Same integral in the Euclidean measure of the inner product `gram`:
/// lattice value times sqrt(det gram) * |n|_{gram^-1}.
double integrate_facet_euclidean(const Polytope& p, std::size_t facet, const Polynomial& q, const QMatrix& gram);

/// Integral of u^power * q over the region {hs}, by exact decomposition
/// into the cells of u.
Rational integrate_pl(const std::vector<Halfspace>& hs, std::size_t dim, const PLFunction& u, const Polynomial& q,
                      unsigned power = 1);

/// Integral of u^power * q over facet `facet` of the region {hs} in the
/// lattice measure. The facet is given by its halfspace (primitive normal).
Rational integrate_pl_on_hyperplane(const std::vector<Halfspace>& hs, const Halfspace& facet, const PLFunction& u,
                                    const Polynomial& q, unsigned power = 1);

/// (int y q dy) / (int q dy). Error: ZeroMass.
QVector weighted_barycenter(const Polytope& p, const Polynomial& q);

/// lambda -> int_{P with lambda_cov . y >= lambda} q dy. Breakpoints are the
/// distinct vertex values; each piece is recovered exactly by interpolating
/// deg q + dim + 1 exact integrals.
PiecewisePolynomial1D slice_moments(const Polytope& p, const QVector& lambda_cov, const Polynomial& q);

/// int over P with {lambda_cov . y = t} of q, lattice measure of the
/// primitive hyperplane. With lambda_cov = k * m, m primitive, the slice
/// moment derivative is -section / k.
Rational slice_section(const Polytope& p, const QVector& lambda_cov, const Rational& t, const Polynomial& q);

struct MonteCarloEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
};

/// Rejection sampling in the bounding box. Test oracle only.
MonteCarloEstimate monte_carlo_oracle(const Polytope& p, const Polynomial& q, std::size_t n_samples,
                                      std::uint64_t seed = 1);

}  // namespace kstab
