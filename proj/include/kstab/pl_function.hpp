#pragma once

#include <vector>

#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"
#include "kstab/rational.hpp"
#include "kstab/root_datum.hpp"

namespace kstab {

/// y -> grad . y + c, with grad a covector in lattice coordinates.
struct AffineForm {
  QVector grad;
  Rational c;

  Rational operator()(const QVector& y) const { return dot(grad, y) + c; }
  Polynomial polynomial() const { return Polynomial::linear(grad, c); }
  friend bool operator==(const AffineForm& a, const AffineForm& b) { return a.grad == b.grad && a.c == b.c; }
  friend bool operator<(const AffineForm& a, const AffineForm& b) {
    return a.grad != b.grad ? a.grad < b.grad : a.c < b.c;
  }
};

/// Convex piecewise-linear function, the maximum of finitely many affine
/// forms. Pieces are kept sorted and duplicate-free so that cell
/// decompositions never count a region twice.
class PLFunction {
 public:
  PLFunction() = default;
  explicit PLFunction(std::vector<AffineForm> pieces);

  static PLFunction affine(const QVector& grad, const Rational& c = 0);
  /// max{grad . y - lambda, 0}
  static PLFunction simple(const QVector& grad, const Rational& lambda);

  std::size_t dim() const { return pieces_.empty() ? 0 : pieces_.front().grad.size(); }
  const std::vector<AffineForm>& pieces() const { return pieces_; }
  bool is_affine() const { return pieces_.size() == 1; }

  Rational operator()(const QVector& y) const;
  /// Indices of the pieces attaining the maximum at y.
  std::vector<std::size_t> active(const QVector& y) const;

  /// u - phi for an affine phi.
  PLFunction minus(const AffineForm& phi) const;
  PLFunction scaled(const Rational& s) const;  // s >= 0
  friend PLFunction operator+(const PLFunction& a, const PLFunction& b);

  /// u(origin + basis . s) as a function of s.
  PLFunction pullback(const QMatrix& basis, const QVector& origin) const;
  /// u(w^-1 y) for a linear map w.
  PLFunction transformed(const QMatrix& w) const;

 private:
  std::vector<AffineForm> pieces_;
};

/// A full-dimensional region of the domain where one piece is active.
struct PLCell {
  std::size_t piece = 0;
  std::vector<Halfspace> halfspaces;
  std::vector<QVector> vertices;
};

/// Halfspaces of the region where piece k of u attains the maximum.
std::vector<Halfspace> cell_halfspaces(const PLFunction& u, std::size_t k, const std::vector<Halfspace>& region);

/// Full-dimensional cells of u restricted to the region.
std::vector<PLCell> pl_cells(const PLFunction& u, const std::vector<Halfspace>& region, std::size_t dim);

/// Every gradient that is active on a full-dimensional cell over the region
/// lies in V+.
bool gradients_dominant(const RootDatum& rd, const PLFunction& u, const std::vector<Halfspace>& region);

}  // namespace kstab
