#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/rational.hpp"
#include "kstab/root_datum.hpp"

namespace kstab {

/// normal . y <= offset
struct Halfspace {
  QVector normal;
  Rational offset;

  bool contains(const QVector& y) const { return dot(normal, y) <= offset; }
  bool tight(const QVector& y) const { return dot(normal, y) == offset; }
  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
};

/// Rescales so that the normal is a primitive integer covector.
Halfspace normalize_primitive(const Halfspace& h);

/// All vertices of {y in Q^dim : h.normal . y <= h.offset}, found by
/// intersecting every dim-subset of constraints and filtering. Constraints
/// with zero normal are honoured (an infeasible one yields no vertices).
/// Returned sorted lexicographically without duplicates. The region must be
/// bounded for this to describe it.
std::vector<QVector> enumerate_vertices(const std::vector<Halfspace>& hs, std::size_t dim);

/// Bounded, full-dimensional rational polytope with an irredundant
/// H-representation by outer primitive normals.
class Polytope {
 public:
  Polytope() = default;

  /// Errors: Unbounded, Empty, LowerDimensional.
  static Polytope from_halfspaces(const std::vector<Halfspace>& hs, std::size_t dim);
  /// Convex hull of a finite point set; errors Empty, LowerDimensional.
  static Polytope from_vertices(const std::vector<QVector>& points);

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  /// Indices of vertices lying on facet i.
  std::vector<std::size_t> facet_vertices(std::size_t i) const;

  bool contains(const QVector& y) const;
  bool on_boundary(const QVector& y) const;
  /// Average of the vertices; an interior point.
  QVector vertex_average() const;

  /// P with {c . y >= t}. Errors: Empty when void, LowerDimensional when
  /// the slice is a face.
  Polytope intersect_halfspace(const QVector& c, const Rational& t) const;

  /// Index of the facet with the given halfspace, if any.
  std::optional<std::size_t> find_facet(const Halfspace& h) const;

  friend bool operator==(const Polytope& a, const Polytope& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> hs_;
  std::vector<QVector> vertices_;
};

/// Halfspaces cutting out the dominant chamber V+ (one per simple root).
std::vector<Halfspace> chamber_halfspaces(const RootDatum& rd);

struct ChamberPolytope {
  Polytope base;  // the W-invariant P
  Polytope plus;  // P+ = P with V+
  std::vector<std::size_t> outer_facets;  // facets of plus meeting int V+
  std::vector<std::size_t> wall_facets;   // facets of plus inside a wall
  /// For each outer facet of plus, the matching facet index in base.
  std::vector<std::size_t> parent_facet;

  bool is_outer(std::size_t facet) const;
};

/// Checks W-invariance of P (orbit of each vertex stays among the
/// vertices) and builds P+. Error: NotWeylInvariant.
ChamberPolytope restrict_to_chamber(const Polytope& p, const RootDatum& rd);

/// Outer/wall classification of the facets of a polytope inside V+.
void classify_chamber_facets(ChamberPolytope& cp, const RootDatum& rd);

struct ExtensionResult {
  bool convex = false;
  std::optional<ChamberPolytope> chamber;  // when convex
  std::optional<QVector> witness;          // when not convex
  Polytope plus;                           // the input system cut to V+
  Polytope hull;                           // hull of the orbit of P+
};

/// Decides whether the W-orbit of P+ = (hs with V+) is convex.
ExtensionResult weyl_extension_convexity(const std::vector<Halfspace>& plus_halfspaces, const RootDatum& rd);

struct DivisorRay {
  QVector u;   // primitive covector in the valuation cone
  Rational c;  // c + u . y >= 0
};

struct ColourDiagnostic {
  std::size_t index = 0;
  bool in_root_span = false;
  bool valid = true;
  std::string message;
};

/// Validates the colour images of rd against the root system. Returns one
/// diagnostic per colour; with strict = true the first invalid colour
/// throws Error(InvalidInput).
std::vector<ColourDiagnostic> validate_colours(const RootDatum& rd, bool strict);

struct DivisorResult {
  ChamberPolytope chamber;
  std::vector<ColourDiagnostic> colours;
};

/// P+ = {c_Y + u_Y . y >= 0, rho(D) . y >= 0}, then Weyl extension.
/// Errors: Empty, NotExtendable (witness in the message), InvalidInput.
DivisorResult polytope_from_divisor(const RootDatum& rd, const std::vector<DivisorRay>& rays, bool strict_colours);

}  // namespace kstab
