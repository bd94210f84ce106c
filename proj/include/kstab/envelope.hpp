#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/futaki.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Boundary values of a function on a convex polygon, listed in
/// counterclockwise order starting at the first vertex.
struct BoundaryData {
  Polytope polygon;
  std::vector<QVector> points;
  std::vector<Rational> values;
  /// Index of the polygon edge each point starts (points[i] to points[i+1]
  /// lies on edge[i]).
  std::vector<std::size_t> edge;
  bool exact = true;  // restriction of a PL function
  Rational h = 0;     // sampling step for sampled data
};

/// Polygon vertices in counterclockwise order starting at the lex-least one.
std::vector<QVector> ccw_vertices(const Polytope& polygon);

/// Exact restriction of u to the boundary, with every breakpoint of u on
/// each edge included. Error: RankUnsupported unless rank 2.
BoundaryData boundary_from_pl(const Polytope& polygon, const PLFunction& u);

/// Samples q along each edge with step at most h in the max norm.
BoundaryData boundary_from_polynomial(const Polytope& polygon, const Polynomial& q, const Rational& h);

struct ContactCell {
  AffineForm plane;
  std::vector<QVector> vertices;  // counterclockwise, all on the boundary of P
};

struct VertexMass {
  QVector vertex;
  Rational mass;  // area of the subgradient polygon
  bool interior = false;
};

struct MACheck {
  bool zero = true;  // all interior masses vanish
  std::vector<VertexMass> masses;
  std::vector<QVector> offending;
};

struct EnvelopeResult {
  PLFunction function;
  std::vector<ContactCell> cells;
  MACheck ma;
  bool exact = true;
  Rational h = 0;
};

/// Largest convex function below the data on the boundary: the lower hull
/// of the lifted samples. Error: NonConvexEdgeData.
EnvelopeResult convex_envelope(const BoundaryData& bd);

/// Alexandrov masses at the vertices of the cell complex of u on P.
/// Boundary vertices are listed but never make the check fail.
MACheck ma_measure_zero_check(const PLFunction& u, const Polytope& polygon);
MACheck ma_measure_zero_check(const EnvelopeResult& er, const Polytope& polygon);

/// Every gradient active on a full-dimensional cell of P lies in V+.
bool is_w_dominate(const RootDatum& rd, const PLFunction& u, const Polytope& p);

/// Exact convexity test of the W-extension y -> u(y+) over the W-orbit of
/// P+ (a PL function is convex iff each cell's affine piece is a global
/// minorant, checked at all cell vertices).
bool w_extension_convex(const RootDatum& rd, const PLFunction& u, const Polytope& plus);

/// Exact area of the convex hull of planar points.
Rational hull_area(std::vector<QVector> points);
/// Convex hull of planar points, counterclockwise, without collinear points.
std::vector<QVector> convex_hull_2d(std::vector<QVector> points);

// ---------------------------------------------------------------- crease search

enum class KernelFunctional { Relative, Fano };

struct CreaseCandidate {
  PLFunction function;
  QVector normal;    // primitive covector of the crease
  Rational lambda;   // crease {normal . y = lambda}
  std::string kind;  // "wall" or "edge"
  bool dominant = false;
  std::optional<Rational> value;  // functional value when dominant
  bool parallel_to_root = false;
  bool in_theta_negative = false;
  std::vector<QVector> segment;   // crease inside P+
};

struct CreaseResult {
  QVector z_o;
  AffineForm support;  // central affine support at z_o
  PLFunction normalized;
  std::vector<QVector> contact;  // vertices of the contact set T
  int contact_dim = -1;
  std::string case_label;
  std::vector<CreaseCandidate> candidates;
};

/// Searches the contact set of a kernel element for simple PL witnesses.
/// Errors: RankUnsupported, NotAKernelElement, PreconditionNotMet.
CreaseResult crease_search(const FutakiContext& ctx, const PLFunction& u0,
                           KernelFunctional functional = KernelFunctional::Relative);

}  // namespace kstab
