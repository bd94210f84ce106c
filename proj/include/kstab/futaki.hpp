#pragma once

#include <optional>
#include <vector>

#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"
#include "kstab/root_datum.hpp"

namespace kstab {

/// prod_{alpha in Phi+o} <alpha, y>, valid on V+.
Polynomial build_pi(const RootDatum& rd);

struct FutakiOptions {
  /// Move the origin to an interior point of V_z with P before evaluating
  /// the facet flux form of L_X. When false the origin is used as is.
  bool shift = true;
};

struct ExtremalField {
  QVector x;               // X in V_z (a vector)
  Rational c;              // c_X
  AffineForm theta;        // theta_X(y) = <X, y> + c_X as an affine form
};

/// Everything the functionals need, computed once.
class FutakiContext {
 public:
  /// Errors: InvalidInput when pi is negative somewhere on P+, ZeroMass when
  /// V = 0, SingularMoment if the extremal system is singular.
  static FutakiContext build(const RootDatum& rd, const ChamberPolytope& cp, FutakiOptions options = {});

  const RootDatum& rd() const { return rd_; }
  const ChamberPolytope& cp() const { return cp_; }
  const Polytope& plus() const { return cp_.plus; }
  const Polynomial& pi() const { return pi_; }
  /// <2 rho, grad pi>: the derivative of pi along the vector 2 rho.
  const Polynomial& grad_term() const { return grad_term_; }
  const Rational& volume() const { return volume_; }
  const Rational& mean_scalar() const { return mean_scalar_; }
  /// Sum over outer facets of int pi d sigma (lattice measure).
  const Rational& boundary_mass() const { return boundary_mass_; }
  const Rational& rho_mass() const { return rho_mass_; }
  const ExtremalField& extremal() const { return extremal_; }
  const QVector& shift() const { return shift_; }
  const FutakiOptions& options() const { return options_; }
  /// Outer facets whose offset vanishes after the shift; their flux terms
  /// are defined as zero and the facets are reported.
  const std::vector<std::size_t>& zero_offset_facets() const { return zero_offset_; }

  /// Coefficients of C_G dim H^0(L^k) = a k^n + b k^(n-1) + o(k^(n-1)).
  Rational h0_leading() const { return volume_; }
  Rational h0_subleading() const { return (boundary_mass_ + rho_mass_) / 2; }

 private:
  RootDatum rd_;
  ChamberPolytope cp_;
  FutakiOptions options_;
  Polynomial pi_;
  Polynomial grad_term_;
  Rational volume_;
  Rational mean_scalar_;
  Rational boundary_mass_;
  Rational rho_mass_;
  ExtremalField extremal_;
  QVector shift_;
  std::vector<std::size_t> zero_offset_;
};

/// Unnormalized pieces of V * L(u).
struct FutakiTerms {
  Rational boundary;  // sum over outer facets of int u pi d sigma
  Rational scalar;    // S int u pi dy
  Rational rho;       // int u <2 rho, grad pi> dy
  Rational value;     // (boundary - scalar + rho) / V
};

/// L(u). Error: NotDominant.
Rational futaki_L(const FutakiContext& ctx, const PLFunction& u);
FutakiTerms futaki_L_terms(const FutakiContext& ctx, const PLFunction& u);

/// Solves L_X(l) = 0 on the constant and the central coordinates.
ExtremalField extremal_field(const FutakiContext& ctx);

/// L_X(u) through the facet flux form with the 1/lambda_A weights taken at
/// the shifted origin. Errors: NotDominant, ZeroOffsetFacet.
Rational relative_futaki(const FutakiContext& ctx, const PLFunction& u);
/// L_X(u) = L(u) - (1/V) int u theta_X pi dy.
Rational relative_futaki_identity(const FutakiContext& ctx, const PLFunction& u);

/// Evaluations without the dominance check, for internal use on affine
/// functions and for tests.
Rational futaki_L_unchecked(const FutakiContext& ctx, const PLFunction& u);

struct ThetaStrip {
  QVector direction;  // primitive covector d
  Rational bound;     // {Theta < 0} with P+ is {0 < d . y < bound}
};

struct ThetaFunction {
  Rational constant;   // S + c_X
  QVector linear;      // covector of the linear part of theta_X
  struct Pole {
    QVector covector;  // <alpha, .>
    Rational coefficient;  // <alpha, 2 rho>
  };
  std::vector<Pole> poles;   // Theta = constant + linear . y - sum coefficient / (covector . y)
  Polynomial numerator;      // Theta * prod <alpha, y>
  Polynomial denominator;    // prod <alpha, y> = pi
  std::optional<ThetaStrip> strip;
  /// True when Theta is a positive constant, so {Theta < 0} is empty.
  bool negativity_empty = false;

  /// Sign of Theta at a point of int V+ off every pole.
  int sign_at(const QVector& y) const;
};

ThetaFunction theta_function(const FutakiContext& ctx);

/// Exact test whether Theta < 0 on the open segment (a, b) inside int V+.
bool theta_negative_on_segment(const ThetaFunction& theta, const QVector& a, const QVector& b);

}  // namespace kstab
