#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/futaki.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"

namespace kstab {

// ---------------------------------------------------------------- Fano check

struct FanoFacet {
  std::size_t facet = 0;  // index in P+
  Rational offset;        // lambda_A as stored (outer normal)
  Rational required;      // 1 + <outer normal, 2 rho>
  bool ok = false;
};

struct FanoCheck {
  bool fano = false;
  std::vector<FanoFacet> facets;  // outer facets only
};

/// lambda_A = 1 + 2 <rho, u_A> on every outer facet, written with the
/// stored outer normal. Never throws.
FanoCheck check_fano(const FutakiContext& ctx);

/// (1/V) int_{P+} <grad u, y - 2 rho> pi dy, cell by cell. Equal to L(u)
/// when the polytope is Fano normalized; otherwise a model functional.
Rational fano_futaki(const FutakiContext& ctx, const PLFunction& u);

// ---------------------------------------------------------------- verdicts

enum class VerdictKind { KStable, StrictlySemistable, Unstable };
const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::KStable;
  /// StrictlySemistable: the fundamental weight (a vector).
  std::optional<QVector> weight;
  /// StrictlySemistable and Unstable: the linear test function l_w with
  /// the functional value on it.
  std::optional<PLFunction> witness;
  std::optional<Rational> witness_value;
  std::string note;
};

struct DegenerationData;

struct StabilityReport {
  Verdict verdict;
  QVector barycenter;          // b(P+) for the measure pi dy
  QVector sum_positive_roots;  // sum over Phi+
  QVector cone_coeffs;         // c_i in b - sum = sum c_i sigma_i + z
  QVector central_component;   // z, a vector in V_z
  FanoCheck fano;
  std::vector<std::string> theorem_flags;
};

/// Decomposes b - sum Phi+ along the spherical simple roots and V_z.
StabilityReport barycenter_criterion(const FutakiContext& ctx);

// ---------------------------------------------------------------- scans

struct ScanEntry {
  QVector direction;  // Lambda as a covector
  bool central = false;
  Rational lambda_min;
  Rational lambda_max;
  /// lambda -> L(max{Lambda . y - lambda, 0}) on the whole line.
  PiecewisePolynomial1D values;
  /// f(lambda_min) = L(l_Lambda).
  Rational affine_value;
  /// Zeros of f on [lambda_min, lambda_max], ascending.
  std::vector<RealRoot> roots;
  /// Exact: f >= 0 on [lambda_min, lambda_max] (the affine end excluded for
  /// central directions, where it is a product configuration).
  bool nonnegative = false;
  /// Exact: f > 0 on the open interval (lambda_min, lambda_max).
  bool positive_inside = false;
  /// Smallest value among the affine end (non-central only), interior
  /// breakpoints, critical points and the midpoint.
  double min_value = 0;
  Rational min_at;
};

struct ScanResult {
  std::vector<ScanEntry> entries;
  double min_value = 0;
  std::size_t min_index = 0;
  bool all_nonnegative = true;
};

/// Fundamental weights, dominant elements of Phi+, and a Farey net of
/// denominator <= net_denominator between pairs of the generators of V+
/// (fundamental weights and +-V_z basis). Covectors, primitive, unique.
std::vector<QVector> direction_net(const RootDatum& rd, unsigned net_denominator = 16);

ScanEntry scan_direction(const FutakiContext& ctx, const QVector& direction);
ScanResult witness_scan(const FutakiContext& ctx, const std::vector<QVector>& directions);

// ---------------------------------------------------------------- degeneration

enum class FiberClass { HorosphericalKStable, Inconsistent };
const char* to_string(FiberClass c);

struct DegenerationData {
  ChamberPolytope polytope;  // same P+, every facet outer
  RootDatum fiber_datum;     // trivial little Weyl group
  std::size_t weyl_order = 1;
  QVector barycenter;
  QVector sum_positive_roots;
  bool barycenter_check = false;  // b(P+) = sum over Phi+
  FiberClass classification = FiberClass::Inconsistent;
  std::vector<std::string> diagnostics;
};

/// Rank 2, dim V_z = 1 and a strictly semistable verdict, else
/// PreconditionNotMet naming the failed condition.
DegenerationData polystable_degeneration(const FutakiContext& ctx);

/// Futaki context of the central fiber.
FutakiContext fiber_context(const DegenerationData& d, FutakiOptions options = {});

// ---------------------------------------------------------------- optimal degeneration

struct OptimalObjective {
  Rational value;              // fano functional L(u)
  Rational norm2;              // int u^2 pi dy over P+
  Rational projected_norm2;    // after removing the span of 1 and central coordinates
  double w = 0;                // value / sqrt(projected_norm2)
};

/// Error: ZeroNorm when u is a central affine function.
OptimalObjective optimal_objective(const FutakiContext& ctx, const PLFunction& u);

// ---------------------------------------------------------------- soliton

struct SolitonOptions {
  double tolerance = 1e-10;
  int max_iterations = 100;
  int quadrature_order = 32;
};

struct SolitonResult {
  std::vector<double> coefficients;  // in the central basis
  std::vector<double> field;         // V as a vector in lattice coordinates
  double residual = 0;               // max_j |dF/dv_j| / F
  int iterations = 0;
  std::vector<double> objective;     // F after each accepted step, starting value first
};

/// Minimizes F(v) = int_{P+} exp(<V, y - 2 rho>) pi dy over V in V_z by
/// damped Newton. Errors: PreconditionNotMet when V_z = 0, NoConvergence.
SolitonResult soliton_field(const FutakiContext& ctx, const SolitonOptions& options = {});

}  // namespace kstab
