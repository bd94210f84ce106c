#pragma once

#include <string>
#include <vector>

#include "kstab/polynomial.hpp"
#include "kstab/rational.hpp"

namespace kstab {

enum class ColourType { TwoA, B, External };

const char* to_string(ColourType t);
ColourType parse_colour_type(const std::string& s);

struct ColourImage {
  QVector covector;  // rho(D) as a linear form on the lattice coordinates
  ColourType type = ColourType::External;
};

/// Spherical skeleton: lattice coordinates, inner product, restricted roots
/// with multiplicity, 2 rho, spherical simple roots and colour images.
///
/// Vectors live in M_R (lattice coordinates); the inner product is
/// <a, b> = a^T gram b. Linear forms (covectors) pair with vectors by the
/// plain dot product, and a vector v corresponds to the covector gram * v.
class RootDatum {
 public:
  RootDatum() = default;
  /// Validates the invariants and throws Error(InvalidInput) or
  /// Error(DegenerateRoot) on violation.
  RootDatum(std::size_t rank, QMatrix gram, std::vector<QVector> restricted_roots, QVector two_rho,
            std::vector<QVector> simple_roots, std::vector<ColourImage> colours = {});

  static constexpr std::size_t kClosureBound = 100000;

  std::size_t rank() const { return rank_; }
  const QMatrix& gram() const { return gram_; }
  const std::vector<QVector>& restricted_roots() const { return restricted_; }
  const QVector& two_rho() const { return two_rho_; }
  const std::vector<QVector>& simple_roots() const { return simple_; }
  const std::vector<ColourImage>& colours() const { return colours_; }

  Rational inner(const QVector& a, const QVector& b) const;
  /// gram * v.
  QVector covector_of(const QVector& v) const;
  /// gram^-1 * c.
  QVector vector_of(const QVector& c) const;

  /// Reflections in the spherical simple roots.
  const std::vector<QMatrix>& generators() const { return generators_; }
  /// Every element of the little Weyl group, identity first.
  const std::vector<QMatrix>& group() const { return group_; }
  /// Positive roots of the spherical root system (W-orbit of the simple
  /// roots intersected with their nonnegative span).
  const std::vector<QVector>& positive_roots() const { return positive_; }

  /// phi_i with <sigma_i, phi_j> = <sigma_i, sigma_i>/2 delta_ij, phi_j orthogonal to V_z.
  const std::vector<QVector>& fundamental_weights() const { return weights_; }
  /// Basis of the fixed subspace V_z.
  const std::vector<QVector>& central_basis() const { return central_; }

  bool is_dominant(const QVector& v) const;
  bool is_dominant_covector(const QVector& c) const;
  bool is_central_covector(const QVector& c) const;

  /// Action of w on a covector: c -> c . w^-1.
  static QVector act_on_covector(const QMatrix& w, const QVector& c);

  /// prod_{alpha in Phi+o} <alpha, y>.
  Polynomial pi() const;

 private:
  void build_group();

  std::size_t rank_ = 0;
  QMatrix gram_;
  QMatrix gram_inv_;
  std::vector<QVector> restricted_;
  QVector two_rho_;
  std::vector<QVector> simple_;
  std::vector<ColourImage> colours_;
  std::vector<QMatrix> generators_;
  std::vector<QMatrix> group_;
  std::vector<QVector> positive_;
  std::vector<QVector> weights_;
  std::vector<QVector> central_;
};

/// s_sigma(y) = y - 2 <sigma, y>/<sigma, sigma> sigma as a matrix.
QMatrix reflection_matrix(const QMatrix& gram, const QVector& sigma);

/// Closure of a generator set under multiplication; identity first.
/// Throws ClosureOverflow when more than `bound` elements appear.
std::vector<QMatrix> group_closure(const std::vector<QMatrix>& generators, std::size_t rank,
                                   std::size_t bound = RootDatum::kClosureBound);

}  // namespace kstab
