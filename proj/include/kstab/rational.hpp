#pragma once

// Exact rational scalars, vectors and small dense matrices.
//
// Everything geometric in the library is done over Q; floating point only
// appears in the soliton solver and in test oracles.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kstab {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const QVector& v);

/// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.125".
/// Throws Error(InvalidInput) on anything else.
Rational parse_rational(std::string_view text);

/// n/d in canonical form. Use this rather than Rational(n, d) whenever n
/// and d may share a factor: gmp arithmetic assumes canonical operands.
Rational ratio(const Integer& n, const Integer& d);

int sign(const Rational& q);
bool is_zero(const QVector& v);

QVector zeros(std::size_t n);
QVector unit_vector(std::size_t n, std::size_t i);
Rational dot(const QVector& a, const QVector& b);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator-(const QVector& a);
QVector operator*(const Rational& s, const QVector& v);

QMatrix identity_matrix(std::size_t n);
QMatrix transpose(const QMatrix& m);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& m, const QVector& v);
/// Row vector times matrix: (c^T M)^T. Used to pull covectors back.
QVector covector_times(const QVector& c, const QMatrix& m);

Rational determinant(QMatrix m);
std::size_t rank(QMatrix m);
/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols);
/// Unique solution of m x = b for square nonsingular m, otherwise nullopt.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);
std::optional<QMatrix> inverse(const QMatrix& m);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<QVector>& points);

/// Writes v = scale * p with p an integer vector of coprime entries and
/// scale > 0. v must be nonzero.
struct PrimitiveForm {
  std::vector<Integer> primitive;
  Rational scale;
};
PrimitiveForm primitive_form(const QVector& v);
/// The primitive integer vector as rationals (denominators one).
QVector primitive_direction(const QVector& v);

/// Unimodular completion for a primitive integer covector c: returns an
/// integer matrix U with det U = +-1 and c . U = (1, 0, ..., 0). The first
/// column is a lattice point on {c.y = 1}; the remaining columns are a
/// basis of the lattice {y in Z^r : c.y = 0}.
QMatrix unimodular_completion(const std::vector<Integer>& c);

Integer factorial(unsigned n);

/// Lexicographic order on vectors of equal length.
bool lex_less(const QVector& a, const QVector& b);

}  // namespace kstab
