#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

using Exponent = std::vector<unsigned>;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t i);
  /// c . y + c0
  static Polynomial linear(const QVector& c, const Rational& c0 = 0);

  std::size_t arity() const { return arity_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial

  void add_term(const Exponent& e, const Rational& c);
  Rational coefficient(const Exponent& e) const;

  Rational evaluate(const QVector& y) const;
  double evaluate(const std::vector<double>& y) const;

  /// Partial derivative in coordinate i.
  Polynomial derivative(std::size_t i) const;
  /// Directional derivative d q(y)[v] = sum_i v_i dq/dy_i.
  Polynomial directional_derivative(const QVector& v) const;

  /// q(b + M t) as a polynomial in t; M is arity x k, b has length arity.
  Polynomial substitute_affine(const QMatrix& m, const QVector& b) const;

  Polynomial pow(unsigned n) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  std::size_t arity_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Dense univariate polynomial, coefficients in increasing degree.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }
  /// Unique polynomial of degree < n through n points with distinct abscissae.
  static UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  UPoly derivative() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; b nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  static UPoly gcd(UPoly a, UPoly b);
  /// p / gcd(p, p'), made monic.
  UPoly square_free() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// A real root either known exactly or enclosed in (lo, hi) with hi - lo tiny.
struct RealRoot {
  bool exact = false;
  Rational lo;
  Rational hi;  // equals lo when exact
  double approx() const;
};

/// Number of distinct real roots of p in the half-open interval (a, b].
int count_roots(const UPoly& p, const Rational& a, const Rational& b);

/// Distinct real roots of p in the closed interval [a, b], ascending.
/// Irrational roots come back as enclosures narrower than `width`.
/// p must be nonzero.
std::vector<RealRoot> isolate_roots(const UPoly& p, const Rational& a, const Rational& b,
                                    const Rational& width);

/// Default enclosure width 2^-64.
Rational default_root_width();

/// Piecewise polynomial on the real line: piece i lives on
/// [breakpoints[i-1], breakpoints[i]] with the first and last pieces
/// extending to -inf and +inf.
struct PiecewisePolynomial1D {
  std::vector<Rational> breakpoints;
  std::vector<UPoly> pieces;  // breakpoints.size() + 1 entries

  Rational operator()(const Rational& t) const;
  /// Index of the piece used at t (the left piece at a breakpoint).
  std::size_t piece_index(const Rational& t) const;
  PiecewisePolynomial1D derivative() const;
  /// Max |left - right| mismatch at breakpoints is zero.
  bool is_continuous() const;
};

}  // namespace kstab
