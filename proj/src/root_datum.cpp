#include "kstab/root_datum.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

const char* to_string(ColourType t) {
  switch (t) {
    case ColourType::TwoA: return "two_a";
    case ColourType::B: return "b";
    case ColourType::External: return "external";
  }
  return "external";
}

ColourType parse_colour_type(const std::string& s) {
  if (s == "two_a") return ColourType::TwoA;
  if (s == "b") return ColourType::B;
  if (s == "external") return ColourType::External;
  throw Error(ErrorCode::InvalidInput, "unknown colour type '" + s + "'");
}

QMatrix reflection_matrix(const QMatrix& gram, const QVector& sigma) {
  const std::size_t r = sigma.size();
  QVector gs = gram * sigma;
  Rational norm = dot(sigma, gs);
  if (norm == 0) throw Error(ErrorCode::DegenerateRoot, "simple root " + to_string(sigma) + " has zero length");
  QMatrix m = identity_matrix(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] -= 2 * sigma[i] * gs[j] / norm;
  return m;
}

std::vector<QMatrix> group_closure(const std::vector<QMatrix>& generators, std::size_t rank, std::size_t bound) {
  std::vector<QMatrix> elements{identity_matrix(rank)};
  std::set<QMatrix> seen{elements.front()};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      QMatrix p = g * elements[i];
      if (seen.insert(p).second) {
        elements.push_back(std::move(p));
        if (elements.size() > bound)
          throw Error(ErrorCode::ClosureOverflow, "group closure exceeds " + std::to_string(bound) + " elements");
      }
    }
  }
  return elements;
}

RootDatum::RootDatum(std::size_t rank, QMatrix gram, std::vector<QVector> restricted_roots, QVector two_rho,
                     std::vector<QVector> simple_roots, std::vector<ColourImage> colours)
    : rank_(rank),
      gram_(std::move(gram)),
      restricted_(std::move(restricted_roots)),
      two_rho_(std::move(two_rho)),
      simple_(std::move(simple_roots)),
      colours_(std::move(colours)) {
  if (rank_ == 0) throw Error(ErrorCode::InvalidInput, "rank must be positive");
  if (gram_.size() != rank_) throw Error(ErrorCode::InvalidInput, "gram must be rank x rank");
  for (const auto& row : gram_)
    if (row.size() != rank_) throw Error(ErrorCode::InvalidInput, "gram must be rank x rank");
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (gram_[i][j] != gram_[j][i]) throw Error(ErrorCode::InvalidInput, "gram is not symmetric");
  // Sylvester: all leading principal minors positive.
  for (std::size_t k = 1; k <= rank_; ++k) {
    QMatrix minor(k, QVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
    if (determinant(minor) <= 0) throw Error(ErrorCode::InvalidInput, "gram is not positive definite");
  }
  gram_inv_ = *inverse(gram_);
  auto check_len = [&](const QVector& v, const char* what) {
    if (v.size() != rank_) throw Error(ErrorCode::InvalidInput, std::string(what) + " has wrong length");
  };
  for (const auto& a : restricted_) {
    check_len(a, "restricted root");
    if (kstab::is_zero(a)) throw Error(ErrorCode::InvalidInput, "restricted root is zero");
  }
  check_len(two_rho_, "two_rho");
  for (const auto& s : simple_) {
    check_len(s, "simple root");
    if (inner(s, s) <= 0) throw Error(ErrorCode::DegenerateRoot, "simple root has nonpositive length");
  }
  for (const auto& c : colours_) check_len(c.covector, "colour image");
  if (simple_.size() > rank_ || kstab::rank(QMatrix(simple_)) != simple_.size())
    throw Error(ErrorCode::InvalidInput, "spherical simple roots are not linearly independent");

  for (const auto& s : simple_) generators_.push_back(reflection_matrix(gram_, s));
  group_ = group_closure(generators_, rank_);

  // V_z = intersection of the walls <sigma, y> = 0.
  QMatrix walls;
  for (const auto& s : simple_) walls.push_back(covector_of(s));
  central_ = nullspace(walls, rank_);

  // Fundamental weights: <sigma_i, phi_j> = |sigma_i|^2/2 delta_ij and <z, phi_j> = 0.
  const std::size_t k = simple_.size();
  QMatrix system;
  for (const auto& s : simple_) system.push_back(covector_of(s));
  for (const auto& z : central_) system.push_back(covector_of(z));
  for (std::size_t j = 0; j < k; ++j) {
    QVector rhs = zeros(rank_);
    rhs[j] = inner(simple_[j], simple_[j]) / 2;
    auto sol = solve(system, rhs);
    if (!sol) throw Error(ErrorCode::InvalidInput, "cannot solve for fundamental weights");
    weights_.push_back(*sol);
  }

  // Positive roots: W-orbit of the simple roots with nonnegative simple-root coordinates.
  std::set<QVector> roots;
  for (const auto& w : group_)
    for (const auto& s : simple_) roots.insert(w * s);
  QMatrix basis_t;  // columns: simple roots then central basis
  for (std::size_t i = 0; i < rank_; ++i) {
    QVector row;
    for (const auto& s : simple_) row.push_back(s[i]);
    for (const auto& z : central_) row.push_back(z[i]);
    basis_t.push_back(row);
  }
  for (const auto& a : roots) {
    auto coeffs = solve(basis_t, a);
    if (!coeffs) continue;
    bool positive = true, nonzero = false;
    for (std::size_t i = 0; i < k; ++i) {
      if ((*coeffs)[i] < 0) positive = false;
      if ((*coeffs)[i] != 0) nonzero = true;
    }
    if (positive && nonzero) positive_.push_back(a);
  }
}

Rational RootDatum::inner(const QVector& a, const QVector& b) const { return dot(a, gram_ * b); }
QVector RootDatum::covector_of(const QVector& v) const { return gram_ * v; }
QVector RootDatum::vector_of(const QVector& c) const { return gram_inv_ * c; }

bool RootDatum::is_dominant(const QVector& v) const {
  for (const auto& s : simple_)
    if (inner(s, v) < 0) return false;
  return true;
}

bool RootDatum::is_dominant_covector(const QVector& c) const {
  for (const auto& s : simple_)
    if (dot(c, s) < 0) return false;
  return true;
}

bool RootDatum::is_central_covector(const QVector& c) const {
  for (const auto& s : simple_)
    if (dot(c, s) != 0) return false;
  return true;
}

QVector RootDatum::act_on_covector(const QMatrix& w, const QVector& c) {
  auto inv = inverse(w);
  return covector_times(c, *inv);
}

Polynomial RootDatum::pi() const {
  Polynomial p = Polynomial::constant(rank_, 1);
  for (const auto& a : restricted_) p = p * Polynomial::linear(covector_of(a));
  return p;
}

}  // namespace kstab
