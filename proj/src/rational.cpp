#include "kstab/rational.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "kstab/error.hpp"

namespace kstab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateRoot: return "DegenerateRoot";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::LowerDimensional: return "LowerDimensional";
    case ErrorCode::NotWeylInvariant: return "NotWeylInvariant";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadFacet: return "BadFacet";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::NotDominant: return "NotDominant";
    case ErrorCode::SingularMoment: return "SingularMoment";
    case ErrorCode::ZeroOffsetFacet: return "ZeroOffsetFacet";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonConvexEdgeData: return "NonConvexEdgeData";
    case ErrorCode::NotAKernelElement: return "NotAKernelElement";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty rational");

  auto all_digits = [](std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error(ErrorCode::InvalidInput, "bad rational '" + s + "'");
    Integer d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    auto ip = body.substr(0, dot_pos);
    auto fp = body.substr(dot_pos + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw Error(ErrorCode::InvalidInput, "bad decimal '" + s + "'");
    Integer whole(ip.empty() ? std::string("0") : std::string(ip));
    Integer frac(fp.empty() ? std::string("0") : std::string(fp));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    value = ratio(whole * scale + frac, scale);
  } else {
    if (!all_digits(body)) throw Error(ErrorCode::InvalidInput, "bad rational '" + s + "'");
    value = Rational(Integer(std::string(body)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

Rational ratio(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

int sign(const Rational& q) { return sgn(q); }

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zeros(n);
  v[i] = 1;
  return v;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector operator-(const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

QMatrix identity_matrix(std::size_t n) {
  QMatrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix transpose(const QMatrix& m) {
  if (m.empty()) return {};
  QMatrix t(m[0].size(), zeros(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, zeros(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

QVector operator*(const QMatrix& m, const QVector& v) {
  QVector r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

QVector covector_times(const QVector& c, const QMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  QVector r = zeros(cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) r[j] += c[i] * m[i][j];
  }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][col];
    // Pivots are searched in the first `cols` columns only; any augmented
    // columns to the right are carried along.
    const std::size_t width = m[row].size();
    for (std::size_t j = col; j < width; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < width; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(m[p], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i][col] == 0) continue;
      Rational f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return det;
}

std::size_t rank(QMatrix m) {
  if (m.empty()) return 0;
  return row_reduce(m, m[0].size()).size();
}

std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols) {
  QMatrix a = m;
  auto pivots = row_reduce(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  const std::size_t n = m.size();
  if (n == 0) return QVector{};
  QMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = m[i];
    a[i].push_back(b[i]);
  }
  auto pivots = row_reduce(a, n);
  if (pivots.size() != n) return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const std::size_t n = m.size();
  QMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = m[i];
    auto e = unit_vector(n, i);
    a[i].insert(a[i].end(), e.begin(), e.end());
  }
  auto pivots = row_reduce(a, n);
  if (pivots.size() != n) return std::nullopt;
  QMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = QVector(a[i].begin() + n, a[i].end());
  return inv;
}

int affine_dimension(const std::vector<QVector>& points) {
  if (points.empty()) return -1;
  QMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

PrimitiveForm primitive_form(const QVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * lcm_den;
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) throw Error(ErrorCode::InvalidInput, "primitive form of the zero vector");
  for (auto& x : ints) x /= g;
  return {std::move(ints), ratio(g, lcm_den)};
}

QVector primitive_direction(const QVector& v) {
  auto pf = primitive_form(v);
  QVector out(pf.primitive.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Rational(pf.primitive[i]);
  return out;
}

QMatrix unimodular_completion(const std::vector<Integer>& c) {
  const std::size_t r = c.size();
  std::vector<Integer> row = c;
  std::vector<std::vector<Integer>> u(r, std::vector<Integer>(r, 0));
  for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < r; ++i) u[i][dst] -= q * u[i][src];
  };
  for (;;) {
    std::size_t p = r;
    for (std::size_t j = 0; j < r; ++j)
      if (row[j] != 0 && (p == r || abs(row[j]) < abs(row[p]))) p = j;
    if (p == r) throw Error(ErrorCode::InvalidInput, "unimodular completion of zero covector");
    bool reduced = true;
    for (std::size_t j = 0; j < r; ++j) {
      if (j == p || row[j] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), row[j].get_mpz_t(), row[p].get_mpz_t());
      row[j] -= q * row[p];
      col_axpy(j, p, q);
      if (row[j] != 0) reduced = false;
    }
    if (!reduced) continue;
    if (abs(row[p]) != 1) throw Error(ErrorCode::InvalidInput, "covector is not primitive");
    if (p != 0) {
      std::swap(row[0], row[p]);
      for (std::size_t i = 0; i < r; ++i) std::swap(u[i][0], u[i][p]);
    }
    if (row[0] < 0) {
      row[0] = -row[0];
      for (std::size_t i = 0; i < r; ++i) u[i][0] = -u[i][0];
    }
    break;
  }
  QMatrix out(r, zeros(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out[i][j] = Rational(u[i][j]);
  return out;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

bool lex_less(const QVector& a, const QVector& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace kstab
