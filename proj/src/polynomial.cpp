#include "kstab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kstab/error.hpp"

namespace kstab {

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t i) {
  Polynomial p(arity);
  Exponent e(arity, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::linear(const QVector& c, const Rational& c0) {
  Polynomial p(c.size());
  p.add_term(Exponent(c.size(), 0), c0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Exponent e(c.size(), 0);
    e[i] = 1;
    p.add_term(e, c[i]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != arity_) throw Error(ErrorCode::ArityMismatch, "exponent length differs from arity");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(const QVector& y) const {
  if (y.size() != arity_) throw Error(ErrorCode::ArityMismatch, "point dimension differs from arity");
  // Cache powers per coordinate; exponents are small.
  std::vector<std::vector<Rational>> powers(arity_, std::vector<Rational>{Rational(1)});
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * y[i]);
      if (e[i]) t *= pw[e[i]];
    }
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(const std::vector<double>& y) const {
  if (y.size() != arity_) throw Error(ErrorCode::ArityMismatch, "point dimension differs from arity");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i]) t *= std::pow(y[i], static_cast<int>(e[i]));
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial d(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    d.add_term(f, c * e[i]);
  }
  return d;
}

Polynomial Polynomial::directional_derivative(const QVector& v) const {
  if (v.size() != arity_) throw Error(ErrorCode::ArityMismatch, "direction length differs from arity");
  Polynomial d(arity_);
  for (std::size_t i = 0; i < arity_; ++i)
    if (v[i] != 0) d += v[i] * derivative(i);
  return d;
}

Polynomial Polynomial::substitute_affine(const QMatrix& m, const QVector& b) const {
  if (m.size() != arity_ || b.size() != arity_)
    throw Error(ErrorCode::ArityMismatch, "affine substitution has wrong shape");
  const std::size_t k = m.empty() ? 0 : m[0].size();
  std::vector<Polynomial> lin;
  lin.reserve(arity_);
  for (std::size_t i = 0; i < arity_; ++i) lin.push_back(Polynomial::linear(m[i], b[i]));
  std::vector<std::vector<Polynomial>> powers(arity_);
  for (std::size_t i = 0; i < arity_; ++i) powers[i].push_back(Polynomial::constant(k, 1));

  Polynomial out(k);
  for (const auto& [e, c] : terms_) {
    Polynomial t = Polynomial::constant(k, c);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (!e[i]) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * lin[i]);
      t = t * pw[e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial r = Polynomial::constant(arity_, 1);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.arity_ != arity_) throw Error(ErrorCode::ArityMismatch, "adding polynomials of different arity");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.arity_ != arity_) throw Error(ErrorCode::ArityMismatch, "subtracting polynomials of different arity");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_) throw Error(ErrorCode::ArityMismatch, "multiplying polynomials of different arity");
  Polynomial r(a.arity_);
  Exponent e(a.arity_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    bool constant_term = std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
    if (a != 1 || constant_term) os << a.get_str();
    bool need_star = a != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << "y" << i;
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences, then expansion into the monomial basis.
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly result;
  for (std::size_t k = n; k-- > 0;) {
    // result = result * (t - xs[k]) + dd[k]
    result = result * UPoly({-xs[k], Rational(1)}) + UPoly::constant(dd[k]);
  }
  return result;
}

Rational UPoly::operator()(const Rational& t) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

double UPoly::operator()(double t) const {
  double v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + it->get_d();
  return v;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(r));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  std::vector<Rational> r = a.c_;
  for (auto& x : r) x *= s;
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = rem[k + db] / b.leading();
    quot[k] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.c_[j];
  }
  rem.resize(db);
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (1 / Rational(a.leading())) * a;
}

UPoly UPoly::square_free() const {
  if (degree() <= 0) return *this;
  UPoly g = gcd(*this, derivative());
  UPoly s = divmod(*this, g).first;
  return (1 / Rational(s.leading())) * s;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (a != 1 || k == 0) os << a.get_str();
    if (k > 0) {
      if (a != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- roots

double RealRoot::approx() const { return exact ? lo.get_d() : Rational((lo + hi) / 2).get_d(); }

namespace {

std::vector<UPoly> sturm_sequence(const UPoly& s) {
  std::vector<UPoly> seq{s, s.derivative()};
  while (!seq.back().is_zero()) {
    auto r = UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int variations(const std::vector<UPoly>& seq, const Rational& t) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Leading coefficient of the primitive integer multiple of s.
Integer integer_leading(const UPoly& s) {
  Integer l = 1;
  for (const auto& c : s.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& c : s.coeffs()) {
    Rational v = c * l;
    ints.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
  }
  Integer lead = ints.back() / g;
  return abs(lead);
}

}  // namespace

int count_roots(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidInput, "root count of the zero polynomial");
  if (p.degree() == 0 || !(a < b)) return 0;
  auto seq = sturm_sequence(p.square_free());
  return variations(seq, a) - variations(seq, b);
}

Rational default_root_width() {
  Integer two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  return Rational(1, two64);
}

std::vector<RealRoot> isolate_roots(const UPoly& p, const Rational& a, const Rational& b,
                                    const Rational& width) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidInput, "root isolation of the zero polynomial");
  std::vector<RealRoot> roots;
  if (p.degree() == 0 || b < a) return roots;
  const UPoly s = p.square_free();
  const auto seq = sturm_sequence(s);
  const Integer lead = integer_leading(s);

  if (s(a) == 0) roots.push_back({true, a, a});
  if (!(a < b)) return roots;

  // Resolve a single-root interval (lo, hi]: try the rational candidates
  // k / lead first (any rational root has such a form), then shrink.
  auto finish = [&](Rational lo, Rational hi) {
    for (;;) {
      if (s(hi) == 0) {
        roots.push_back({true, hi, hi});
        return;
      }
      Rational w = hi - lo;
      if (w * lead < 1) {
        Rational klo = lo * lead, khi = hi * lead;
        Integer k;
        mpz_cdiv_q(k.get_mpz_t(), klo.get_num_mpz_t(), klo.get_den_mpz_t());
        for (; Rational(k) <= khi; ++k) {
          Rational cand = ratio(k, lead);
          if (lo < cand && cand <= hi && s(cand) == 0) {
            roots.push_back({true, cand, cand});
            return;
          }
        }
        if (w < width) {
          roots.push_back({false, lo, hi});
          return;
        }
      }
      Rational mid = (lo + hi) / 2;
      if (variations(seq, lo) - variations(seq, mid) == 1) hi = mid;
      else lo = mid;
    }
  };

  struct Job { Rational lo, hi; int n; };
  std::vector<Job> stack{{a, b, variations(seq, a) - variations(seq, b)}};
  std::vector<std::pair<Rational, Rational>> singles;
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n <= 0) continue;
    if (j.n == 1) {
      singles.emplace_back(j.lo, j.hi);
      continue;
    }
    Rational mid = (j.lo + j.hi) / 2;
    int vmid = variations(seq, mid);
    stack.push_back({j.lo, mid, variations(seq, j.lo) - vmid});
    stack.push_back({mid, j.hi, vmid - variations(seq, j.hi)});
  }
  for (auto& [lo, hi] : singles) finish(lo, hi);
  std::sort(roots.begin(), roots.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return roots;
}

// ---------------------------------------------------------------- piecewise

std::size_t PiecewisePolynomial1D::piece_index(const Rational& t) const {
  return static_cast<std::size_t>(std::lower_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
}

Rational PiecewisePolynomial1D::operator()(const Rational& t) const { return pieces[piece_index(t)](t); }

PiecewisePolynomial1D PiecewisePolynomial1D::derivative() const {
  PiecewisePolynomial1D d;
  d.breakpoints = breakpoints;
  for (const auto& p : pieces) d.pieces.push_back(p.derivative());
  return d;
}

bool PiecewisePolynomial1D::is_continuous() const {
  for (std::size_t i = 0; i < breakpoints.size(); ++i)
    if (pieces[i](breakpoints[i]) != pieces[i + 1](breakpoints[i])) return false;
  return true;
}

}  // namespace kstab
