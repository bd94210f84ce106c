#include "kstab/futaki.hpp"

#include "kstab/error.hpp"
#include "kstab/integrate.hpp"

namespace kstab {

Polynomial build_pi(const RootDatum& rd) { return rd.pi(); }

FutakiContext FutakiContext::build(const RootDatum& rd, const ChamberPolytope& cp, FutakiOptions options) {
  if (cp.plus.dim() != rd.rank()) throw Error(ErrorCode::ArityMismatch, "polytope and root datum ranks differ");
  FutakiContext ctx;
  ctx.rd_ = rd;
  ctx.cp_ = cp;
  ctx.options_ = options;
  ctx.pi_ = build_pi(rd);
  ctx.grad_term_ = ctx.pi_.directional_derivative(rd.two_rho());

  const auto& plus = cp.plus;
  const QVector centre = plus.vertex_average();
  auto check_point = [&](const QVector& y) {
    if (ctx.pi_.evaluate(y) < 0)
      throw Error(ErrorCode::InvalidInput, "pi is negative at " + to_string(y) + "; restricted roots must be positive on V+");
  };
  check_point(centre);
  for (const auto& v : plus.vertices()) {
    check_point(v);
    check_point(Rational(1, 2) * (v + centre));
  }

  ctx.volume_ = integrate(plus, ctx.pi_);
  if (ctx.volume_ <= 0) throw Error(ErrorCode::ZeroMass, "int pi dy over P+ vanishes");
  ctx.boundary_mass_ = 0;
  for (auto i : cp.outer_facets) ctx.boundary_mass_ += integrate_facet(plus, i, ctx.pi_);
  ctx.rho_mass_ = integrate(plus, ctx.grad_term_);
  ctx.mean_scalar_ = (ctx.boundary_mass_ + ctx.rho_mass_) / ctx.volume_;

  ctx.shift_ = options.shift ? cp.base.vertex_average() : zeros(rd.rank());
  for (auto i : cp.outer_facets) {
    const auto& h = plus.halfspaces()[i];
    if (h.offset - dot(h.normal, ctx.shift_) == 0) ctx.zero_offset_.push_back(i);
  }
  ctx.extremal_ = extremal_field(ctx);
  return ctx;
}

FutakiTerms futaki_L_terms(const FutakiContext& ctx, const PLFunction& u) {
  const auto& plus = ctx.plus();
  const auto& hs = plus.halfspaces();
  FutakiTerms t;
  t.boundary = 0;
  for (auto i : ctx.cp().outer_facets) t.boundary += integrate_pl_on_hyperplane(hs, hs[i], u, ctx.pi());
  t.scalar = ctx.mean_scalar() * integrate_pl(hs, plus.dim(), u, ctx.pi());
  t.rho = integrate_pl(hs, plus.dim(), u, ctx.grad_term());
  t.value = (t.boundary - t.scalar + t.rho) / ctx.volume();
  return t;
}

Rational futaki_L_unchecked(const FutakiContext& ctx, const PLFunction& u) { return futaki_L_terms(ctx, u).value; }

namespace {

void require_dominant(const FutakiContext& ctx, const PLFunction& u) {
  if (u.dim() != ctx.rd().rank()) throw Error(ErrorCode::ArityMismatch, "test function has wrong dimension");
  if (!gradients_dominant(ctx.rd(), u, ctx.plus().halfspaces()))
    throw Error(ErrorCode::NotDominant, "an active gradient of the test function is not dominant");
}

}  // namespace

Rational futaki_L(const FutakiContext& ctx, const PLFunction& u) {
  require_dominant(ctx, u);
  return futaki_L_unchecked(ctx, u);
}

ExtremalField extremal_field(const FutakiContext& ctx) {
  const auto& rd = ctx.rd();
  const std::size_t r = rd.rank();
  std::vector<AffineForm> basis{{zeros(r), Rational(1)}};
  for (const auto& z : rd.central_basis()) basis.push_back({rd.covector_of(z), Rational(0)});
  const std::size_t n = basis.size();

  QMatrix a(n, zeros(n));
  QVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial fi = basis[i].polynomial() * ctx.pi();
    for (std::size_t j = 0; j < n; ++j) a[i][j] = integrate(ctx.plus(), fi * basis[j].polynomial());
    rhs[i] = ctx.volume() * futaki_L_unchecked(ctx, PLFunction({basis[i]}));
  }
  auto sol = solve(a, rhs);
  if (!sol) throw Error(ErrorCode::SingularMoment, "moment matrix of the central functions is singular");

  ExtremalField ef;
  ef.c = (*sol)[0];
  ef.x = zeros(r);
  QVector grad = zeros(r);
  for (std::size_t j = 1; j < n; ++j) {
    ef.x = ef.x + (*sol)[j] * rd.central_basis()[j - 1];
    grad = grad + (*sol)[j] * basis[j].grad;
  }
  ef.theta = {grad, ef.c};
  return ef;
}

Rational relative_futaki(const FutakiContext& ctx, const PLFunction& u) {
  require_dominant(ctx, u);
  const auto& plus = ctx.plus();
  const auto& hs = plus.halfspaces();
  const QVector& s = ctx.shift();
  Rational flux = 0;
  for (auto i : ctx.cp().outer_facets) {
    const auto& h = hs[i];
    Rational lambda = h.offset - dot(h.normal, s);
    Polynomial weight = Polynomial::linear(h.normal, -dot(h.normal, s)) * ctx.pi();
    if (lambda == 0) {
      auto chart = hyperplane_chart(h.normal, h.offset);
      if (chart.pullback(ctx.pi()).is_zero()) continue;
      throw Error(ErrorCode::ZeroOffsetFacet,
                  "outer facet " + std::to_string(i) + " passes through the origin and pi does not vanish on it");
    }
    flux += integrate_pl_on_hyperplane(hs, h, u, weight) / lambda;
  }
  const auto& th = ctx.extremal().theta;
  Polynomial scalar = (Polynomial::constant(plus.dim(), ctx.mean_scalar()) + th.polynomial()) * ctx.pi();
  Rational interior = integrate_pl(hs, plus.dim(), u, ctx.grad_term() - scalar);
  return (flux + interior) / ctx.volume();
}

Rational relative_futaki_identity(const FutakiContext& ctx, const PLFunction& u) {
  require_dominant(ctx, u);
  Rational theta_term =
      integrate_pl(ctx.plus().halfspaces(), ctx.plus().dim(), u, ctx.extremal().theta.polynomial() * ctx.pi());
  return futaki_L_unchecked(ctx, u) - theta_term / ctx.volume();
}

// ---------------------------------------------------------------- Theta

int ThetaFunction::sign_at(const QVector& y) const {
  return sgn(numerator.evaluate(y)) * sgn(denominator.evaluate(y));
}

ThetaFunction theta_function(const FutakiContext& ctx) {
  const auto& rd = ctx.rd();
  const std::size_t r = rd.rank();
  ThetaFunction th;
  th.constant = ctx.mean_scalar() + ctx.extremal().c;
  th.linear = ctx.extremal().theta.grad;
  for (const auto& a : rd.restricted_roots()) {
    QVector cov = rd.covector_of(a);
    th.poles.push_back({cov, dot(cov, rd.two_rho())});
  }
  th.denominator = ctx.pi();
  th.numerator = Polynomial::linear(th.linear, th.constant) * ctx.pi();
  for (std::size_t i = 0; i < th.poles.size(); ++i) {
    Polynomial rest = Polynomial::constant(r, th.poles[i].coefficient);
    for (std::size_t j = 0; j < th.poles.size(); ++j)
      if (j != i) rest = rest * Polynomial::linear(th.poles[j].covector);
    th.numerator -= rest;
  }
  th.negativity_empty = th.poles.empty() && kstab::is_zero(th.linear) && th.constant > 0;

  // All poles along one direction and no linear part: the negativity region
  // is a strip along the walls.
  if (!th.poles.empty() && kstab::is_zero(th.linear) && th.constant > 0) {
    QVector d = primitive_direction(th.poles.front().covector);
    Rational total = 0;
    bool parallel = true;
    for (const auto& p : th.poles) {
      auto pf = primitive_form(p.covector);
      QVector dir;
      for (const auto& x : pf.primitive) dir.emplace_back(x);
      if (dir != d) {
        parallel = false;
        break;
      }
      total += p.coefficient / pf.scale;
    }
    if (parallel && total > 0) th.strip = ThetaStrip{d, total / th.constant};
  }
  return th;
}

bool theta_negative_on_segment(const ThetaFunction& theta, const QVector& a, const QVector& b) {
  const std::size_t r = a.size();
  QMatrix m(r, QVector(1));
  for (std::size_t i = 0; i < r; ++i) m[i][0] = b[i] - a[i];
  auto to_upoly = [](const Polynomial& p) {
    std::vector<Rational> c(std::max(p.degree(), 0) + 1, Rational(0));
    for (const auto& [e, v] : p.terms()) c[e[0]] = v;
    return UPoly(std::move(c));
  };
  UPoly prod = to_upoly(theta.numerator.substitute_affine(m, a)) * to_upoly(theta.denominator.substitute_affine(m, a));
  if (prod.is_zero()) return false;
  int roots = count_roots(prod, Rational(0), Rational(1)) - (prod(Rational(1)) == 0 ? 1 : 0);
  return roots == 0 && prod(Rational(1, 2)) < 0;
}

}  // namespace kstab
