#include "kstab/stability.hpp"

#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <set>
#include <thread>

#include "kstab/error.hpp"
#include "kstab/integrate.hpp"

namespace kstab {

FanoCheck check_fano(const FutakiContext& ctx) {
  FanoCheck out;
  out.fano = true;
  const auto& hs = ctx.plus().halfspaces();
  for (auto i : ctx.cp().outer_facets) {
    FanoFacet f;
    f.facet = i;
    f.offset = hs[i].offset;
    f.required = 1 + dot(hs[i].normal, ctx.rd().two_rho());
    f.ok = f.offset == f.required;
    out.fano = out.fano && f.ok;
    out.facets.push_back(std::move(f));
  }
  return out;
}

Rational fano_futaki(const FutakiContext& ctx, const PLFunction& u) {
  const auto& plus = ctx.plus();
  const std::size_t r = plus.dim();
  if (u.dim() != r) throw Error(ErrorCode::ArityMismatch, "test function has wrong dimension");
  const QVector& two_rho = ctx.rd().two_rho();
  Rational sum = 0;
  for (std::size_t k = 0; k < u.pieces().size(); ++k) {
    const QVector& g = u.pieces()[k].grad;
    if (kstab::is_zero(g)) continue;
    Polynomial integrand = Polynomial::linear(g, -dot(g, two_rho)) * ctx.pi();
    if (u.pieces().size() == 1) {
      sum += integrate(plus, integrand);
    } else {
      sum += integrate_region(cell_halfspaces(u, k, plus.halfspaces()), r, integrand);
    }
  }
  return sum / ctx.volume();
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::KStable: return "KStable";
    case VerdictKind::StrictlySemistable: return "StrictlySemistable";
    case VerdictKind::Unstable: return "Unstable";
  }
  return "?";
}

const char* to_string(FiberClass c) {
  return c == FiberClass::HorosphericalKStable ? "horospherical_K_stable" : "inconsistent";
}

StabilityReport barycenter_criterion(const FutakiContext& ctx) {
  const auto& rd = ctx.rd();
  const std::size_t r = rd.rank();
  StabilityReport rep;
  rep.fano = check_fano(ctx);
  rep.barycenter = weighted_barycenter(ctx.plus(), ctx.pi());
  rep.sum_positive_roots = zeros(r);
  for (const auto& a : rd.positive_roots()) rep.sum_positive_roots = rep.sum_positive_roots + a;

  const auto& sigma = rd.simple_roots();
  const auto& central = rd.central_basis();
  QMatrix a(r, zeros(r));
  for (std::size_t j = 0; j < sigma.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) a[i][j] = sigma[j][i];
  for (std::size_t j = 0; j < central.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) a[i][sigma.size() + j] = central[j][i];
  auto x = solve(a, rep.barycenter - rep.sum_positive_roots);
  if (!x) throw Error(ErrorCode::SingularMoment, "simple roots and V_z do not span the lattice space");
  rep.cone_coeffs.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(sigma.size()));
  rep.central_component = zeros(r);
  for (std::size_t j = 0; j < central.size(); ++j)
    rep.central_component = rep.central_component + (*x)[sigma.size() + j] * central[j];

  if (rep.sum_positive_roots != rd.two_rho())
    rep.theorem_flags.push_back("sum of positive spherical roots " + to_string(rep.sum_positive_roots) +
                                " differs from 2 rho " + to_string(rd.two_rho()));
  if (!rep.fano.fano)
    rep.theorem_flags.push_back("model functional - criterion not backed by the Fano barycenter lemma");

  auto linear_witness = [&](const QVector& cov) {
    PLFunction w = PLFunction::affine(cov);
    rep.verdict.witness = w;
    rep.verdict.witness_value = fano_futaki(ctx, w);
  };

  Verdict& v = rep.verdict;
  std::optional<std::size_t> zero_index, negative_index;
  for (std::size_t i = 0; i < rep.cone_coeffs.size(); ++i) {
    if (rep.cone_coeffs[i] < 0 && !negative_index) negative_index = i;
    if (rep.cone_coeffs[i] == 0 && !zero_index) zero_index = i;
  }
  if (!kstab::is_zero(rep.central_component)) {
    v.kind = VerdictKind::Unstable;
    v.note = "not K-semistable in the unmodified sense: the barycenter has a nonzero V_z component";
    linear_witness(-rd.covector_of(rep.central_component));
  } else if (negative_index) {
    v.kind = VerdictKind::Unstable;
    v.note = "cone coefficient c_" + std::to_string(*negative_index + 1) + " is negative";
    linear_witness(rd.covector_of(rd.fundamental_weights()[*negative_index]));
  } else if (zero_index) {
    v.kind = VerdictKind::StrictlySemistable;
    v.weight = rd.fundamental_weights()[*zero_index];
    v.note = "barycenter on the boundary of the root cone along c_" + std::to_string(*zero_index + 1);
    linear_witness(rd.covector_of(*v.weight));
    if (r == 2 && central.empty() && sigma.size() == 2 && rd.inner(sigma[0], sigma[1]) != 0)
      rep.theorem_flags.push_back("contradicts no-strict-semistable theorem");
  } else {
    v.kind = VerdictKind::KStable;
  }
  return rep;
}

// ---------------------------------------------------------------- scans

std::vector<QVector> direction_net(const RootDatum& rd, unsigned net_denominator) {
  std::vector<QVector> out;
  std::set<QVector> seen;
  auto add = [&](const QVector& c) {
    if (kstab::is_zero(c)) return;
    QVector p = primitive_direction(c);
    if (seen.insert(p).second) out.push_back(std::move(p));
  };
  std::vector<QVector> gens;
  for (const auto& w : rd.fundamental_weights()) gens.push_back(rd.covector_of(w));
  for (const auto& g : gens) add(g);
  for (const auto& a : rd.positive_roots()) {
    QVector c = rd.covector_of(a);
    if (rd.is_dominant_covector(c)) add(c);
  }
  for (const auto& z : rd.central_basis()) {
    gens.push_back(rd.covector_of(z));
    gens.push_back(-rd.covector_of(z));
  }
  for (const auto& g : gens) add(g);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      for (unsigned q = 2; q <= net_denominator; ++q)
        for (unsigned p = 1; p < q; ++p)
          if (std::gcd(p, q) == 1) add(Rational(q - p) * gens[a] + Rational(p) * gens[b]);
  return out;
}

namespace {

// Roots of the pieces of f over [lo, hi], merged and ascending. A piece
// that vanishes identically contributes its two ends.
std::vector<RealRoot> roots_on(const PiecewisePolynomial1D& f, const Rational& lo, const Rational& hi) {
  std::vector<RealRoot> all;
  const auto& bp = f.breakpoints;
  for (std::size_t i = 1; i < bp.size(); ++i) {
    const Rational a = std::max(bp[i - 1], lo), b = std::min(bp[i], hi);
    if (a >= b) continue;
    const UPoly& p = f.pieces[i];
    if (p.is_zero()) {
      all.push_back({true, a, a});
      all.push_back({true, b, b});
      continue;
    }
    for (auto& rt : isolate_roots(p, a, b, default_root_width())) all.push_back(rt);
  }
  std::sort(all.begin(), all.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  std::vector<RealRoot> merged;
  for (auto& rt : all) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (rt.lo <= last.hi) {
        // Same root seen from two pieces; keep the exact or tighter record.
        if (rt.exact && !last.exact) last = rt;
        continue;
      }
    }
    merged.push_back(rt);
  }
  return merged;
}

}  // namespace

ScanEntry scan_direction(const FutakiContext& ctx, const QVector& direction) {
  const auto& rd = ctx.rd();
  ScanEntry e;
  e.direction = direction;
  e.central = rd.is_central_covector(direction);
  Polynomial q = Polynomial::linear(direction, -dot(direction, rd.two_rho())) * ctx.pi() * (1 / ctx.volume());
  e.values = slice_moments(ctx.plus(), direction, q);
  e.lambda_min = e.values.breakpoints.front();
  e.lambda_max = e.values.breakpoints.back();
  e.affine_value = e.values(e.lambda_min);
  e.roots = roots_on(e.values, e.lambda_min, e.lambda_max);

  // Sign pattern: one exact sample inside every gap between consecutive roots.
  std::vector<std::pair<Rational, Rational>> fences;  // (lo, hi) of each root
  for (const auto& rt : e.roots) fences.emplace_back(rt.lo, rt.hi);
  std::vector<Rational> samples;
  Rational left = e.lambda_min;
  for (const auto& [lo, hi] : fences) {
    if (left < lo) samples.push_back((left + lo) / 2);
    left = hi;
  }
  if (left < e.lambda_max) samples.push_back((left + e.lambda_max) / 2);

  bool nonneg = e.central || e.affine_value >= 0;
  bool positive = true;
  for (const auto& s : samples) {
    Rational v = e.values(s);
    if (v < 0) nonneg = false;
    if (v <= 0) positive = false;
  }
  for (const auto& rt : e.roots)
    if (!(rt.exact && (rt.lo == e.lambda_min || rt.lo == e.lambda_max))) positive = false;
  e.nonnegative = nonneg;
  e.positive_inside = positive;

  std::vector<Rational> candidates;
  if (!e.central) candidates.push_back(e.lambda_min);
  for (std::size_t i = 1; i + 1 < e.values.breakpoints.size(); ++i) candidates.push_back(e.values.breakpoints[i]);
  candidates.push_back((e.lambda_min + e.lambda_max) / 2);
  const auto& bp = e.values.breakpoints;
  for (std::size_t i = 1; i < bp.size(); ++i) {
    UPoly d = e.values.pieces[i].derivative();
    if (d.is_zero()) continue;
    for (const auto& rt : isolate_roots(d, bp[i - 1], bp[i], Rational(1, 1 << 20))) candidates.push_back(rt.lo);
  }
  bool first = true;
  for (const auto& c : candidates) {
    if (c >= e.lambda_max || c < e.lambda_min) continue;
    if (e.central && c == e.lambda_min) continue;
    double v = e.values(c).get_d();
    if (first || v < e.min_value) {
      e.min_value = v;
      e.min_at = c;
      first = false;
    }
  }
  return e;
}

ScanResult witness_scan(const FutakiContext& ctx, const std::vector<QVector>& directions) {
  ScanResult res;
  res.entries.resize(directions.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < directions.size(); i += workers) res.entries[i] = scan_direction(ctx, directions[i]);
    }));
  for (auto& j : jobs) j.get();

  for (std::size_t i = 0; i < res.entries.size(); ++i) {
    const auto& e = res.entries[i];
    if (i == 0 || e.min_value < res.min_value) {
      res.min_value = e.min_value;
      res.min_index = i;
    }
    res.all_nonnegative = res.all_nonnegative && e.nonnegative;
  }
  return res;
}

// ---------------------------------------------------------------- degeneration

DegenerationData polystable_degeneration(const FutakiContext& ctx) {
  const auto& rd = ctx.rd();
  if (rd.rank() != 2)
    throw Error(ErrorCode::PreconditionNotMet, "rank is " + std::to_string(rd.rank()) + ", degeneration needs rank 2");
  if (rd.central_basis().size() != 1)
    throw Error(ErrorCode::PreconditionNotMet,
                "dim V_z is " + std::to_string(rd.central_basis().size()) + ", degeneration needs dim V_z = 1");
  StabilityReport rep = barycenter_criterion(ctx);
  if (rep.verdict.kind != VerdictKind::StrictlySemistable)
    throw Error(ErrorCode::PreconditionNotMet,
                std::string("verdict is ") + to_string(rep.verdict.kind) + ", degeneration needs StrictlySemistable");

  DegenerationData d;
  d.fiber_datum = RootDatum(rd.rank(), rd.gram(), rd.restricted_roots(), rd.two_rho(), {}, {});
  d.weyl_order = d.fiber_datum.group().size();
  const Polytope& plus = ctx.plus();
  d.polytope.base = plus;
  d.polytope.plus = plus;
  for (std::size_t i = 0; i < plus.halfspaces().size(); ++i) {
    d.polytope.outer_facets.push_back(i);
    d.polytope.parent_facet.push_back(i);
  }
  d.barycenter = rep.barycenter;
  d.sum_positive_roots = rep.sum_positive_roots;
  d.barycenter_check = d.barycenter == d.sum_positive_roots;
  const bool balanced = d.barycenter == rd.two_rho();
  if (!d.barycenter_check)
    d.diagnostics.push_back("barycenter " + to_string(d.barycenter) + " differs from the sum of positive roots " +
                            to_string(d.sum_positive_roots));
  if (!balanced)
    d.diagnostics.push_back("barycenter " + to_string(d.barycenter) + " differs from 2 rho " +
                            to_string(rd.two_rho()) + "; the horospherical fiber is not polystable");
  d.classification = d.barycenter_check && balanced ? FiberClass::HorosphericalKStable : FiberClass::Inconsistent;
  return d;
}

FutakiContext fiber_context(const DegenerationData& d, FutakiOptions options) {
  return FutakiContext::build(d.fiber_datum, d.polytope, options);
}

// ---------------------------------------------------------------- optimal degeneration

OptimalObjective optimal_objective(const FutakiContext& ctx, const PLFunction& u) {
  const auto& rd = ctx.rd();
  const auto& hs = ctx.plus().halfspaces();
  const std::size_t r = rd.rank();
  OptimalObjective out;
  out.value = fano_futaki(ctx, u);
  out.norm2 = integrate_pl(hs, r, u, ctx.pi(), 2);

  std::vector<Polynomial> basis{Polynomial::constant(r, 1)};
  for (const auto& z : rd.central_basis()) basis.push_back(Polynomial::linear(rd.covector_of(z)));
  const std::size_t n = basis.size();
  QMatrix m(n, zeros(n));
  QVector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = integrate(ctx.plus(), basis[i] * basis[j] * ctx.pi());
    rhs[i] = integrate_pl(hs, r, u, basis[i] * ctx.pi());
  }
  auto coef = solve(m, rhs);
  if (!coef) throw Error(ErrorCode::SingularMoment, "moment matrix of the central functions is singular");
  out.projected_norm2 = out.norm2 - dot(rhs, *coef);
  if (out.projected_norm2 <= 0)
    throw Error(ErrorCode::ZeroNorm, "test function is a central affine function; its projected norm vanishes");
  out.w = out.value.get_d() / std::sqrt(out.projected_norm2.get_d());
  return out;
}

// ---------------------------------------------------------------- soliton

namespace {

struct QuadratureRule {
  std::vector<double> weight;             // includes pi(y) and the Jacobian
  std::vector<std::vector<double>> feature;  // m_j . (y - 2 rho) per node
};

QuadratureRule build_rule(const FutakiContext& ctx, int order) {
  const auto& rd = ctx.rd();
  const auto& plus = ctx.plus();
  const std::size_t r = rd.rank();
  std::vector<QVector> cov;
  for (const auto& z : rd.central_basis()) cov.push_back(rd.covector_of(z));

  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
  std::vector<double> nodes(order), weights(order);
  for (int i = 0; i < order; ++i)
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &nodes[i], &weights[i], table);
  gsl_integration_glfixed_table_free(table);

  QuadratureRule rule;
  std::vector<double> two_rho(r);
  for (std::size_t i = 0; i < r; ++i) two_rho[i] = rd.two_rho()[i].get_d();

  for (const auto& simplex : triangulate(plus.halfspaces(), plus.vertices(), r)) {
    std::vector<std::vector<double>> v;
    for (auto idx : simplex) {
      std::vector<double> p(r);
      for (std::size_t i = 0; i < r; ++i) p[i] = plus.vertices()[idx][i].get_d();
      v.push_back(std::move(p));
    }
    QMatrix m(r, zeros(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m[i][j] = plus.vertices()[simplex[j + 1]][i] - plus.vertices()[simplex[0]][i];
    const double det = std::fabs(determinant(m).get_d());

    // Collapsed coordinates: t_k = u_k prod_{i<k} (1 - u_i) map the cube onto
    // the standard simplex with Jacobian prod (1 - u_i)^(r - i).
    std::vector<std::size_t> idx(r, 0);
    while (true) {
      double w = det;
      double rest = 1.0;
      std::vector<double> y = v[0];
      for (std::size_t k = 0; k < r; ++k) {
        const double u = nodes[idx[k]];
        const double t = u * rest;
        w *= weights[idx[k]] * rest;
        for (std::size_t i = 0; i < r; ++i) y[i] += t * (v[k + 1][i] - v[0][i]);
        rest *= 1.0 - u;
      }
      const double pi = ctx.pi().evaluate(y);
      std::vector<double> f(cov.size());
      for (std::size_t j = 0; j < cov.size(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < r; ++i) s += cov[j][i].get_d() * (y[i] - two_rho[i]);
        f[j] = s;
      }
      rule.weight.push_back(w * pi);
      rule.feature.push_back(std::move(f));

      std::size_t k = 0;
      while (k < r && ++idx[k] == static_cast<std::size_t>(order)) idx[k++] = 0;
      if (k == r) break;
    }
  }
  return rule;
}

struct Evaluation {
  double f = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

Evaluation evaluate(const QuadratureRule& rule, const Eigen::VectorXd& v, bool derivatives) {
  const auto n = v.size();
  Evaluation e;
  e.grad = Eigen::VectorXd::Zero(n);
  e.hess = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t q = 0; q < rule.weight.size(); ++q) {
    Eigen::Map<const Eigen::VectorXd> a(rule.feature[q].data(), n);
    const double g = rule.weight[q] * std::exp(v.dot(a));
    e.f += g;
    if (derivatives) {
      e.grad += g * a;
      e.hess += g * a * a.transpose();
    }
  }
  return e;
}

}  // namespace

SolitonResult soliton_field(const FutakiContext& ctx, const SolitonOptions& options) {
  const auto& rd = ctx.rd();
  const std::size_t nz = rd.central_basis().size();
  if (nz == 0) throw Error(ErrorCode::PreconditionNotMet, "V_z is zero; there is no soliton field to solve for");
  const QuadratureRule rule = build_rule(ctx, options.quadrature_order);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nz));
  SolitonResult res;
  Evaluation cur = evaluate(rule, v, true);
  res.objective.push_back(cur.f);

  auto finish = [&] {
    res.coefficients.assign(v.data(), v.data() + v.size());
    res.field.assign(rd.rank(), 0.0);
    for (std::size_t j = 0; j < nz; ++j)
      for (std::size_t i = 0; i < rd.rank(); ++i) res.field[i] += v[static_cast<Eigen::Index>(j)] * rd.central_basis()[j][i].get_d();
  };

  for (int it = 0;; ++it) {
    res.residual = cur.grad.cwiseAbs().maxCoeff() / cur.f;
    res.iterations = it;
    if (res.residual < options.tolerance) break;
    if (it == options.max_iterations) {
      finish();
      throw Error(ErrorCode::NoConvergence, "soliton Newton iteration stopped after " + std::to_string(it) +
                                                " steps with residual " + std::to_string(res.residual));
    }
    Eigen::VectorXd step = cur.hess.ldlt().solve(-cur.grad);
    double t = 1.0;
    Evaluation next;
    while (true) {
      next = evaluate(rule, v + t * step, false);
      if (next.f < cur.f) break;
      t /= 2;
      if (t < 1e-14) {
        finish();
        throw Error(ErrorCode::NoConvergence,
                    "line search cannot decrease the soliton objective; residual " + std::to_string(res.residual));
      }
    }
    v += t * step;
    cur = evaluate(rule, v, true);
    res.objective.push_back(cur.f);
  }
  finish();
  return res;
}

}  // namespace kstab
