#include "kstab/report.hpp"

#include <iomanip>
#include <sstream>

namespace kstab {

namespace {

Json index_list(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto i : v) a.push_back(i);
  return a;
}

Json points_json(const std::vector<QVector>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(vector_json(p));
  return a;
}

Json doubles_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

Json polytope_json(const Polytope& p) {
  Json hs = Json::array();
  for (const auto& h : p.halfspaces()) hs.push_back(halfspace_json(h));
  return {{"dim", p.dim()}, {"halfspaces", hs}, {"vertices", points_json(p.vertices())}};
}

Json chamber_json(const ChamberPolytope& cp) {
  return {{"base", polytope_json(cp.base)},
          {"plus", polytope_json(cp.plus)},
          {"outer_facets", index_list(cp.outer_facets)},
          {"wall_facets", index_list(cp.wall_facets)}};
}

Json extension_json(const ExtensionResult& e) {
  Json j{{"convex", e.convex}, {"plus", polytope_json(e.plus)}, {"hull", polytope_json(e.hull)}};
  if (e.witness) j["witness"] = vector_json(*e.witness);
  if (e.chamber) j["chamber"] = chamber_json(*e.chamber);
  return j;
}

Json colours_json(const std::vector<ColourDiagnostic>& c) {
  Json a = Json::array();
  for (const auto& d : c)
    a.push_back({{"index", d.index}, {"in_root_span", d.in_root_span}, {"valid", d.valid}, {"message", d.message}});
  return a;
}

Json context_json(const FutakiContext& ctx) {
  return {{"pi", polynomial_json(ctx.pi())},
          {"grad_term", polynomial_json(ctx.grad_term())},
          {"volume", rational_json(ctx.volume())},
          {"mean_scalar", rational_json(ctx.mean_scalar())},
          {"boundary_mass", rational_json(ctx.boundary_mass())},
          {"rho_mass", rational_json(ctx.rho_mass())},
          {"shift", vector_json(ctx.shift())},
          {"zero_offset_facets", index_list(ctx.zero_offset_facets())},
          {"h0_leading", rational_json(ctx.h0_leading())},
          {"h0_subleading", rational_json(ctx.h0_subleading())},
          {"chamber", chamber_json(ctx.cp())}};
}

Json extremal_json(const FutakiContext& ctx) {
  const auto& e = ctx.extremal();
  return {{"x", vector_json(e.x)}, {"c", rational_json(e.c)}, {"theta", {{"grad", vector_json(e.theta.grad)}, {"c", rational_json(e.theta.c)}}}};
}

Json theta_json(const ThetaFunction& t) {
  Json poles = Json::array();
  for (const auto& p : t.poles) poles.push_back({{"covector", vector_json(p.covector)}, {"coefficient", rational_json(p.coefficient)}});
  Json j{{"constant", rational_json(t.constant)},
         {"linear", vector_json(t.linear)},
         {"poles", poles},
         {"numerator", polynomial_json(t.numerator)},
         {"negativity_empty", t.negativity_empty}};
  if (t.strip) j["strip"] = {{"direction", vector_json(t.strip->direction)}, {"bound", rational_json(t.strip->bound)}};
  return j;
}

Json fano_json(const FanoCheck& f) {
  Json facets = Json::array();
  for (const auto& x : f.facets)
    facets.push_back({{"facet", x.facet}, {"offset", rational_json(x.offset)}, {"required", rational_json(x.required)}, {"ok", x.ok}});
  return {{"fano", f.fano}, {"facets", facets}};
}

Json terms_json(const FutakiTerms& t) {
  return {{"boundary", rational_json(t.boundary)},
          {"scalar", rational_json(t.scalar)},
          {"rho", rational_json(t.rho)},
          {"value", rational_json(t.value)}};
}

Json root_json(const RealRoot& r) {
  if (r.exact) return {{"exact", true}, {"value", rational_json(r.lo)}};
  return {{"exact", false}, {"lo", rational_json(r.lo)}, {"hi", rational_json(r.hi)}, {"approx", r.approx()}};
}

Json piecewise_json(const PiecewisePolynomial1D& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces) pieces.push_back(vector_json(p.coeffs()));
  return {{"breakpoints", vector_json(f.breakpoints)}, {"pieces", pieces}};
}

Json verdict_json(const Verdict& v) {
  Json j{{"kind", to_string(v.kind)}, {"note", v.note}};
  if (v.weight) j["weight"] = vector_json(*v.weight);
  if (v.witness) j["witness"] = pl_json(*v.witness);
  if (v.witness_value) j["witness_value"] = rational_json(*v.witness_value);
  return j;
}

Json stability_json(const StabilityReport& s) {
  Json flags = Json::array();
  for (const auto& f : s.theorem_flags) flags.push_back(f);
  return {{"verdict", verdict_json(s.verdict)},
          {"barycenter", vector_json(s.barycenter)},
          {"sum_positive_roots", vector_json(s.sum_positive_roots)},
          {"cone_coeffs", vector_json(s.cone_coeffs)},
          {"central_component", vector_json(s.central_component)},
          {"fano", fano_json(s.fano)},
          {"theorem_flags", flags}};
}

Json scan_json(const ScanResult& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    Json roots = Json::array();
    for (const auto& r : e.roots) roots.push_back(root_json(r));
    entries.push_back({{"direction", vector_json(e.direction)},
                       {"central", e.central},
                       {"lambda_min", rational_json(e.lambda_min)},
                       {"lambda_max", rational_json(e.lambda_max)},
                       {"affine_value", rational_json(e.affine_value)},
                       {"roots", roots},
                       {"nonnegative", e.nonnegative},
                       {"positive_inside", e.positive_inside},
                       {"min_value", e.min_value},
                       {"min_at", rational_json(e.min_at)},
                       {"values", piecewise_json(e.values)}});
  }
  return {{"entries", entries}, {"min_value", s.min_value}, {"min_index", s.min_index}, {"all_nonnegative", s.all_nonnegative}};
}

Json degeneration_json(const DegenerationData& d) {
  Json diag = Json::array();
  for (const auto& x : d.diagnostics) diag.push_back(x);
  return {{"polytope", chamber_json(d.polytope)},
          {"weyl_order", d.weyl_order},
          {"barycenter", vector_json(d.barycenter)},
          {"sum_positive_roots", vector_json(d.sum_positive_roots)},
          {"barycenter_check", d.barycenter_check},
          {"classification", to_string(d.classification)},
          {"diagnostics", diag}};
}

Json optimal_json(const OptimalObjective& o) {
  return {{"value", rational_json(o.value)},
          {"norm2", rational_json(o.norm2)},
          {"projected_norm2", rational_json(o.projected_norm2)},
          {"w", o.w},
          {"measure", "pi dy on P+ (assumed)"}};
}

Json soliton_json(const SolitonResult& s) {
  return {{"coefficients", doubles_json(s.coefficients)},
          {"field", doubles_json(s.field)},
          {"residual", s.residual},
          {"iterations", s.iterations},
          {"objective", doubles_json(s.objective)}};
}

Json ma_json(const MACheck& m) {
  Json masses = Json::array();
  for (const auto& v : m.masses)
    masses.push_back({{"vertex", vector_json(v.vertex)}, {"mass", rational_json(v.mass)}, {"interior", v.interior}});
  return {{"zero", m.zero}, {"masses", masses}, {"offending", points_json(m.offending)}};
}

Json envelope_json(const EnvelopeResult& e) {
  Json cells = Json::array();
  for (const auto& c : e.cells)
    cells.push_back({{"plane", {{"grad", vector_json(c.plane.grad)}, {"c", rational_json(c.plane.c)}}},
                     {"vertices", points_json(c.vertices)}});
  return {{"function", pl_json(e.function)},
          {"contact_complex", cells},
          {"ma", ma_json(e.ma)},
          {"exact", e.exact},
          {"h", rational_json(e.h)}};
}

Json crease_json(const CreaseResult& c) {
  Json cands = Json::array();
  for (const auto& x : c.candidates) {
    Json j{{"function", pl_json(x.function)},
           {"normal", vector_json(x.normal)},
           {"lambda", rational_json(x.lambda)},
           {"kind", x.kind},
           {"dominant", x.dominant},
           {"parallel_to_root", x.parallel_to_root},
           {"in_theta_negative", x.in_theta_negative},
           {"segment", points_json(x.segment)}};
    if (x.value) j["value"] = rational_json(*x.value);
    cands.push_back(j);
  }
  return {{"z_o", vector_json(c.z_o)},
          {"support", {{"grad", vector_json(c.support.grad)}, {"c", rational_json(c.support.c)}}},
          {"normalized", pl_json(c.normalized)},
          {"contact", points_json(c.contact)},
          {"contact_dim", c.contact_dim},
          {"case", c.case_label},
          {"candidates", cands}};
}

Json error_json(const Error& e) {
  Json j{{"code", to_string(e.code())}, {"message", e.what()}};
  if (auto* s = dynamic_cast<const SchemaError*>(&e)) {
    Json issues = Json::array();
    for (const auto& i : s->issues()) issues.push_back({{"pointer", i.pointer}, {"message", i.message}});
    j["issues"] = issues;
  }
  return {{"error", j}};
}

std::string context_text(const FutakiContext& ctx) {
  std::ostringstream os;
  os << "V = " << to_string(ctx.volume()) << "  S = " << to_string(ctx.mean_scalar()) << "\n";
  os << "extremal X = " << to_string(ctx.extremal().x) << "  c_X = " << to_string(ctx.extremal().c) << "\n";
  if (!ctx.zero_offset_facets().empty()) os << "outer facets through the shifted origin: " << ctx.zero_offset_facets().size() << "\n";
  return os.str();
}

std::string stability_text(const StabilityReport& s, const ScanResult* scan) {
  std::ostringstream os;
  os << "verdict: " << to_string(s.verdict.kind);
  if (s.verdict.weight) os << " (witness weight " << to_string(*s.verdict.weight) << ")";
  os << "\n";
  if (!s.verdict.note.empty()) os << "  " << s.verdict.note << "\n";
  os << "barycenter b = " << to_string(s.barycenter) << ", sum of positive roots = " << to_string(s.sum_positive_roots) << "\n";
  os << "cone coefficients = " << to_string(s.cone_coeffs) << ", V_z component = " << to_string(s.central_component) << "\n";
  os << "Fano normalized: " << (s.fano.fano ? "yes" : "no") << "\n";
  for (const auto& f : s.theorem_flags) os << "flag: " << f << "\n";
  if (scan)
    os << "scan: " << scan->entries.size() << " directions, min " << fmt(scan->min_value)
       << (scan->all_nonnegative ? ", all nonnegative" : ", some direction negative") << "\n";
  return os.str();
}

std::string degeneration_text(const DegenerationData& d) {
  std::ostringstream os;
  os << "central fiber: " << to_string(d.classification) << ", Weyl group order " << d.weyl_order << "\n";
  os << "barycenter " << to_string(d.barycenter) << " vs sum of positive roots " << to_string(d.sum_positive_roots)
     << (d.barycenter_check ? " (equal)" : " (differ)") << "\n";
  for (const auto& x : d.diagnostics) os << "diagnostic: " << x << "\n";
  return os.str();
}

std::string soliton_text(const SolitonResult& s) {
  std::ostringstream os;
  os << "soliton field V = (";
  for (std::size_t i = 0; i < s.field.size(); ++i) os << (i ? ", " : "") << fmt(s.field[i]);
  os << ")  residual " << fmt(s.residual) << " after " << s.iterations << " Newton steps\n";
  return os.str();
}

std::string envelope_text(const EnvelopeResult& e) {
  std::ostringstream os;
  os << "envelope: " << e.function.pieces().size() << " affine pieces, " << e.cells.size() << " contact cells";
  if (!e.exact) os << ", sampled with h = " << to_string(e.h);
  os << "\nMonge-Ampere mass in the interior: " << (e.ma.zero ? "zero" : "nonzero") << "\n";
  return os.str();
}

std::string crease_text(const CreaseResult& c) {
  std::ostringstream os;
  os << "crease search at z_O = " << to_string(c.z_o) << ": " << c.case_label << ", " << c.candidates.size()
     << " candidates\n";
  for (const auto& x : c.candidates) {
    os << "  " << x.kind << " crease " << to_string(x.normal) << " . y = " << to_string(x.lambda);
    if (x.value) os << "  value " << to_string(*x.value);
    else os << "  (not dominant)";
    if (x.parallel_to_root) os << "  parallel to a root";
    if (x.in_theta_negative) os << "  inside {Theta < 0}";
    os << "\n";
  }
  return os.str();
}

std::string extension_text(const ExtensionResult& e) {
  std::ostringstream os;
  if (e.convex) os << "W-extension is convex with " << e.hull.vertices().size() << " vertices\n";
  else os << "W-extension is not convex; witness " << to_string(*e.witness) << "\n";
  return os.str();
}

}  // namespace kstab
