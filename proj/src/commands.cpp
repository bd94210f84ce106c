#include "kstab/commands.hpp"

#include <sstream>

#include "kstab/envelope.hpp"
#include "kstab/report.hpp"
#include "kstab/stability.hpp"
#include "kstab/svg.hpp"

namespace kstab {

namespace {

ProblemFile load(const CommandSettings& s) {
  ProblemFile p = s.problem ? parse_problem(*s.problem) : parse_problem_file(resolve_problem_path(s.file, s.catalog_dir));
  if (s.net_denominator) p.options.net_denominator = *s.net_denominator;
  if (s.tolerance) p.options.soliton_tolerance = *s.tolerance;
  if (s.no_shift) p.options.shift = false;
  if (s.permissive_colours) p.options.permissive_colours = true;
  return p;
}

// Test functions named in the file, or a default family: the constant, the
// central coordinates, and for each fundamental weight the linear function
// and the simple function creased at the middle of its range on P+.
std::vector<PLFunction> test_functions(const ProblemFile& p, const FutakiContext& ctx) {
  if (!p.test_functions.empty()) return p.test_functions;
  const auto& rd = ctx.rd();
  const std::size_t r = rd.rank();
  std::vector<PLFunction> out{PLFunction::affine(zeros(r), 1)};
  for (const auto& z : rd.central_basis()) out.push_back(PLFunction::affine(rd.covector_of(z)));
  for (const auto& w : rd.fundamental_weights()) {
    QVector c = rd.covector_of(w);
    Rational lo = dot(c, ctx.plus().vertices()[0]), hi = lo;
    for (const auto& v : ctx.plus().vertices()) {
      lo = std::min(lo, dot(c, v));
      hi = std::max(hi, dot(c, v));
    }
    out.push_back(PLFunction::affine(c));
    out.push_back(PLFunction::simple(c, (lo + hi) / 2));
  }
  return out;
}

CommandOutput run_check_convexity(const CommandSettings& s) {
  ProblemFile p = load(s);
  CommandOutput o;
  Workspace w;
  if (p.polytope.kind == PolytopeKind::Chamber) {
    const auto& b = p.root_datum;
    RootDatum rd(b.rank, b.gram, b.restricted_roots, b.two_rho, b.simple_roots, b.colours);
    ExtensionResult ext = weyl_extension_convexity(p.polytope.halfspaces, rd);
    o.json = {{"command", "check-convexity"}, {"extension", extension_json(ext)}};
    o.text = extension_text(ext);
    o.code = ext.convex ? 0 : 1;
    return o;
  }
  w = build_workspace(p);
  ExtensionResult ext = weyl_extension_convexity(w.cp.plus.halfspaces(), w.rd);
  const bool identity = ext.convex && ext.hull == w.cp.base;
  o.json = {{"command", "check-convexity"}, {"extension", extension_json(ext)}, {"restores_input", identity}};
  o.text = extension_text(ext) + (identity ? "restrict-then-extend reproduces P\n" : "");
  o.code = ext.convex ? 0 : 1;
  return o;
}

CommandOutput run_futaki(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  CommandOutput o;
  Json evals = Json::array();
  std::ostringstream text;
  text << context_text(ctx);
  for (const auto& u : test_functions(p, ctx)) {
    Json e{{"function", pl_json(u)}};
    e["dominant"] = gradients_dominant(ctx.rd(), u, ctx.plus().halfspaces());
    if (e["dominant"]) {
      e["L"] = terms_json(futaki_L_terms(ctx, u));
      try {
        e["L_X"] = rational_json(relative_futaki(ctx, u));
      } catch (const Error& err) {
        e["L_X_error"] = error_json(err);
      }
      e["L_X_identity"] = rational_json(relative_futaki_identity(ctx, u));
      e["fano_L"] = rational_json(fano_futaki(ctx, u));
      text << "L = " << to_string(futaki_L(ctx, u)) << " on " << pl_json(u).dump() << "\n";
    }
    evals.push_back(e);
  }
  o.json = {{"command", "futaki"},
            {"context", context_json(ctx)},
            {"fano", fano_json(check_fano(ctx))},
            {"colours", colours_json(w.colours)},
            {"evaluations", evals}};
  o.text = text.str();
  return o;
}

CommandOutput run_extremal(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  const auto& rd = ctx.rd();
  Json kernel = Json::array();
  std::vector<PLFunction> central{PLFunction::affine(zeros(rd.rank()), 1)};
  for (const auto& z : rd.central_basis()) central.push_back(PLFunction::affine(rd.covector_of(z)));
  for (const auto& u : central)
    kernel.push_back({{"function", pl_json(u)}, {"L_X", rational_json(relative_futaki_identity(ctx, u))}});
  CommandOutput o;
  o.json = {{"command", "extremal"},
            {"volume", rational_json(ctx.volume())},
            {"mean_scalar", rational_json(ctx.mean_scalar())},
            {"extremal", extremal_json(ctx)},
            {"kernel_check", kernel},
            {"theta", theta_json(theta_function(ctx))}};
  o.text = context_text(ctx);
  return o;
}

CommandOutput run_stability(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  StabilityReport rep = barycenter_criterion(ctx);
  ScanResult scan = witness_scan(ctx, direction_net(ctx.rd(), p.options.net_denominator));
  CommandOutput o;
  o.json = {{"command", "stability"}, {"report", stability_json(rep)}, {"scan", scan_json(scan)}};
  if (p.options.fano && *p.options.fano != rep.fano.fano)
    o.json["fano_mismatch"] = "the file expects fano = " + std::string(*p.options.fano ? "true" : "false");
  o.text = stability_text(rep, &scan);
  switch (rep.verdict.kind) {
    case VerdictKind::KStable: o.code = 0; break;
    case VerdictKind::StrictlySemistable: o.code = 2; break;
    case VerdictKind::Unstable: o.code = 3; break;
  }
  return o;
}

CommandOutput run_degenerate(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  DegenerationData d = polystable_degeneration(ctx);
  FutakiContext fiber = fiber_context(d);
  CommandOutput o;
  o.json = {{"command", "degenerate"},
            {"degeneration", degeneration_json(d)},
            {"fiber", {{"volume", rational_json(fiber.volume())}, {"mean_scalar", rational_json(fiber.mean_scalar())}}}};
  o.text = degeneration_text(d);
  return o;
}

CommandOutput run_envelope(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  if (!p.envelope && !p.crease) throw Error(ErrorCode::InvalidInput, "problem file has no envelope or crease block");
  CommandOutput o;
  o.json = {{"command", "envelope"}};
  std::optional<EnvelopeResult> env;
  std::optional<CreaseResult> crease;
  std::optional<FutakiContext> ctx;
  if (p.envelope) {
    BoundaryData bd = p.envelope->function ? boundary_from_pl(w.cp.plus, *p.envelope->function)
                                           : boundary_from_polynomial(w.cp.plus, *p.envelope->polynomial, p.envelope->h);
    env = convex_envelope(bd);
    o.json["envelope"] = envelope_json(*env);
    o.text += envelope_text(*env);
  }
  if (p.crease) {
    ctx = build_context(p, w);
    crease = crease_search(*ctx, p.crease->function, p.crease->functional);
    o.json["crease"] = crease_json(*crease);
    o.text += crease_text(*crease);
  }
  if (!s.svg.empty()) {
    std::optional<ThetaFunction> theta;
    if (ctx) theta = theta_function(*ctx);
    SvgLayers layers{&w.cp.plus, env ? &*env : nullptr, crease ? &*crease : nullptr, theta ? &*theta : nullptr};
    write_svg(s.svg, layers);
    o.json["svg"] = s.svg;
  }
  return o;
}

CommandOutput run_soliton(const CommandSettings& s) {
  ProblemFile p = load(s);
  Workspace w = build_workspace(p);
  FutakiContext ctx = build_context(p, w);
  SolitonOptions opt;
  opt.tolerance = p.options.soliton_tolerance;
  SolitonResult res = soliton_field(ctx, opt);
  CommandOutput o;
  o.json = {{"command", "soliton"}, {"soliton", soliton_json(res)}};
  o.text = soliton_text(res);
  return o;
}

struct Command {
  const char* name;
  CommandOutput (*run)(const CommandSettings&);
};

const Command kCommands[] = {
    {"check-convexity", run_check_convexity}, {"futaki", run_futaki},     {"extremal", run_extremal},
    {"stability", run_stability},             {"degenerate", run_degenerate}, {"envelope", run_envelope},
    {"soliton", run_soliton},
};

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kCommands) v.push_back(c.name);
    return v;
  }();
  return names;
}

CommandOutput run_command(const std::string& name, const CommandSettings& settings) {
  for (const auto& c : kCommands)
    if (name == c.name) return c.run(settings);
  throw Error(ErrorCode::InvalidInput, "unknown command '" + name + "'");
}

}  // namespace kstab
