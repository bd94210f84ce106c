#include "kstab/problem.hpp"

#include <fstream>
#include <sstream>

namespace kstab {

namespace {

std::string join_issues(const std::vector<SchemaIssue>& issues) {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += (i.pointer.empty() ? "/" : i.pointer) + ": " + i.message;
  }
  return s;
}

// Collects issues instead of stopping at the first one. Every reader
// returns a default value after recording a problem.
class Reader {
 public:
  std::vector<SchemaIssue> issues;

  void fail(const std::string& ptr, const std::string& msg) { issues.push_back({ptr, msg}); }

  const Json* field(const Json& obj, const std::string& ptr, const std::string& key, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(ptr + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  Rational rational(const Json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_string()) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const Error& e) {
        fail(ptr, "not a rational: \"" + j.get<std::string>() + "\"");
        return 0;
      }
    }
    fail(ptr, "expected a rational as a \"p/q\" string or an integer");
    return 0;
  }

  QVector vector(const Json& j, const std::string& ptr, std::optional<std::size_t> size) {
    if (!j.is_array()) {
      fail(ptr, "expected an array");
      return size ? zeros(*size) : QVector{};
    }
    QVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], ptr + "/" + std::to_string(i)));
    if (size && v.size() != *size) {
      fail(ptr, "expected " + std::to_string(*size) + " entries, found " + std::to_string(v.size()));
      v.resize(*size);
    }
    return v;
  }

  std::vector<QVector> vectors(const Json& j, const std::string& ptr, std::size_t size) {
    std::vector<QVector> out;
    if (!j.is_array()) {
      fail(ptr, "expected an array of vectors");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector(j[i], ptr + "/" + std::to_string(i), size));
    return out;
  }

  QVector integer_vector(const Json& j, const std::string& ptr, std::size_t size) {
    QVector v = vector(j, ptr, size);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].get_den() != 1) fail(ptr + "/" + std::to_string(i), "normal entries must be integers");
    return v;
  }

  PLFunction pl(const Json& j, const std::string& ptr, std::size_t r) {
    const Json* pieces = field(j, ptr, "pieces", true);
    std::vector<AffineForm> out;
    if (pieces && pieces->is_array()) {
      for (std::size_t i = 0; i < pieces->size(); ++i) {
        const std::string p = ptr + "/pieces/" + std::to_string(i);
        const Json& e = (*pieces)[i];
        AffineForm a{zeros(r), 0};
        if (const Json* g = field(e, p, "grad", true)) a.grad = vector(*g, p + "/grad", r);
        if (const Json* c = field(e, p, "c", false)) a.c = rational(*c, p + "/c");
        out.push_back(std::move(a));
      }
    } else if (pieces) {
      fail(ptr + "/pieces", "expected an array");
    }
    if (out.empty()) {
      if (pieces) fail(ptr + "/pieces", "a PL function needs at least one piece");
      out.push_back({zeros(r), 0});
    }
    return PLFunction(std::move(out));
  }

  Polynomial polynomial(const Json& j, const std::string& ptr, std::size_t r) {
    Polynomial q(r);
    if (!j.is_array()) {
      fail(ptr, "expected an array of terms");
      return q;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      Exponent e(r, 0);
      if (const Json* ex = field(j[i], p, "exponent", true)) {
        if (!ex->is_array() || ex->size() != r) {
          fail(p + "/exponent", "expected " + std::to_string(r) + " nonnegative integers");
        } else {
          for (std::size_t k = 0; k < r; ++k) {
            if (!(*ex)[k].is_number_unsigned()) fail(p + "/exponent/" + std::to_string(k), "expected a nonnegative integer");
            else e[k] = (*ex)[k].get<unsigned>();
          }
        }
      }
      Rational c = 0;
      if (const Json* co = field(j[i], p, "coefficient", true)) c = rational(*co, p + "/coefficient");
      q.add_term(e, c);
    }
    return q;
  }
};

// Leading principal minors positive.
bool positive_definite(const QMatrix& g) {
  for (std::size_t k = 1; k <= g.size(); ++k) {
    QMatrix m(k, QVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = g[i][j];
    if (determinant(m) <= 0) return false;
  }
  return true;
}

const char* kind_name(PolytopeKind k) {
  switch (k) {
    case PolytopeKind::Halfspaces: return "halfspaces";
    case PolytopeKind::Chamber: return "chamber";
    case PolytopeKind::Divisor: return "divisor";
  }
  return "?";
}

}  // namespace

SchemaError::SchemaError(std::vector<SchemaIssue> issues)
    : Error(ErrorCode::Schema, join_issues(issues)), issues_(std::move(issues)) {}

ProblemFile parse_problem(const Json& j) {
  Reader rd;
  ProblemFile p;
  if (!j.is_object()) throw SchemaError(std::vector<SchemaIssue>{{"", "problem file must be a JSON object"}});

  if (const Json* n = rd.field(j, "", "name", false)) {
    if (n->is_string()) p.name = n->get<std::string>();
    else rd.fail("/name", "expected a string");
  }
  if (const Json* d = rd.field(j, "", "description", false)) {
    if (d->is_string()) p.description = d->get<std::string>();
    else rd.fail("/description", "expected a string");
  }

  // root datum
  const Json* rdj = rd.field(j, "", "root_datum", true);
  auto& b = p.root_datum;
  std::size_t r = 0;
  if (rdj) {
    const std::string ptr = "/root_datum";
    if (!rdj->is_object()) {
      rd.fail(ptr, "expected an object");
    } else {
      if (const Json* rk = rd.field(*rdj, ptr, "rank", true)) {
        if (rk->is_number_unsigned() && rk->get<std::size_t>() > 0) r = rk->get<std::size_t>();
        else rd.fail(ptr + "/rank", "expected a positive integer");
      }
      b.rank = r;
      if (r > 0) {
        if (const Json* g = rd.field(*rdj, ptr, "gram", false)) {
          b.gram = rd.vectors(*g, ptr + "/gram", r);
          if (b.gram.size() != r) {
            rd.fail(ptr + "/gram", "expected " + std::to_string(r) + " rows");
            b.gram = identity_matrix(r);
          } else if (b.gram != transpose(b.gram)) {
            rd.fail(ptr + "/gram", "gram matrix is not symmetric");
          } else if (!positive_definite(b.gram)) {
            rd.fail(ptr + "/gram", "gram matrix is not positive definite");
          }
        } else {
          b.gram = identity_matrix(r);
        }
        if (const Json* x = rd.field(*rdj, ptr, "restricted_roots", false))
          b.restricted_roots = rd.vectors(*x, ptr + "/restricted_roots", r);
        b.two_rho = zeros(r);
        if (const Json* x = rd.field(*rdj, ptr, "two_rho", false)) b.two_rho = rd.vector(*x, ptr + "/two_rho", r);
        if (const Json* x = rd.field(*rdj, ptr, "spherical_simple_roots", false))
          b.simple_roots = rd.vectors(*x, ptr + "/spherical_simple_roots", r);
        if (const Json* x = rd.field(*rdj, ptr, "colours", false)) {
          if (!x->is_array()) rd.fail(ptr + "/colours", "expected an array");
          else
            for (std::size_t i = 0; i < x->size(); ++i) {
              const std::string cp = ptr + "/colours/" + std::to_string(i);
              ColourImage c;
              if (const Json* im = rd.field((*x)[i], cp, "image", true)) c.covector = rd.vector(*im, cp + "/image", r);
              if (const Json* t = rd.field((*x)[i], cp, "type", true)) {
                try {
                  c.type = parse_colour_type(t->is_string() ? t->get<std::string>() : "");
                } catch (const Error&) {
                  rd.fail(cp + "/type", "expected one of two_a, b, external");
                }
              }
              b.colours.push_back(std::move(c));
            }
        }
      }
    }
  }

  // polytope
  if (const Json* pj = rd.field(j, "", "polytope", true); pj && r > 0) {
    const std::string ptr = "/polytope";
    auto& pb = p.polytope;
    std::string kind = "halfspaces";
    if (const Json* k = rd.field(*pj, ptr, "kind", false)) {
      if (k->is_string()) kind = k->get<std::string>();
      else rd.fail(ptr + "/kind", "expected a string");
    }
    if (kind == "halfspaces" || kind == "chamber") {
      pb.kind = kind == "halfspaces" ? PolytopeKind::Halfspaces : PolytopeKind::Chamber;
      if (const Json* hs = rd.field(*pj, ptr, "halfspaces", true)) {
        if (!hs->is_array() || hs->empty()) rd.fail(ptr + "/halfspaces", "expected a nonempty array");
        else
          for (std::size_t i = 0; i < hs->size(); ++i) {
            const std::string hp = ptr + "/halfspaces/" + std::to_string(i);
            Halfspace h{zeros(r), 0};
            if (const Json* n = rd.field((*hs)[i], hp, "normal", true)) h.normal = rd.integer_vector(*n, hp + "/normal", r);
            if (const Json* o = rd.field((*hs)[i], hp, "offset", true)) h.offset = rd.rational(*o, hp + "/offset");
            pb.halfspaces.push_back(std::move(h));
          }
      }
    } else if (kind == "divisor") {
      pb.kind = PolytopeKind::Divisor;
      if (const Json* rays = rd.field(*pj, ptr, "rays", true)) {
        if (!rays->is_array()) rd.fail(ptr + "/rays", "expected an array");
        else
          for (std::size_t i = 0; i < rays->size(); ++i) {
            const std::string rp = ptr + "/rays/" + std::to_string(i);
            DivisorRay ray{zeros(r), 0};
            if (const Json* u = rd.field((*rays)[i], rp, "u", true)) ray.u = rd.integer_vector(*u, rp + "/u", r);
            if (const Json* c = rd.field((*rays)[i], rp, "c", true)) ray.c = rd.rational(*c, rp + "/c");
            pb.rays.push_back(std::move(ray));
          }
      }
    } else {
      rd.fail(ptr + "/kind", "expected one of halfspaces, chamber, divisor");
    }
  }

  // options
  if (const Json* o = rd.field(j, "", "options", false)) {
    const std::string ptr = "/options";
    auto& op = p.options;
    if (!o->is_object()) rd.fail(ptr, "expected an object");
    if (const Json* x = rd.field(*o, ptr, "fano", false)) {
      if (x->is_boolean()) op.fano = x->get<bool>();
      else rd.fail(ptr + "/fano", "expected a boolean");
    }
    if (const Json* x = rd.field(*o, ptr, "net_denominator", false)) {
      if (x->is_number_unsigned() && x->get<unsigned>() >= 1) op.net_denominator = x->get<unsigned>();
      else rd.fail(ptr + "/net_denominator", "expected a positive integer");
    }
    if (const Json* x = rd.field(*o, ptr, "soliton_tolerance", false)) {
      if (x->is_number() && x->get<double>() > 0) op.soliton_tolerance = x->get<double>();
      else rd.fail(ptr + "/soliton_tolerance", "expected a positive number");
    }
    if (const Json* x = rd.field(*o, ptr, "shift", false)) {
      if (x->is_boolean()) op.shift = x->get<bool>();
      else rd.fail(ptr + "/shift", "expected a boolean");
    }
    if (const Json* x = rd.field(*o, ptr, "permissive_colours", false)) {
      if (x->is_boolean()) op.permissive_colours = x->get<bool>();
      else rd.fail(ptr + "/permissive_colours", "expected a boolean");
    }
  }

  if (r > 0) {
    if (const Json* t = rd.field(j, "", "test_functions", false)) {
      if (!t->is_array()) rd.fail("/test_functions", "expected an array");
      else
        for (std::size_t i = 0; i < t->size(); ++i)
          p.test_functions.push_back(rd.pl((*t)[i], "/test_functions/" + std::to_string(i), r));
    }
    if (const Json* e = rd.field(j, "", "envelope", false)) {
      EnvelopeBlock eb;
      const Json* f = rd.field(*e, "/envelope", "function", false);
      const Json* q = rd.field(*e, "/envelope", "polynomial", false);
      if (f) eb.function = rd.pl(*f, "/envelope/function", r);
      if (q) eb.polynomial = rd.polynomial(*q, "/envelope/polynomial", r);
      if (!f == !q) rd.fail("/envelope", "give exactly one of function and polynomial");
      if (const Json* h = rd.field(*e, "/envelope", "h", false)) {
        eb.h = rd.rational(*h, "/envelope/h");
        if (eb.h <= 0) rd.fail("/envelope/h", "step must be positive");
      }
      p.envelope = std::move(eb);
    }
    if (const Json* c = rd.field(j, "", "crease", false)) {
      CreaseBlock cb;
      if (const Json* f = rd.field(*c, "/crease", "function", true)) cb.function = rd.pl(*f, "/crease/function", r);
      else cb.function = PLFunction::affine(zeros(r));
      if (const Json* k = rd.field(*c, "/crease", "functional", false)) {
        std::string s = k->is_string() ? k->get<std::string>() : "";
        if (s == "relative") cb.functional = KernelFunctional::Relative;
        else if (s == "fano") cb.functional = KernelFunctional::Fano;
        else rd.fail("/crease/functional", "expected relative or fano");
      }
      p.crease = std::move(cb);
    }
  }

  if (!rd.issues.empty()) throw SchemaError(std::move(rd.issues));
  return p;
}

ProblemFile parse_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::vector<SchemaIssue>{{"", std::string("invalid JSON: ") + e.what()}});
  }
  return parse_problem(j);
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json matrix_json(const QMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(vector_json(row));
  return a;
}

Json pl_json(const PLFunction& u) {
  Json pieces = Json::array();
  for (const auto& p : u.pieces()) pieces.push_back({{"grad", vector_json(p.grad)}, {"c", rational_json(p.c)}});
  return {{"pieces", pieces}};
}

Json polynomial_json(const Polynomial& q) {
  Json a = Json::array();
  for (const auto& [e, c] : q.terms()) a.push_back({{"exponent", e}, {"coefficient", rational_json(c)}});
  return a;
}

Json halfspace_json(const Halfspace& h) {
  Json n = Json::array();
  for (const auto& x : h.normal) n.push_back(x.get_num().get_si());
  return {{"normal", n}, {"offset", rational_json(h.offset)}};
}

Json to_json(const ProblemFile& p) {
  Json j;
  j["name"] = p.name;
  j["description"] = p.description;
  const auto& b = p.root_datum;
  Json rd{{"rank", b.rank}, {"gram", matrix_json(b.gram)}, {"two_rho", vector_json(b.two_rho)}};
  rd["restricted_roots"] = Json::array();
  for (const auto& a : b.restricted_roots) rd["restricted_roots"].push_back(vector_json(a));
  rd["spherical_simple_roots"] = Json::array();
  for (const auto& s : b.simple_roots) rd["spherical_simple_roots"].push_back(vector_json(s));
  rd["colours"] = Json::array();
  for (const auto& c : b.colours) rd["colours"].push_back({{"image", vector_json(c.covector)}, {"type", to_string(c.type)}});
  j["root_datum"] = rd;

  Json pj{{"kind", kind_name(p.polytope.kind)}};
  if (p.polytope.kind == PolytopeKind::Divisor) {
    pj["rays"] = Json::array();
    for (const auto& ray : p.polytope.rays) {
      Json u = Json::array();
      for (const auto& x : ray.u) u.push_back(x.get_num().get_si());
      pj["rays"].push_back({{"u", u}, {"c", rational_json(ray.c)}});
    }
  } else {
    pj["halfspaces"] = Json::array();
    for (const auto& h : p.polytope.halfspaces) pj["halfspaces"].push_back(halfspace_json(h));
  }
  j["polytope"] = pj;

  Json o{{"net_denominator", p.options.net_denominator},
         {"soliton_tolerance", p.options.soliton_tolerance},
         {"shift", p.options.shift},
         {"permissive_colours", p.options.permissive_colours}};
  if (p.options.fano) o["fano"] = *p.options.fano;
  j["options"] = o;

  if (!p.test_functions.empty()) {
    j["test_functions"] = Json::array();
    for (const auto& u : p.test_functions) j["test_functions"].push_back(pl_json(u));
  }
  if (p.envelope) {
    Json e{{"h", rational_json(p.envelope->h)}};
    if (p.envelope->function) e["function"] = pl_json(*p.envelope->function);
    if (p.envelope->polynomial) e["polynomial"] = polynomial_json(*p.envelope->polynomial);
    j["envelope"] = e;
  }
  if (p.crease)
    j["crease"] = {{"function", pl_json(p.crease->function)},
                   {"functional", p.crease->functional == KernelFunctional::Fano ? "fano" : "relative"}};
  return j;
}

bool operator==(const ProblemFile& a, const ProblemFile& b) { return to_json(a) == to_json(b); }

std::filesystem::path resolve_problem_path(const std::string& name, const std::filesystem::path& catalog_dir) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  for (const auto& candidate : {catalog_dir / name, catalog_dir / (name + ".json")})
    if (fs::is_regular_file(candidate)) return candidate;
  throw Error(ErrorCode::Io, "no problem file " + name + " (also looked in " + catalog_dir.string() + ")");
}

Workspace build_workspace(const ProblemFile& p) {
  const auto& b = p.root_datum;
  Workspace w;
  try {
    w.rd = RootDatum(b.rank, b.gram, b.restricted_roots, b.two_rho, b.simple_roots, b.colours);
  } catch (const Error& e) {
    throw SchemaError(std::vector<SchemaIssue>{{"/root_datum", e.what()}});
  }
  const bool strict = !p.options.permissive_colours;
  switch (p.polytope.kind) {
    case PolytopeKind::Halfspaces: {
      if (!b.colours.empty()) w.colours = validate_colours(w.rd, strict);
      Polytope base = Polytope::from_halfspaces(p.polytope.halfspaces, b.rank);
      w.cp = restrict_to_chamber(base, w.rd);
      break;
    }
    case PolytopeKind::Chamber: {
      if (!b.colours.empty()) w.colours = validate_colours(w.rd, strict);
      auto ext = weyl_extension_convexity(p.polytope.halfspaces, w.rd);
      w.extension = ext;
      if (!ext.convex)
        throw Error(ErrorCode::NotExtendable, "W-orbit of P+ is not convex; witness " + to_string(*ext.witness));
      w.cp = *ext.chamber;
      break;
    }
    case PolytopeKind::Divisor: {
      auto res = polytope_from_divisor(w.rd, p.polytope.rays, strict);
      w.cp = std::move(res.chamber);
      w.colours = std::move(res.colours);
      break;
    }
  }
  return w;
}

FutakiContext build_context(const ProblemFile& p, const Workspace& w) {
  FutakiOptions o;
  o.shift = p.options.shift;
  return FutakiContext::build(w.rd, w.cp, o);
}

}  // namespace kstab
