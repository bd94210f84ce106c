#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kstab/envelope.hpp"
#include "kstab/error.hpp"
#include "kstab/futaki.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polytope.hpp"
#include "kstab/root_datum.hpp"

namespace kstab {

using Json = nlohmann::json;

struct SchemaIssue {
  std::string pointer;  // JSON pointer into the problem file
  std::string message;
};

/// Error(Schema) carrying every problem found in a file.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<SchemaIssue> issues);
  const std::vector<SchemaIssue>& issues() const { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

struct RootDatumBlock {
  std::size_t rank = 0;
  QMatrix gram;
  std::vector<QVector> restricted_roots;
  QVector two_rho;
  std::vector<QVector> simple_roots;
  std::vector<ColourImage> colours;
};

enum class PolytopeKind { Halfspaces, Chamber, Divisor };

struct PolytopeBlock {
  PolytopeKind kind = PolytopeKind::Halfspaces;
  std::vector<Halfspace> halfspaces;  // of P, or of P+ for Chamber
  std::vector<DivisorRay> rays;       // Divisor
};

struct ProblemOptions {
  std::optional<bool> fano;  // expected outcome of the Fano check, if stated
  unsigned net_denominator = 16;
  double soliton_tolerance = 1e-10;
  bool shift = true;
  bool permissive_colours = false;
};

struct EnvelopeBlock {
  std::optional<PLFunction> function;    // exact PL boundary data
  std::optional<Polynomial> polynomial;  // sampled boundary data
  Rational h = Rational(1, 64);
};

struct CreaseBlock {
  PLFunction function;
  KernelFunctional functional = KernelFunctional::Relative;
};

struct ProblemFile {
  std::string name;
  std::string description;
  RootDatumBlock root_datum;
  PolytopeBlock polytope;
  ProblemOptions options;
  std::vector<PLFunction> test_functions;
  std::optional<EnvelopeBlock> envelope;
  std::optional<CreaseBlock> crease;
};

/// Validates and converts. Error: SchemaError with every issue found.
ProblemFile parse_problem(const Json& j);
/// Errors: Io, SchemaError.
ProblemFile parse_problem_file(const std::filesystem::path& path);
/// Canonical serialization; parse_problem(to_json(p)) reproduces p.
Json to_json(const ProblemFile& p);
bool operator==(const ProblemFile& a, const ProblemFile& b);

/// An existing path is returned as is; otherwise `name` and `name.json`
/// are looked up in the catalog directory. Error: Io.
std::filesystem::path resolve_problem_path(const std::string& name, const std::filesystem::path& catalog_dir);

/// Everything derived from a problem file before any functional is
/// evaluated.
struct Workspace {
  RootDatum rd;
  ChamberPolytope cp;
  std::vector<ColourDiagnostic> colours;
  std::optional<ExtensionResult> extension;  // Chamber input only
};

/// Builds the root datum and P+. A non-convex Weyl extension of Chamber
/// input raises NotExtendable with the witness in the message.
Workspace build_workspace(const ProblemFile& p);
FutakiContext build_context(const ProblemFile& p, const Workspace& w);

// JSON helpers shared with the reports.
Json rational_json(const Rational& q);
Json vector_json(const QVector& v);
Json matrix_json(const QMatrix& m);
Json pl_json(const PLFunction& u);
Json polynomial_json(const Polynomial& q);
Json halfspace_json(const Halfspace& h);

}  // namespace kstab
