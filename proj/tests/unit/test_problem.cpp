#include "doctest.h"
#include "kstab/error.hpp"
#include "kstab/problem.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::catalog_problem;
using kstab::testing::q;

namespace {

std::vector<SchemaIssue> issues_of(const Json& j) {
  try {
    parse_problem(j);
  } catch (const SchemaError& e) {
    return e.issues();
  }
  FAIL("no schema error");
  return {};
}

bool has_pointer(const std::vector<SchemaIssue>& issues, const std::string& ptr) {
  for (const auto& i : issues)
    if (i.pointer == ptr) return true;
  return false;
}

Json minimal() {
  return Json::parse(R"({
    "root_datum": {"rank": 2},
    "polytope": {"halfspaces": [{"normal": [1, 0], "offset": 1}, {"normal": [-1, 0], "offset": 1},
                                {"normal": [0, 1], "offset": 1}, {"normal": [0, -1], "offset": 1}]}
  })");
}

}  // namespace

TEST_CASE("bundled examples parse") {
  auto sq = catalog_problem("toric_square");
  CHECK(sq.root_datum.rank == 2);
  CHECK(sq.root_datum.restricted_roots.empty());
  auto ss = catalog_problem("rank2_strict_ss");
  CHECK(ss.polytope.kind == PolytopeKind::Chamber);
  CHECK(ss.polytope.halfspaces[0].offset == q(4, 3));
}

TEST_CASE("every catalog file round-trips") {
  for (const auto& entry : std::filesystem::directory_iterator(KSTAB_CATALOG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    ProblemFile p = parse_problem_file(entry.path());
    ProblemFile again = parse_problem(to_json(p));
    CHECK(again == p);
    CHECK(to_json(again) == to_json(p));
  }
}

TEST_CASE("defaults") {
  auto p = parse_problem(minimal());
  CHECK(p.root_datum.gram == identity_matrix(2));
  CHECK(p.root_datum.two_rho == QVector{0, 0});
  CHECK(p.options.net_denominator == 16);
  CHECK(p.options.shift);
  CHECK_FALSE(p.options.fano);
}

TEST_CASE("schema errors carry JSON pointers") {
  Json j = minimal();
  j["root_datum"]["gram"] = Json::parse(R"([[1, 2], [2, 1]])");
  CHECK(has_pointer(issues_of(j), "/root_datum/gram"));

  j = minimal();
  j["polytope"]["halfspaces"][1]["offset"] = "1/x";
  j["polytope"]["halfspaces"][2]["normal"] = Json::parse(R"(["1/2", 0])");
  j["options"] = Json::parse(R"({"net_denominator": 0})");
  auto issues = issues_of(j);
  CHECK(has_pointer(issues, "/polytope/halfspaces/1/offset"));
  CHECK(has_pointer(issues, "/polytope/halfspaces/2/normal/0"));
  CHECK(has_pointer(issues, "/options/net_denominator"));
  CHECK(issues.size() == 3);

  j = minimal();
  j.erase("polytope");
  CHECK(has_pointer(issues_of(j), "/polytope"));

  j = minimal();
  j["envelope"] = Json::object();
  CHECK(has_pointer(issues_of(j), "/envelope"));
}

TEST_CASE("workspace construction") {
  auto w = build_workspace(catalog_problem("a2_hexagon"));
  CHECK(w.cp.base.vertices().size() == 6);
  REQUIRE(w.extension);
  CHECK(w.extension->convex);
  try {
    build_workspace(catalog_problem("nonconvex_extension"));
    FAIL("expected NotExtendable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotExtendable);
  }
}

TEST_CASE("problem path resolution") {
  auto p = resolve_problem_path("toric_square", KSTAB_CATALOG_DIR);
  CHECK(std::filesystem::exists(p));
  CHECK(resolve_problem_path(p.string(), "/nonexistent") == p);
  try {
    resolve_problem_path("no_such_problem", KSTAB_CATALOG_DIR);
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}
