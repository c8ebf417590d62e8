#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ringdiag_cli/manifest.hpp"
#include "ringdiag_cli/runner.hpp"

using namespace ringdiag;
using namespace ringdiag::cli;

namespace {

const std::string kDir = RINGDIAG_MANIFEST_DIR;

struct Run {
  int status;
  std::string out;
};

Run tool(const std::string& args) {
  std::string cmd = std::string(RINGDIAG_TOOL) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string scratch(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ringdiag_cli_" + name)).string();
}

std::string write_scratch(const std::string& name, const std::string& text) {
  std::string path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

InputKind kind_of(const std::string& text) {
  try {
    parse_manifest_text(text);
  } catch (const InputError& e) {
    return e.kind();
  }
  FAIL("accepted: " << text);
  return InputKind::Parse;
}

const TaskOutcome& outcome(const std::vector<TaskOutcome>& all, const std::string& id) {
  for (const auto& o : all)
    if (o.id == id) return o;
  FAIL("no task " << id);
  return all.front();
}

}  // namespace

TEST_CASE("serialize then parse reproduces the manifest") {
  for (const char* name : {"tour.json", "fracture.json", "empty.json"}) {
    CAPTURE(name);
    Manifest m = load_manifest(kDir + "/" + name);
    Json doc = serialize_manifest(m);
    Manifest again = parse_manifest(doc);
    CHECK(again == m);
    CHECK(serialize_manifest(again).dump() == doc.dump());
    CHECK(parse_manifest_text(doc.dump(2)) == m);
  }
}

TEST_CASE("manifest errors carry locations and kinds") {
  CHECK(kind_of("{\"tasks\": [") == InputKind::Parse);
  CHECK(kind_of("[1, 2]") == InputKind::Parse);
  CHECK(kind_of(R"({"schema": 7})") == InputKind::Parse);
  CHECK(kind_of(R"({"squares": {"s": {"p": 2}}})") == InputKind::Parse);

  try {
    load_manifest(kDir + "/undeclared_ring.json");
    FAIL("accepted");
  } catch (const InputError& e) {
    CHECK(e.kind() == InputKind::Reference);
    CHECK(e.where() == "/complexes/K/ring");
  }

  try {
    parse_manifest_text(R"({"tasks": [{"id": "a", "op": "snf"}, {"id": "a", "op": "snf"}]})");
    FAIL("accepted");
  } catch (const InputError& e) {
    CHECK(e.where().rfind("/tasks", 0) == 0);
  }
}

TEST_CASE("inline module specs are invariant lists") {
  FPModule m = module_from_spec(Ring::integers(), Json::parse(R"({"rank": 1, "torsion": [[2, 3], [3, 1]]})"), "/m");
  CHECK(m.invariants() == ModuleInvariants{1, {24}});
  CHECK(module_from_spec(Ring::integers(), Json::parse(R"({"rank": 2})"), "/m").invariants() == ModuleInvariants{2, {}});
  CHECK_THROWS_AS(module_from_spec(Ring::integers(), Json::parse(R"({"torsion": [[4, 1]]})"), "/m"), InputError);
  CHECK_THROWS_AS(module_from_spec(Ring::integers(), Json::parse(R"({"torsion": [[2, 0]]})"), "/m"), InputError);
  CHECK_THROWS_AS(module_from_spec(Ring::integers(), Json::parse(R"({"torsion": [2]})"), "/m"), InputError);
}

TEST_CASE("fracture manifest passes with H0 = Z") {
  Manifest m = load_manifest(kDir + "/fracture.json");
  std::vector<TaskOutcome> out = run_all(m, {});
  REQUIRE(out.size() == 4);
  CHECK(out[0].id == "pullback");
  CHECK(out[3].id == "hasse-Z");
  CHECK(exit_code(out) == kExitPass);

  const Json& h = outcome(out, "fracture-Z").result["holim_homology"];
  for (const auto& row : h) {
    if (row["degree"] == 0) {
      CHECK(row["rank"] == 1);
      CHECK(row["invariant_factors"].empty());
    } else {
      CHECK(row["rank"] == 0);
      CHECK(row["invariant_factors"].empty());
    }
  }
  CHECK(outcome(out, "fracture-mixed").summary.front() == "M = R + R/24; holim: H-1 = 0, H0 = R + R/24");
}

TEST_CASE("empty task list gives an empty passing report") {
  std::vector<TaskOutcome> out = run_all(load_manifest(kDir + "/empty.json"), {});
  CHECK(out.empty());
  CHECK(exit_code(out) == kExitPass);
  Json r = report_json(out, {});
  CHECK(r["schema"] == kReportSchema);
  CHECK(r["tasks"].empty());
}

TEST_CASE("engine errors inside a task name the task") {
  Manifest m = parse_manifest_text(R"({
    "rings": {"Z": {"inverted": [], "modulus": 0}, "Z4": {"inverted": [], "modulus": 4}},
    "tasks": [{"id": "tor-high", "op": "tor", "source": "Z", "target": "Z4", "module": {"torsion": [[2, 1]]},
               "degree": 5, "resolution_length": 3}]
  })");
  try {
    run_all(m, {});
    FAIL("ran");
  } catch (const TaskError& e) {
    CHECK(e.task() == "tor-high");
    CHECK(e.code() == kExitInputError);
  }
}

TEST_CASE("reports are independent of parallelism") {
  Manifest m = load_manifest(kDir + "/tour.json");
  std::string serial = report_json(run_all(m, {}), {}).dump(2);
  RunOptions par;
  par.jobs = 4;
  CHECK(report_json(run_all(m, par), par).dump(2) == serial);
  CHECK(report_json(run_all(m, {}), {}).dump(2) == serial);
}

TEST_CASE("explain prints witnesses and checked squares") {
  Json frac = report_json(run_all(load_manifest(kDir + "/fracture.json"), {}), {});
  std::string w = explain(frac, "fracture-mixed");
  CHECK(w.find("Bezout witnesses") != std::string::npos);
  CHECK(w.find("1/6 = 1/2 - (1/3)") != std::string::npos);

  Json tour = report_json(run_all(load_manifest(kDir + "/tour.json"), {}), {});
  CHECK(explain(tour, "diagram").find("checked a->c") != std::string::npos);

  try {
    explain(tour, "nope");
    FAIL("explained");
  } catch (const InputError& e) {
    CHECK(e.kind() == InputKind::UnknownTask);
  }
}

TEST_CASE("operation registry") {
  std::vector<std::string> ops = operations();
  CHECK(std::is_sorted(ops.begin(), ops.end()));
  for (const char* op : {"fracture", "bk_holim", "left_kan", "right_kan", "probes", "snf", "truncation_oracle"})
    CHECK(std::find(ops.begin(), ops.end(), op) != ops.end());
  CHECK_THROWS_AS(run_all(parse_manifest_text(R"({"tasks": [{"id": "x", "op": "levitate"}]})"), {}), InputError);
}

TEST_CASE("tool exit codes") {
  CHECK(tool("run " + kDir + "/fracture.json").status == kExitPass);
  CHECK(tool("run " + kDir + "/empty.json").status == kExitPass);

  Run tour = tool("run " + kDir + "/tour.json");
  CHECK(tour.status == kExitVerdictFailure);
  CHECK(tour.out.find("[FAIL] unit-Z4") != std::string::npos);

  Run undeclared = tool("run " + kDir + "/undeclared_ring.json");
  CHECK(undeclared.status == kExitInputError);
  CHECK(undeclared.out.find("ReferenceError at /complexes/K/ring") != std::string::npos);

  Run syntax = tool("run " + write_scratch("syntax.json", "{\"tasks\": ["));
  CHECK(syntax.status == kExitInputError);
  CHECK(syntax.out.find("ParseError at byte") != std::string::npos);

  CHECK(tool("run /nonexistent/manifest.json").status == kExitInputError);
  CHECK(tool("frobnicate").status == kExitInputError);
}

TEST_CASE("tool json output, report files and explain") {
  Run a = tool("run --json " + kDir + "/tour.json");
  Run b = tool("run --json -j 4 " + kDir + "/tour.json");
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["tasks"].size() == 15);

  std::string report = scratch("report.json");
  CHECK(tool("run " + kDir + "/fracture.json -o " + report).status == kExitPass);
  Run ex = tool("explain " + report + " fracture-Z");
  CHECK(ex.status == kExitPass);
  CHECK(ex.out.find("free rank 1") != std::string::npos);
  Run missing = tool("explain " + report + " nope");
  CHECK(missing.status == kExitInputError);
  CHECK(missing.out.find("UnknownTask") != std::string::npos);

  Run ops = tool("operations");
  CHECK(ops.status == kExitPass);
  CHECK(ops.out.find("colim_decomposition\n") != std::string::npos);
}

TEST_CASE("flags override task options") {
  Manifest m = load_manifest(kDir + "/fracture.json");
  RunOptions o;
  o.truncation_bound = 2;
  o.oracle = true;
  std::vector<TaskOutcome> out = run_all(m, o);
  CHECK(exit_code(out) == kExitPass);
  CHECK(report_json(out, o)["oracle"] == true);
}
