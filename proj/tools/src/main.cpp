#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ringdiag/error.hpp"
#include "ringdiag_cli/runner.hpp"

using namespace ringdiag::cli;

namespace {

int run(const std::string& path, const RunOptions& opts, bool json, const std::string& output) {
  Manifest m = load_manifest(path);
  std::vector<TaskOutcome> outcomes = run_all(m, opts);
  Json report = report_json(outcomes, opts);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw InputError(InputKind::Parse, output, "cannot write report");
    out << report.dump(2) << "\n";
  }
  if (json) std::cout << report.dump(2) << "\n";
  else std::cout << report_text(outcomes);
  return exit_code(outcomes);
}

int explain_task(const std::string& path, const std::string& task) {
  std::ifstream in(path);
  if (!in) throw InputError(InputKind::Parse, path, "cannot read report");
  std::stringstream ss;
  ss << in.rdbuf();
  Json report;
  try {
    report = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InputError(InputKind::Parse, "byte " + std::to_string(e.byte), e.what());
  }
  std::cout << explain(report, task);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homological algebra over diagrams of rings"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string manifest;
  std::string output;
  bool json = false;
  int length = 0;
  int bound = 0;
  auto* run_cmd = app.add_subcommand("run", "Run every task of a manifest");
  run_cmd->add_option("manifest", manifest, "Manifest file (JSON)")->required();
  run_cmd->add_flag("--json", json, "Print the machine-readable report");
  run_cmd->add_flag("--oracle", opts.oracle, "Run the brute-force oracles as well");
  auto* len_opt = run_cmd->add_option("--resolution-length", length, "Resolution length L")->check(CLI::PositiveNumber);
  auto* bound_opt = run_cmd->add_option("--truncation-bound", bound, "Truncation bound B")->check(CLI::PositiveNumber);
  run_cmd->add_option("-o,--output", output, "Also write the JSON report to this file");
  run_cmd->add_flag("--timing", opts.timing, "Record per-task wall time in the report");
  run_cmd->add_option("-j,--jobs", opts.jobs, "Tasks run concurrently")->check(CLI::PositiveNumber);

  std::string report;
  std::string task;
  auto* explain_cmd = app.add_subcommand("explain", "Print the trace behind one task of a report");
  explain_cmd->add_option("report", report, "Report file written by run --output")->required();
  explain_cmd->add_option("task", task, "Task id")->required();

  auto* ops_cmd = app.add_subcommand("operations", "List the task operations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInputError;
  }
  if (*len_opt) opts.resolution_length = length;
  if (*bound_opt) opts.truncation_bound = bound;

  try {
    if (*run_cmd) return run(manifest, opts, json, output);
    if (*explain_cmd) return explain_task(report, task);
    if (*ops_cmd) {
      for (const auto& op : operations()) std::cout << op << "\n";
      return kExitPass;
    }
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  } catch (const TaskError& e) {
    std::cerr << e.what() << "\n";
    return e.code();
  } catch (const ringdiag::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ringdiag::ErrorCode::OracleDisagreement ? kExitOracleDisagreement : kExitInputError;
  }
  return kExitPass;
}
