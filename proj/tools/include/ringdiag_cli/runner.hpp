#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringdiag_cli/manifest.hpp"

namespace ringdiag::cli {

struct RunOptions {
  bool oracle = false;
  std::optional<int> resolution_length;  // overrides task options when set
  std::optional<int> truncation_bound;
  bool timing = false;
  unsigned jobs = 1;
};

struct TaskOutcome {
  std::string id;
  std::string op;
  std::optional<bool> verdict;  // unset for tasks that only compute
  Json result = Json::object();
  std::vector<std::string> summary;  // short human-readable lines
  std::vector<std::string> trace;    // what `explain` prints
  double millis = 0;

  std::string status() const;
};

/// A task that failed to run.  `code` is the exit status it maps to.
class TaskError : public std::runtime_error {
 public:
  TaskError(std::string task, int code, const std::string& what);
  const std::string& task() const noexcept { return task_; }
  int code() const noexcept { return code_; }

 private:
  std::string task_;
  int code_;
};

constexpr int kExitPass = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitOracleDisagreement = 3;

/// The registered operation names, in a fixed order.
std::vector<std::string> operations();

/// Runs one task; throws TaskError (engine failures), InputError (bad task
/// arguments).
TaskOutcome run_task(const Manifest& m, const TaskSpec& task, const RunOptions& opts);
/// Every task, in declaration order in the result.
std::vector<TaskOutcome> run_all(const Manifest& m, const RunOptions& opts);

int exit_code(const std::vector<TaskOutcome>& outcomes);

constexpr const char* kReportSchema = "ringdiag-report/1";
Json report_json(const std::vector<TaskOutcome>& outcomes, const RunOptions& opts);
std::string report_text(const std::vector<TaskOutcome>& outcomes);

/// The trace of `task` in a report document; throws InputError(UnknownTask).
std::string explain(const Json& report, const std::string& task);

}  // namespace ringdiag::cli
