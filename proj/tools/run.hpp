#pragma once

#include <map>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace lieflow::cli {

enum class RunStatus { completed, blowup, shock, diffeo_loss, singular_inertia, config_error };

const char* status_name(RunStatus status);

/// Process exit code for a status: 0 completed, 2 physical termination
/// (shock, blowup, diffeo_loss), 3 config_error, 4 singular_inertia.
int status_exit_code(RunStatus status);

struct RunReport {
  RunStatus status = RunStatus::completed;
  double final_time = 0.0;
  std::map<std::string, double> drifts;
  std::vector<std::string> outputs;
  std::string message;

  int exit_code() const { return status_exit_code(status); }
};

struct RunOptions {
  std::string out_dir = ".";
  long stride_override = 0;  // 0 keeps the scenario stride
};

/// Executes the scenario, writes <name>_series.csv, optional
/// <name>_snapshots.csv and <name>_manifest.json into out_dir, and returns
/// the report. Numerical failures become statuses, never exceptions.
RunReport run(const Scenario& scenario, const RunOptions& options = {});

/// Shortest decimal form that round-trips the double, at most 17
/// significant digits; the only number format used in emitted CSV.
std::string format_number(double value);

}  // namespace lieflow::cli
