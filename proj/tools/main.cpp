#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "run.hpp"
#include "scenario.hpp"
#include "verify.hpp"

namespace {

using namespace lieflow::cli;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lieflow::ConfigError("cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Precedence: --out flag, then LIEFLOW_OUT, then the working directory.
std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LIEFLOW_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

/// Parses the scenario; a document without a name is named after the file.
Scenario load_scenario(const std::string& path) {
  const std::string text = read_file(path);
  Scenario sc = parse_scenario(text);
  if (!nlohmann::json::parse(text).contains("name")) {
    sc.name = std::filesystem::path(path).stem().string();
    sc.echo["name"] = sc.name;
  }
  return sc;
}

std::pair<int, std::string> run_one(const std::string& path, const RunOptions& options) {
  try {
    const Scenario sc = load_scenario(path);
    const RunReport rep = run(sc, options);
    std::string text = sc.name + ": " + status_name(rep.status);
    if (rep.status == RunStatus::config_error) {
      text += "\n  " + rep.message + "\n";
      return {rep.exit_code(), text};
    }
    text += ", final time " + format_number(rep.final_time);
    if (!rep.message.empty()) text += "\n  " + rep.message;
    for (const auto& [key, value] : rep.drifts) text += "\n  " + key + " = " + format_number(value);
    for (const auto& out : rep.outputs) text += "\n  wrote " + out;
    text += "\n";
    return {rep.exit_code(), text};
  } catch (const lieflow::ConfigError& e) {
    return {3, path + ": " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {1, path + ": " + e.what() + "\n"};
  }
}

std::vector<std::string> sweep_list(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw lieflow::ConfigError(std::string("sweep: not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw lieflow::ConfigError("sweep: expected a JSON array of file paths");
  std::vector<std::string> paths;
  for (const auto& entry : doc) {
    if (!entry.is_string())
      throw lieflow::ConfigError("sweep: entries must be scenario file paths");
    paths.push_back(entry.get<std::string>());
  }
  if (paths.empty()) throw lieflow::ConfigError("sweep: the list is empty");
  return paths;
}

int do_simulate(const std::string& scenario_path, const std::string& sweep_path,
                const RunOptions& options) {
  if (scenario_path.empty() && sweep_path.empty())
    throw lieflow::ConfigError("simulate: give a scenario file or --sweep");
  if (!scenario_path.empty() && !sweep_path.empty())
    throw lieflow::ConfigError("simulate: a scenario file and --sweep are mutually exclusive");

  if (sweep_path.empty()) {
    const auto [code, text] = run_one(scenario_path, options);
    std::fputs(text.c_str(), code == 0 || code == 2 ? stdout : stderr);
    return code;
  }

  const std::vector<std::string> paths = sweep_list(sweep_path);
  std::vector<std::future<std::pair<int, std::string>>> futures;
  futures.reserve(paths.size());
  for (const auto& p : paths)
    futures.push_back(std::async(std::launch::async, run_one, p, options));
  int worst = 0;
  for (auto& f : futures) {
    const auto [code, text] = f.get();
    std::fputs(text.c_str(), code == 0 || code == 2 ? stdout : stderr);
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic flow of one-sided-invariant metrics: rigid bodies on SO(n) and "
               "H^k flows on circle diffeomorphisms"};
  app.require_subcommand(1);

  std::string scenario_path, out_flag, sweep_path, suite;
  long stride = 0;

  CLI::App* sim = app.add_subcommand("simulate", "run a scenario document and emit CSV + manifest");
  sim->add_option("scenario", scenario_path, "scenario JSON file");
  sim->add_option("--out", out_flag, "output directory (default: $LIEFLOW_OUT, else cwd)");
  sim->add_option("--stride", stride, "override the sampling stride")
      ->check(CLI::PositiveNumber);
  sim->add_option("--sweep", sweep_path, "JSON array of scenario files, run concurrently");

  CLI::App* ver = app.add_subcommand("verify", "run an invariant suite");
  std::string suite_help = "one of:";
  for (const auto& name : verify_suite_names()) suite_help += " " + name;
  ver->add_option("suite", suite, suite_help)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (sim->parsed()) {
      RunOptions options;
      options.out_dir = resolve_out_dir(out_flag);
      options.stride_override = stride;
      return do_simulate(scenario_path, sweep_path, options);
    }
    return verify_suite(suite);
  } catch (const lieflow::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
