#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "lieflow/errors.hpp"

namespace lieflow::cli {

enum class Kind { rigid_body, circle, involution, expmap };

const char* kind_name(Kind kind);

/// Fully resolved run description: presets expanded, defaults applied.
/// `echo` holds the normalized document that goes into the run manifest.
struct Scenario {
  Kind kind = Kind::rigid_body;
  std::string name = "run";

  // rigid_body
  int dimension = 3;
  Eigen::MatrixXd inertia;   // moment matrix J
  Eigen::MatrixXd omega0;    // initial body velocity, skew
  std::string method = "rk4";

  // circle, expmap
  int grid = 256;
  int k = 1;
  Eigen::VectorXd u0;        // initial field samples
  std::string integrator = "rk4";
  bool dealias = true;
  double eps_diffeo = 1e-6;
  double consistency_tol = 1e-6;

  // involution
  int points = 10;
  long seed = 2024;
  double fd_h = 0.0;         // 0 means the default step

  // common
  double dt = 1e-3;
  double T = 1.0;
  long stride = 1;
  std::vector<double> snapshot_times;

  nlohmann::json echo;
};

/// Parses a flat key-value JSON document (one object, arrays of numbers as
/// the only nesting). Unknown keys, type mismatches, missing or mutually
/// exclusive fields all raise ConfigError with the offending key named.
Scenario parse_scenario(const std::string& text);

/// Named initial fields available to circle and expmap scenarios.
Eigen::VectorXd u0_preset(const std::string& name, int grid);

/// Named initial body velocities for rigid_body scenarios.
Eigen::MatrixXd omega0_preset(const std::string& name, int dimension);

}  // namespace lieflow::cli
