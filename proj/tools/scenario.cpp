#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

#include "lieflow/random.hpp"

namespace lieflow::cli {

namespace {

using nlohmann::json;

constexpr double two_pi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& what) { throw ConfigError("scenario: " + what); }

double get_number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number()) fail(std::string(key) + " must be a number");
  return v.get<double>();
}

long get_integer(const json& doc, const char* key, long fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) fail(std::string(key) + " must be an integer");
  return v.get<long>();
}

bool get_bool(const json& doc, const char* key, bool fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_boolean()) fail(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) fail(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::vector<double> get_list(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_array()) fail(std::string(key) + " must be a list of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail(std::string(key) + " must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

void check_keys(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key())) fail("unknown key \"" + item.key() + "\"");
  }
}

void parse_common(const json& doc, Scenario& s) {
  if (doc.contains("name")) {
    s.name = get_string(doc, "name");
    if (s.name.empty()) fail("name must not be empty");
    for (char c : s.name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
        fail("name may contain only letters, digits, '_' and '-'");
  }
  s.dt = get_number(doc, "dt", s.dt);
  s.T = get_number(doc, "T", s.T);
  s.stride = get_integer(doc, "stride", s.stride);
  if (!(s.dt > 0.0)) fail("dt must be positive");
  if (!(s.T > 0.0)) fail("T must be positive");
  if (s.stride < 1) fail("stride must be at least 1");
  if (doc.contains("snapshot_times")) {
    s.snapshot_times = get_list(doc, "snapshot_times");
    for (double t : s.snapshot_times)
      if (!(t >= 0.0) || t > s.T + 0.5 * s.dt) fail("snapshot_times must lie in [0, T]");
  }
}

Eigen::MatrixXd skew_from_list(const std::vector<double>& v, int n) {
  if (n == 3 && v.size() == 3) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(2, 1) = v[0];
    w(1, 2) = -v[0];
    w(0, 2) = v[1];
    w(2, 0) = -v[1];
    w(1, 0) = v[2];
    w(0, 1) = -v[2];
    return w;
  }
  if (v.size() != static_cast<std::size_t>(n) * n)
    fail("omega0 must have length 3 (axis vector, dimension 3 only) or dimension^2");
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = v[static_cast<std::size_t>(i) * n + j];
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w + w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail("omega0 matrix must be antisymmetric");
  return w;
}

void parse_rigid(const json& doc, Scenario& s) {
  s.dimension = static_cast<int>(get_integer(doc, "dimension", 3));
  if (s.dimension < 2 || s.dimension > 8) fail("dimension must be between 2 and 8");
  const int n = s.dimension;

  const int inertia_sources = doc.contains("inertia_diag") + doc.contains("inertia_matrix") +
                              doc.contains("mass_atoms");
  if (inertia_sources != 1)
    fail("exactly one of inertia_diag, inertia_matrix, mass_atoms is required");

  if (doc.contains("inertia_diag")) {
    const auto diag = get_list(doc, "inertia_diag");
    if (diag.size() != static_cast<std::size_t>(n)) fail("inertia_diag must have length dimension");
    s.inertia = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (diag[i] < 0.0) fail("inertia_diag entries must be nonnegative");
      s.inertia(i, i) = diag[i];
    }
  } else if (doc.contains("inertia_matrix")) {
    const auto flat = get_list(doc, "inertia_matrix");
    if (flat.size() != static_cast<std::size_t>(n) * n)
      fail("inertia_matrix must have dimension^2 entries, row major");
    Eigen::MatrixXd j(n, n);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) j(i, c) = flat[static_cast<std::size_t>(i) * n + c];
    const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
    if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      fail("inertia_matrix must be symmetric");
    s.inertia = j;
  } else {
    const auto flat = get_list(doc, "mass_atoms");
    if (flat.empty() || flat.size() % (n + 1) != 0)
      fail("mass_atoms must be rows of (mass, x_1..x_n) flattened");
    s.inertia = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t row = 0; row < flat.size(); row += n + 1) {
      const double mass = flat[row];
      if (!(mass > 0.0)) fail("mass_atoms masses must be positive");
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = flat[row + 1 + i];
      s.inertia += mass * x * x.transpose();
    }
  }

  const int omega_sources = doc.contains("omega0") + doc.contains("omega0_preset");
  if (omega_sources != 1) fail("exactly one of omega0, omega0_preset is required");
  if (doc.contains("omega0")) {
    s.omega0 = skew_from_list(get_list(doc, "omega0"), n);
  } else {
    s.omega0 = omega0_preset(get_string(doc, "omega0_preset"), n);
  }

  if (doc.contains("method")) {
    s.method = get_string(doc, "method");
    if (s.method != "rk4" && s.method != "cayley") fail("method must be rk4 or cayley");
  }
  if (!s.snapshot_times.empty())
    fail("snapshot_times are only defined for circle and expmap runs");
}

void parse_field(const json& doc, Scenario& s) {
  s.grid = static_cast<int>(get_integer(doc, "grid", 256));
  if (s.grid < 16 || (s.grid & (s.grid - 1)) != 0)
    fail("grid must be a power of two, at least 16");
  s.k = static_cast<int>(get_integer(doc, "k", 1));
  if (s.k < 0 || s.k > 3) fail("k must be between 0 and 3");

  const int u0_sources = doc.contains("u0_preset") + doc.contains("u0_coeffs");
  if (u0_sources != 1) fail("exactly one of u0_preset, u0_coeffs is required");
  if (doc.contains("u0_preset")) {
    s.u0 = u0_preset(get_string(doc, "u0_preset"), s.grid);
  } else {
    // a0, a1, b1, a2, b2, ...: sum of a_m cos(mx) + b_m sin(mx)
    const auto c = get_list(doc, "u0_coeffs");
    if (c.empty() || c.size() % 2 == 0) fail("u0_coeffs must be a0, a1, b1, a2, b2, ...");
    const std::size_t modes = c.size() / 2;
    if (modes >= static_cast<std::size_t>(s.grid) / 2)
      fail("u0_coeffs describes more modes than the grid resolves");
    Eigen::VectorXd u = Eigen::VectorXd::Constant(s.grid, c[0]);
    for (int j = 0; j < s.grid; ++j) {
      const double x = two_pi * j / s.grid;
      for (std::size_t m = 1; m <= modes; ++m)
        u[j] += c[2 * m - 1] * std::cos(m * x) + c[2 * m] * std::sin(m * x);
    }
    s.u0 = u;
  }

  s.dealias = get_bool(doc, "dealias", true);
  s.eps_diffeo = get_number(doc, "eps_diffeo", 1e-6);
  s.consistency_tol = get_number(doc, "consistency_tol", 1e-6);
  if (!(s.eps_diffeo > 0.0)) fail("eps_diffeo must be positive");
  if (!(s.consistency_tol > 0.0)) fail("consistency_tol must be positive");
}

void parse_circle(const json& doc, Scenario& s) {
  parse_field(doc, s);
  if (doc.contains("integrator")) {
    s.integrator = get_string(doc, "integrator");
    if (s.integrator != "rk4" && s.integrator != "characteristics")
      fail("integrator must be rk4 or characteristics");
    if (s.integrator == "characteristics" && s.k != 0)
      fail("the characteristics integrator requires k = 0");
  }
}

void parse_expmap(const json& doc, Scenario& s) {
  if (doc.contains("T")) fail("T is fixed at 1 for expmap runs");
  s.T = 1.0;
  parse_field(doc, s);
}

void parse_involution(const json& doc, Scenario& s) {
  s.dimension = static_cast<int>(get_integer(doc, "dimension", 4));
  if (s.dimension < 3 || s.dimension > 6) fail("dimension must be between 3 and 6");
  const int n = s.dimension;
  s.points = static_cast<int>(get_integer(doc, "points", 10));
  if (s.points < 1) fail("points must be at least 1");
  s.seed = get_integer(doc, "seed", 2024);
  s.fd_h = get_number(doc, "fd_h", 0.0);
  if (s.fd_h < 0.0) fail("fd_h must be nonnegative");
  if (doc.contains("inertia_diag")) {
    const auto diag = get_list(doc, "inertia_diag");
    if (diag.size() != static_cast<std::size_t>(n)) fail("inertia_diag must have length dimension");
    s.inertia = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (diag[i] < 0.0) fail("inertia_diag entries must be nonnegative");
      s.inertia(i, i) = diag[i];
    }
  } else {
    s.inertia = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) s.inertia(i, i) = 0.3 + 0.4 * i;
  }
  if (!s.snapshot_times.empty())
    fail("snapshot_times are only defined for circle and expmap runs");
}

json echo_common(const json& doc, const Scenario& s) {
  json e;
  e["kind"] = kind_name(s.kind);
  e["name"] = s.name;
  e["dt"] = s.dt;
  e["T"] = s.T;
  e["stride"] = s.stride;
  if (!s.snapshot_times.empty()) e["snapshot_times"] = s.snapshot_times;
  for (const char* key : {"inertia_diag", "inertia_matrix", "mass_atoms", "omega0",
                          "omega0_preset", "u0_preset", "u0_coeffs"})
    if (doc.contains(key)) e[key] = doc.at(key);
  return e;
}

}  // namespace

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::rigid_body: return "rigid_body";
    case Kind::circle: return "circle";
    case Kind::involution: return "involution";
    case Kind::expmap: return "expmap";
  }
  return "unknown";
}

Eigen::VectorXd u0_preset(const std::string& name, int grid) {
  Eigen::VectorXd u(grid);
  for (int j = 0; j < grid; ++j) {
    const double x = two_pi * j / grid;
    if (name == "cos1")
      u[j] = std::cos(x);
    else if (name == "half_cos")
      u[j] = 0.5 * std::cos(x);
    else if (name == "neg_sin")
      u[j] = -std::sin(x);
    else if (name == "small_sin")
      u[j] = 0.1 * std::sin(x);
    else
      fail("unknown u0_preset \"" + name + "\"");
  }
  return u;
}

Eigen::MatrixXd omega0_preset(const std::string& name, int dimension) {
  if (name == "stable_spin") {
    if (dimension != 3) fail("omega0_preset stable_spin requires dimension 3");
    return skew_from_list({1.0, 1e-3, 0.0}, 3);
  }
  if (name == "tumble") {
    if (dimension != 3) fail("omega0_preset tumble requires dimension 3");
    const double c = 1.0 / std::sqrt(3.0);
    return skew_from_list({c, c, c}, 3);
  }
  if (name == "generic") {
    Rng rng(20240817u + static_cast<std::uint64_t>(dimension));
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dimension, dimension);
    for (int i = 0; i < dimension; ++i)
      for (int j = i + 1; j < dimension; ++j) {
        const double v = rng.normal();
        w(i, j) = v;
        w(j, i) = -v;
      }
    return w / w.norm();
  }
  fail("unknown omega0_preset \"" + name + "\"");
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be a single JSON object");
  for (const auto& item : doc.items())
    if (item.value().is_object() || (item.value().is_array() && !item.value().empty() &&
                                     !item.value().front().is_number()))
      fail("key \"" + item.key() + "\" must be a scalar or a list of numbers");

  if (!doc.contains("kind")) fail("kind is required");
  const std::string kind = get_string(doc, "kind");

  Scenario s;
  static const std::set<std::string> common = {"kind", "name", "dt", "T", "stride",
                                               "snapshot_times"};
  auto with = [&](std::initializer_list<const char*> extra) {
    std::set<std::string> keys = common;
    for (const char* k : extra) keys.insert(k);
    return keys;
  };

  if (kind == "rigid_body") {
    s.kind = Kind::rigid_body;
    check_keys(doc, with({"dimension", "inertia_diag", "inertia_matrix", "mass_atoms",
                          "omega0", "omega0_preset", "method"}));
    parse_common(doc, s);
    parse_rigid(doc, s);
    s.echo = echo_common(doc, s);
    s.echo["dimension"] = s.dimension;
    s.echo["method"] = s.method;
  } else if (kind == "circle") {
    s.kind = Kind::circle;
    check_keys(doc, with({"grid", "k", "u0_preset", "u0_coeffs", "integrator", "dealias",
                          "eps_diffeo", "consistency_tol"}));
    parse_common(doc, s);
    parse_circle(doc, s);
    s.echo = echo_common(doc, s);
    s.echo["grid"] = s.grid;
    s.echo["k"] = s.k;
    s.echo["integrator"] = s.integrator;
    s.echo["dealias"] = s.dealias;
    s.echo["eps_diffeo"] = s.eps_diffeo;
    s.echo["consistency_tol"] = s.consistency_tol;
  } else if (kind == "expmap") {
    s.kind = Kind::expmap;
    check_keys(doc, with({"grid", "k", "u0_preset", "u0_coeffs", "dealias", "eps_diffeo",
                          "consistency_tol"}));
    parse_common(doc, s);
    parse_expmap(doc, s);
    s.echo = echo_common(doc, s);
    s.echo["grid"] = s.grid;
    s.echo["k"] = s.k;
    s.echo["dealias"] = s.dealias;
    s.echo["eps_diffeo"] = s.eps_diffeo;
    s.echo["consistency_tol"] = s.consistency_tol;
  } else if (kind == "involution") {
    s.kind = Kind::involution;
    check_keys(doc, with({"dimension", "points", "seed", "fd_h", "inertia_diag"}));
    parse_common(doc, s);
    parse_involution(doc, s);
    s.echo = echo_common(doc, s);
    s.echo["dimension"] = s.dimension;
    s.echo["points"] = s.points;
    s.echo["seed"] = s.seed;
    s.echo["fd_h"] = s.fd_h;
  } else {
    fail("kind must be rigid_body, circle, involution or expmap");
  }
  return s;
}

}  // namespace lieflow::cli
