#include "run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "lieflow/circle_diff.hpp"
#include "lieflow/euler_arnold.hpp"
#include "lieflow/random.hpp"
#include "lieflow/rigid_body.hpp"

namespace lieflow::cli {

namespace {

namespace fs = std::filesystem;

struct Series {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Snapshots {
  Eigen::VectorXd x;
  std::vector<std::pair<double, Eigen::VectorXd>> fields;
};

double rel_drift(double value, double reference) {
  return std::fabs(value - reference) / std::max(1.0, std::fabs(reference));
}

long step_count(double T, double dt) { return static_cast<long>(std::ceil(T / dt - 1e-9)); }

/// Max of a column over the emitted rows; what the manifest reports, so it
/// stays recomputable from the CSV alone.
double column_max(const Series& series, std::size_t col) {
  double m = 0.0;
  for (const auto& row : series.rows) m = std::max(m, row[col]);
  return m;
}

double column_min(const Series& series, std::size_t col) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : series.rows) m = std::min(m, row[col]);
  return m;
}

double column_rel_drift(const Series& series, std::size_t col) {
  if (series.rows.empty()) return 0.0;
  const double ref = series.rows.front()[col];
  double worst = 0.0;
  for (const auto& row : series.rows) worst = std::max(worst, rel_drift(row[col], ref));
  return worst;
}

// ---------------------------------------------------------------------- rigid

struct ManakovTracker {
  std::vector<std::pair<int, int>> terms;  // (degree, lambda power)
  std::vector<std::string> labels;

  explicit ManakovTracker(int n) {
    for (int deg = 2; deg <= n; ++deg)
      for (int pw = deg % 2; pw < deg; pw += 2) {
        terms.emplace_back(deg, pw);
        labels.push_back("P" + std::to_string(deg) + "_lambda" + std::to_string(pw));
      }
  }

  std::vector<double> values(const rigid::MomentMatrix<double>& j,
                             const Covector<double>& m) const {
    std::vector<double> out;
    out.reserve(terms.size());
    int cached_deg = -1;
    std::vector<double> coeffs;
    for (const auto& [deg, pw] : terms) {
      if (deg != cached_deg) {
        coeffs = rigid::manakov_coefficients(j, m, deg, rigid::manakov_default_samples(deg));
        cached_deg = deg;
      }
      out.push_back(coeffs[pw]);
    }
    return out;
  }
};

void run_rigid(const Scenario& sc, long stride, Series& series, RunReport& rep) {
  rigid::MomentMatrix<double> j(sc.inertia);
  const ManakovTracker manakov(sc.dimension);

  series.header = {"t", "kinetic_energy", "spatial_momentum_drift", "orthogonality_error"};
  for (const auto& label : manakov.labels) series.header.push_back(label + "_drift");

  rigid::BodyState<double> state{RotationMatrix<double>::Identity(sc.dimension),
                                 SkewMatrix<double>(sc.omega0), 0.0};
  const auto method =
      sc.method == "cayley" ? rigid::StepMethod::cayley_liegroup : rigid::StepMethod::rk4;
  const Covector<double> spatial0 = rigid::spatial_momentum(j, state);
  const std::vector<double> manakov0 = manakov.values(j, rigid::inertia_apply(j, state.omega));
  const double spatial_norm = std::max(1.0, spatial0.norm());

  const auto emit = [&](const rigid::BodyState<double>& st) {
    std::vector<double> row = {st.time, rigid::kinetic_energy(j, st.omega),
                               (rigid::spatial_momentum(j, st) - spatial0).norm() / spatial_norm,
                               st.g.orthogonality_defect()};
    const auto vals = manakov.values(j, rigid::inertia_apply(j, st.omega));
    for (std::size_t i = 0; i < vals.size(); ++i)
      row.push_back(rel_drift(vals[i], manakov0[i]));
    series.rows.push_back(std::move(row));
  };

  emit(state);
  const long nsteps = step_count(sc.T, sc.dt);
  try {
    for (long s = 1; s <= nsteps; ++s) {
      const double h = std::min(sc.dt, sc.T - state.time);
      state = rigid::step(j, state, h, method);
      if (s == nsteps) state.time = sc.T;
      if (s % stride == 0) emit(state);
    }
    rep.status = RunStatus::completed;
  } catch (const SingularInertiaError& e) {
    rep.status = RunStatus::singular_inertia;
    rep.message = e.what();
  } catch (const DivergenceError& e) {
    rep.status = RunStatus::blowup;
    rep.message = e.what();
  }
  rep.final_time = rep.status == RunStatus::completed ? sc.T : state.time;

  rep.drifts["kinetic_energy_drift"] = column_rel_drift(series, 1);
  rep.drifts["spatial_momentum_drift"] = column_max(series, 2);
  rep.drifts["orthogonality_error"] = column_max(series, 3);
  for (std::size_t i = 0; i < manakov.labels.size(); ++i)
    rep.drifts[manakov.labels[i] + "_drift"] = column_max(series, 4 + i);
}

// --------------------------------------------------------------------- circle

void fill_circle_rows(const Scenario& sc, const std::vector<circle::GeodesicSample>& traj,
                      long stride, Series& series, Snapshots& snaps) {
  using namespace circle;
  series.header = {"t", "hk_energy", "momentum_drift", "min_phi_x"};
  const PeriodicField m0 = momentum_k(traj.front().state, traj.front().u, sc.k,
                                      sc.consistency_tol);
  const double m0_norm = std::max(m0.max_abs(), 1e-12);
  const long last = static_cast<long>(traj.size()) - 1;
  for (long i = 0; i <= last; ++i) {
    if (i % stride != 0) continue;
    const auto& smp = traj[i];
    const PeriodicField m = momentum_k(smp.state, smp.u, sc.k, sc.consistency_tol);
    const double min_phix = 1.0 + derivative(smp.state.psi).values().minCoeff();
    series.rows.push_back({smp.state.t, hk_energy(smp.u, sc.k),
                           (m - m0).max_abs() / m0_norm, min_phix});
  }
  snaps.x = grid(sc.grid);
  for (double t : sc.snapshot_times) {
    const long idx = std::lround(t / sc.dt);
    if (idx < 0 || idx > last) continue;
    snaps.fields.emplace_back(traj[idx].state.t, traj[idx].u.values());
  }
}

void circle_drift_summary(const Series& series, RunReport& rep) {
  rep.drifts["hk_energy_drift"] = column_rel_drift(series, 1);
  rep.drifts["momentum_drift"] = column_max(series, 2);
  rep.drifts["min_phi_x"] = column_min(series, 3);
}

void run_circle_spectral(const Scenario& sc, long stride, Series& series, Snapshots& snaps,
                         RunReport& rep) {
  using namespace circle;
  const PeriodicField u0{sc.u0};
  GeodesicOptions opts;
  opts.dealias = sc.dealias;
  opts.eps_diffeo = sc.eps_diffeo;
  opts.stride = 1;

  std::vector<GeodesicSample> traj;
  long good_steps = -1;
  try {
    traj = geodesic_flow(u0, sc.k, sc.T, sc.dt, opts);
    rep.status = RunStatus::completed;
  } catch (const DiffeoLossError& e) {
    rep.status = RunStatus::diffeo_loss;
    rep.message = e.what();
    rep.final_time = e.time;
    good_steps = std::lround(e.time / sc.dt) - 1;
  } catch (const BlowUpError& e) {
    rep.status = RunStatus::blowup;
    rep.message = e.what();
    rep.final_time = std::min(sc.T, static_cast<double>(e.step) * sc.dt);
    good_steps = e.step - 1;
  }
  if (good_steps >= 0) {
    // the flow is deterministic; replay the healthy prefix for the series
    traj = geodesic_flow(u0, sc.k, static_cast<double>(good_steps) * sc.dt, sc.dt, opts);
  }
  fill_circle_rows(sc, traj, stride, series, snaps);
  if (rep.status == RunStatus::completed) rep.final_time = sc.T;
  circle_drift_summary(series, rep);
}

void run_circle_characteristics(const Scenario& sc, long stride, Series& series,
                                Snapshots& snaps, RunReport& rep) {
  using namespace circle;
  const PeriodicField u0{sc.u0};
  const double tstar = breaking_time(u0);
  const double sup0 = std::max(u0.max_abs(), 1e-12);
  const double min_slope = derivative(u0).values().minCoeff();
  const auto solution_at = [&](double t) { return t == 0.0 ? u0 : burgers_exact(u0, t); };

  series.header = {"t", "hk_energy", "momentum_drift", "min_phi_x"};
  rep.status = RunStatus::completed;
  const long nsteps = step_count(sc.T, sc.dt);
  for (long s = 0; s <= nsteps; ++s) {
    if (s % stride != 0) continue;
    const double t = s == nsteps ? sc.T : static_cast<double>(s) * sc.dt;
    if (t >= tstar * (1.0 - 1e-12)) {
      rep.status = RunStatus::shock;
      rep.message = "wave breaking at t = " + format_number(tstar);
      break;
    }
    const PeriodicField u = solution_at(t);
    series.rows.push_back({t, hk_energy(u, 0), std::fabs(u.max_abs() - sup0) / sup0,
                           1.0 + 3.0 * t * min_slope});
  }
  rep.final_time = rep.status == RunStatus::shock ? tstar : sc.T;

  snaps.x = grid(sc.grid);
  for (double t : sc.snapshot_times) {
    if (t >= tstar * (1.0 - 1e-12) || t > sc.T) continue;
    snaps.fields.emplace_back(t, solution_at(t).values());
  }
  circle_drift_summary(series, rep);
}

// --------------------------------------------------------------------- expmap

void run_expmap(const Scenario& sc, long stride, Series& series, Snapshots& snaps,
                RunReport& rep) {
  using namespace circle;
  run_circle_spectral(sc, stride, series, snaps, rep);
  if (rep.status != RunStatus::completed) return;

  const PeriodicField u0{sc.u0};
  std::vector<PeriodicField> dirs;
  dirs.push_back(sample(sc.grid, [](double x) { return std::cos(x); }));
  dirs.push_back(sample(sc.grid, [](double x) { return std::sin(2 * x); }));
  dirs.push_back(sample(sc.grid, [](double x) { return std::cos(3 * x); }));
  const auto probes = dexp_at_zero(sc.k, dirs);
  double probe_max = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    probe_max = std::max(probe_max, (probes[i] - dirs[i]).max_abs());
  rep.drifts["dexp_probe_max"] = probe_max;

  GeodesicOptions opts;
  opts.dealias = sc.dealias;
  opts.eps_diffeo = sc.eps_diffeo;
  opts.stride = 1;
  const auto traj = geodesic_flow(u0, sc.k, 1.0, sc.dt, opts);
  double ray_max = 0.0;
  for (double t : {0.25, 0.5, 0.75, 1.0}) {
    const long idx = std::lround(t / sc.dt);
    if (idx >= static_cast<long>(traj.size())) continue;
    const FlowMapState st = riemannian_exp(u0 * t, sc.k, sc.dt);
    ray_max = std::max(ray_max, (st.psi - traj[idx].state.psi).max_abs());
  }
  rep.drifts["ray_error_max"] = ray_max;
}

// ----------------------------------------------------------------- involution

void run_involution(const Scenario& sc, long stride, Series& series, RunReport& rep) {
  (void)stride;
  using namespace algebra;
  const auto spec = so_algebra_spec(sc.dimension);
  const rigid::MomentMatrix<double> j(sc.inertia);
  auto fields = manakov_coefficient_fields(j);

  Rng rng(static_cast<std::uint64_t>(sc.seed));
  series.header = {"sample", "max_bracket"};
  double worst = 0.0;
  for (int p = 0; p < sc.points; ++p) {
    const AlgebraCovector<double> m(rng.normal_vector(spec.dim()));
    const double h = sc.fd_h > 0.0 ? sc.fd_h : default_fd_step<double>(m.coords);
    double local = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i)
      for (std::size_t l = i + 1; l < fields.size(); ++l)
        local = std::max(local, std::fabs(lie_poisson_bracket(spec, fields[i].second,
                                                              fields[l].second, m, h)));
    series.rows.push_back({static_cast<double>(p), local});
    worst = std::max(worst, local);
  }
  rep.status = RunStatus::completed;
  rep.final_time = 0.0;
  rep.drifts["involution_max"] = worst;
}

// --------------------------------------------------------------------- output

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.good()) throw Error("emit: cannot write " + path.string());
}

std::string render_series(const Series& series) {
  std::string text;
  for (std::size_t i = 0; i < series.header.size(); ++i) {
    if (i) text += ',';
    text += series.header[i];
  }
  text += '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_number(row[i]);
    }
    text += '\n';
  }
  return text;
}

std::string render_snapshots(const Snapshots& snaps) {
  std::string text = "point";
  for (Eigen::Index i = 0; i < snaps.x.size(); ++i) text += ",v" + std::to_string(i);
  text += '\n';
  text += 'x';
  for (Eigen::Index i = 0; i < snaps.x.size(); ++i) {
    text += ',';
    text += format_number(snaps.x[i]);
  }
  text += '\n';
  for (const auto& [t, field] : snaps.fields) {
    text += format_number(t);
    for (Eigen::Index i = 0; i < field.size(); ++i) {
      text += ',';
      text += format_number(field[i]);
    }
    text += '\n';
  }
  return text;
}

}  // namespace

const char* status_name(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup: return "blowup";
    case RunStatus::shock: return "shock";
    case RunStatus::diffeo_loss: return "diffeo_loss";
    case RunStatus::singular_inertia: return "singular_inertia";
    case RunStatus::config_error: return "config_error";
  }
  return "unknown";
}

int status_exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return 0;
    case RunStatus::blowup:
    case RunStatus::shock:
    case RunStatus::diffeo_loss: return 2;
    case RunStatus::config_error: return 3;
    case RunStatus::singular_inertia: return 4;
  }
  return 1;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general);
  return std::string(buf, res.ptr);
}

RunReport run(const Scenario& scenario, const RunOptions& options) {
  const long stride = options.stride_override > 0 ? options.stride_override : scenario.stride;
  Series series;
  Snapshots snaps;
  RunReport rep;

  try {
    switch (scenario.kind) {
      case Kind::rigid_body:
        run_rigid(scenario, stride, series, rep);
        break;
      case Kind::circle:
        if (scenario.integrator == "characteristics")
          run_circle_characteristics(scenario, stride, series, snaps, rep);
        else
          run_circle_spectral(scenario, stride, series, snaps, rep);
        break;
      case Kind::expmap:
        run_expmap(scenario, stride, series, snaps, rep);
        break;
      case Kind::involution:
        run_involution(scenario, stride, series, rep);
        break;
    }
  } catch (const ConfigError& e) {
    rep.status = RunStatus::config_error;
    rep.message = e.what();
    return rep;
  } catch (const InvalidArgument& e) {
    rep.status = RunStatus::config_error;
    rep.message = e.what();
    return rep;
  } catch (const SingularInertiaError& e) {
    rep.status = RunStatus::singular_inertia;
    rep.message = e.what();
  }

  fs::create_directories(options.out_dir);
  const fs::path base = fs::path(options.out_dir) / scenario.name;
  const fs::path series_path = base.string() + "_series.csv";
  write_text(series_path, render_series(series));
  rep.outputs.push_back(series_path.string());

  nlohmann::json manifest;
  manifest["name"] = scenario.name;
  manifest["status"] = status_name(rep.status);
  manifest["final_time"] = rep.final_time;
  manifest["drifts"] = rep.drifts;
  manifest["scenario"] = scenario.echo;
  manifest["outputs"]["series"] = series_path.string();
  if (!snaps.fields.empty()) {
    const fs::path snap_path = base.string() + "_snapshots.csv";
    write_text(snap_path, render_snapshots(snaps));
    rep.outputs.push_back(snap_path.string());
    manifest["outputs"]["snapshots"] = snap_path.string();
  }
  if (!rep.message.empty()) manifest["message"] = rep.message;

  const fs::path manifest_path = base.string() + "_manifest.json";
  write_text(manifest_path, manifest.dump(2) + "\n");
  rep.outputs.push_back(manifest_path.string());
  return rep;
}

}  // namespace lieflow::cli
