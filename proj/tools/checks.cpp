#include "checks.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "lieflow/circle_diff.hpp"
#include "lieflow/euler_arnold.hpp"
#include "lieflow/random.hpp"
#include "lieflow/rigid_body.hpp"

namespace lieflow::cli {

namespace {

using namespace lieflow::rigid;
using namespace lieflow::algebra;
namespace circ = lieflow::circle;

Eigen::MatrixXd random_rotation(Rng& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.normal_matrix(n, n));
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

SkewMatrix<double> random_unit_skew(Rng& rng, int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.normal();
      w(i, j) = v;
      w(j, i) = -v;
    }
  return SkewMatrix<double>(Eigen::MatrixXd(w / w.norm()));
}

circ::PeriodicField random_band_limited(Rng& rng, int n, int modes, double amp) {
  Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(n / 2 + 1);
  for (int m = 1; m <= modes; ++m)
    spec[m] = 0.5 * amp * std::complex<double>(rng.normal(), rng.normal()) /
              std::sqrt(static_cast<double>(m));
  return circ::from_spectrum(spec, n);
}

Eigen::VectorXd rk4_vec(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& y, double dt) {
  const Eigen::VectorXd k1 = f(y);
  const Eigen::VectorXd k2 = f(y + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = f(y + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = f(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

Eigen::VectorXd lax_spectrum(const MomentMatrix<double>& j, const SkewMatrix<double>& w) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(inertia_apply(j, w).matrix()).singularValues();
}

double ch_equivalence(Rng& rng) {
  const auto c = circ::sample(256, [](double x) { return std::cos(x); });
  double worst = (circ::ch_rhs(c) - circ::b_k(c, c, 1)).max_abs();
  for (int rep = 0; rep < 3; ++rep) {
    const auto u = random_band_limited(rng, 256, 40, 0.5);
    const auto b = circ::b_k(u, u, 1);
    worst = std::max(worst, (circ::ch_rhs(u) - b).max_abs() / std::max(1.0, b.max_abs()));
  }
  return worst;
}

double momentum_sup_drift(const std::vector<circ::GeodesicSample>& traj, int k) {
  const auto m0 = circ::momentum_k(traj.front().state, traj.front().u, k);
  double worst = 0.0;
  for (const auto& s : traj)
    worst = std::max(worst,
                     (circ::momentum_k(s.state, s.u, k) - m0).max_abs() / m0.max_abs());
  return worst;
}

}  // namespace

std::vector<Check> checks_rigid_conservation() {
  std::vector<Check> out;
  Rng rng(101);
  const double dt = 1e-3;
  for (int n : {3, 4, 5}) {
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam[i] = rng.uniform(0.5, 3.0);
    const Eigen::MatrixXd q = random_rotation(rng, n);
    MomentMatrix<double> j{Eigen::MatrixXd(q * lam.asDiagonal() * q.transpose())};
    BodyState<double> st{RotationMatrix<double>::Identity(n), random_unit_skew(rng, n), 0.0};

    const double k0 = kinetic_energy(j, st.omega);
    const Covector<double> s0 = spatial_momentum(j, st);
    const Eigen::VectorXd sig0 = lax_spectrum(j, st.omega);

    double ek = 0.0, es = 0.0, ee = 0.0;
    for (long s = 1; s <= 10000; ++s) {
      st = step(j, st, dt, StepMethod::rk4);
      if (s % 20 != 0 && s != 10000) continue;
      ek = std::max(ek, std::fabs(kinetic_energy(j, st.omega) - k0) / std::fabs(k0));
      es = std::max(es, (spatial_momentum(j, st) - s0).norm() / s0.norm());
      const Eigen::VectorXd sig = lax_spectrum(j, st.omega);
      ee = std::max(ee, ((sig - sig0).cwiseAbs().array() /
                         sig0.cwiseAbs().array().max(1.0)).maxCoeff());
    }
    const std::string tag = "n=" + std::to_string(n) + " ";
    out.push_back({tag + "kinetic energy drift over T=10", ek, 1e-7});
    out.push_back({tag + "spatial momentum drift over T=10", es, 1e-7});
    out.push_back({tag + "momentum singular value drift over T=10", ee, 1e-7});
  }
  return out;
}

std::vector<Check> checks_classical_oracle() {
  // two point masses whose classical tensor is exactly diag(1,2,3)
  const MassDistribution<double> dist({{2.0, Eigen::Vector3d(1, 0, 0)},
                                       {1.0, Eigen::Vector3d(0, 1, 0)}});
  const Eigen::Matrix3d itens = classical_inertia_3d(dist);
  const double tensor_err =
      (itens - Eigen::Matrix3d(Eigen::Vector3d(1, 2, 3).asDiagonal())).norm();
  const Eigen::Vector3d inertia = itens.diagonal();
  const MomentMatrix<double> j = moment_matrix(dist);

  const double c = 1.0 / std::sqrt(3.0);
  Eigen::VectorXd w = Eigen::Vector3d(c, c, c);
  BodyState<double> st{RotationMatrix<double>::Identity(3), hat(Eigen::Vector3d(c, c, c)), 0.0};

  auto classical = [&inertia](const Eigen::VectorXd& y) {
    Eigen::VectorXd d(3);
    d[0] = (inertia[1] - inertia[2]) / inertia[0] * y[1] * y[2];
    d[1] = (inertia[2] - inertia[0]) / inertia[1] * y[2] * y[0];
    d[2] = (inertia[0] - inertia[1]) / inertia[2] * y[0] * y[1];
    return d;
  };

  const double dt = 1e-3;
  double worst = 0.0;
  for (long s = 1; s <= 5000; ++s) {
    st = step(j, st, dt, StepMethod::rk4);
    w = rk4_vec(classical, w, dt);
    worst = std::max(worst, (vee(st.omega) - Eigen::Vector3d(w)).cwiseAbs().maxCoeff());
  }
  return {{"trajectory sup error vs classical Euler system over T=5", worst, 1e-8},
          {"point-mass tensor equals diag(1,2,3)", tensor_err, 1e-14}};
}

std::vector<Check> checks_manakov() {
  std::vector<Check> out;
  Rng rng(103);
  const int n = 4;
  Eigen::VectorXd lam(n);
  for (int i = 0; i < n; ++i) lam[i] = rng.uniform(0.5, 3.0);
  MomentMatrix<double> j{Eigen::MatrixXd(lam.asDiagonal())};
  BodyState<double> st{RotationMatrix<double>::Identity(n), random_unit_skew(rng, n), 0.0};

  std::vector<std::pair<int, int>> terms;
  for (int deg = 2; deg <= n; ++deg)
    for (int pw = deg % 2; pw < deg; pw += 2) terms.emplace_back(deg, pw);

  auto values = [&](const Covector<double>& m) {
    std::vector<double> v;
    for (const auto& [deg, pw] : terms)
      v.push_back(manakov_coefficients(j, m, deg, manakov_default_samples(deg))[pw]);
    return v;
  };

  const std::vector<double> ref = values(inertia_apply(j, st.omega));
  std::vector<double> drift(terms.size(), 0.0);
  const double dt = 1e-3;
  for (long s = 1; s <= 10000; ++s) {
    st = step(j, st, dt, StepMethod::rk4);
    if (s % 20 != 0 && s != 10000) continue;
    const auto v = values(inertia_apply(j, st.omega));
    for (std::size_t i = 0; i < v.size(); ++i)
      drift[i] = std::max(drift[i], std::fabs(v[i] - ref[i]) / std::max(1.0, std::fabs(ref[i])));
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    out.push_back({"P" + std::to_string(terms[i].first) + " lambda^" +
                       std::to_string(terms[i].second) + " drift over T=10",
                   drift[i], 1e-6});
  out.push_back({"independent integral count, n=3 (expect 2)",
                 std::fabs(static_cast<double>(manakov_count(3)) - 2.0), 0.0});
  out.push_back({"independent integral count, n=4 (expect 4)",
                 std::fabs(static_cast<double>(manakov_count(4)) - 4.0), 0.0});
  return out;
}

std::vector<Check> checks_involution() {
  MomentMatrix<double> j{Eigen::MatrixXd(Eigen::Vector4d(1.9, 1.2, 0.7, 0.3).asDiagonal())};
  const auto fields = manakov_coefficient_fields(j);
  const auto spec = so_algebra_spec(4);
  Rng rng(104);
  std::vector<AlgebraCovector<double>> samples;
  for (int i = 0; i < 10; ++i) samples.emplace_back(rng.normal_vector(6));
  std::vector<ScalarField<double>> fns;
  for (const auto& field : fields) fns.push_back(field.second);
  const auto report = involution_check(spec, fns, samples);
  return {{"max |{F_i,F_j}| over 10 random dual points", report.max_abs, 1e-5}};
}

std::vector<Check> checks_b0_closed_form() {
  Rng rng(105);
  double worst = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const auto u = random_band_limited(rng, 256, 40, 1.0);
    worst = std::max(worst,
                     (circ::b_k(u, u, 0) - u * circ::derivative(u) * (-3.0)).max_abs());
  }
  return {{"B_0(u,u) vs -3 u u_x on band-limited fields", worst, 1e-12}};
}

std::vector<Check> checks_burgers_oracle() {
  const auto u0 = circ::sample(256, [](double x) { return 0.1 * std::sin(x); });
  const double tend = 0.5 * circ::breaking_time(u0);
  const long steps = std::lround(tend / 1e-3);
  const double dt = tend / static_cast<double>(steps);
  circ::PeriodicField u = u0;
  for (long s = 0; s < steps; ++s)
    u = circ::euler_hk_step(u, 0, dt, circ::TimeScheme::rk4, true, s);
  const double sup = (u - circ::burgers_exact(u0, tend)).max_abs();

  const auto steep = circ::sample(256, [](double x) { return -std::sin(x); });
  const double tb = std::fabs(circ::breaking_time(steep) - 1.0 / 3.0);
  return {{"spectral vs characteristics at half breaking time", sup, 1e-6},
          {"breaking time of -sin x vs 1/3", tb, 1e-10}};
}

std::vector<Check> checks_camassa_holm() {
  Rng rng(107);
  const double equiv = ch_equivalence(rng);

  const auto u0 = circ::sample(256, [](double x) { return 0.5 * std::cos(x); });
  circ::GeodesicOptions opts;
  opts.stride = 40;
  const auto traj = circ::geodesic_flow(u0, 1, 2.0, 5e-4, opts);
  const double e0 = circ::hk_energy(traj.front().u, 1);
  double energy = 0.0;
  for (const auto& s : traj)
    energy = std::max(energy, std::fabs(circ::hk_energy(s.u, 1) - e0) / e0);
  const double momentum = momentum_sup_drift(traj, 1);

  return {{"explicit rhs vs B_1 pointwise", equiv, 1e-10},
          {"H^1 energy drift, u0=0.5 cos x, T=2, N=256, dt=5e-4", energy, 1e-6},
          {"m_1 sup drift, u0=0.5 cos x, T=2, N=256, dt=5e-4", momentum, 1e-6}};
}

std::vector<Check> checks_lagrangian_momentum() {
  const auto w0 = circ::sample(256, [](double x) { return 0.1 * std::sin(x); });
  circ::GeodesicOptions opts;
  opts.stride = 100;
  const auto traj0 = circ::geodesic_flow(w0, 0, 0.5 * circ::breaking_time(w0), 1e-3, opts);
  const double drift0 = momentum_sup_drift(traj0, 0);

  const auto u0 = circ::sample(256, [](double x) { return 0.5 * std::cos(x); });
  opts.stride = 40;
  const auto traj1 = circ::geodesic_flow(u0, 1, 2.0, 5e-4, opts);
  const double drift1 = momentum_sup_drift(traj1, 1);

  return {{"m_0 sup drift, u0=0.1 sin x, to half breaking time", drift0, 1e-6},
          {"m_1 sup drift, u0=0.5 cos x, T=2, N=256, dt=5e-4", drift1, 1e-6}};
}

std::vector<Check> checks_exponential_map() {
  const int n = 256;
  std::vector<circ::PeriodicField> dirs;
  dirs.push_back(circ::sample(n, [](double x) { return std::cos(x); }));
  dirs.push_back(circ::sample(n, [](double x) { return std::sin(2 * x); }));
  dirs.push_back(circ::sample(n, [](double x) { return std::cos(3 * x); }));
  const auto probes = circ::dexp_at_zero(1, dirs);
  double probe = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    probe = std::max(probe, (probes[i] - dirs[i]).max_abs());

  const double zero = circ::riemannian_exp(circ::PeriodicField::Zero(n), 1).psi.max_abs();

  const auto u0 = circ::sample(n, [](double x) { return 0.5 * std::cos(x); });
  circ::GeodesicOptions opts;
  opts.stride = 250;
  const auto traj = circ::geodesic_flow(u0, 1, 1.0, 1e-3, opts);
  double ray = 0.0;
  for (const auto& s : traj) {
    if (s.state.t == 0.0) continue;
    ray = std::max(ray,
                   (circ::riemannian_exp(u0 * s.state.t, 1).psi - s.state.psi).max_abs());
  }
  return {{"derivative probes at zero vs identity, modes 1..3", probe, 1e-5},
          {"exp(0) displacement (exact zero required)", zero, 0.0},
          {"ray property sup error at quarters of t=1", ray, 1e-7}};
}

std::vector<Check> checks_generic_cross_check() {
  std::vector<Check> out;
  Rng rng(110);
  const double dt = 1e-3;
  for (int n : {3, 4}) {
    const auto spec = so_algebra_spec(n);
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam[i] = rng.uniform(0.5, 2.0);
    MomentMatrix<double> j{Eigen::MatrixXd(lam.asDiagonal())};
    const auto a = so_inertia_map(j);
    const auto w0 = random_unit_skew(rng, n);

    BodyState<double> st{RotationMatrix<double>::Identity(n), w0, 0.0};
    Eigen::VectorXd m = so_coordinates(inertia_apply(j, w0));
    auto f = [&](const Eigen::VectorXd& y) {
      return dual_euler_arnold_rhs(spec, a, AlgebraCovector<double>(y)).coords;
    };
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      st = step(j, st, dt, StepMethod::rk4);
      m = rk4_vec(f, m, dt);
      worst = std::max(worst, (so_coordinates(st.omega) - a.solve(m)).norm());
    }
    out.push_back({"n=" + std::to_string(n) + " dual-coordinate trajectory mismatch over T=1",
                   worst, 1e-9});
  }
  return out;
}

std::vector<Check> checks_circle_conservation() {
  std::vector<Check> out;
  const int n = 256;
  const double dt = 5e-4;
  for (int k : {0, 1, 2}) {
    circ::PeriodicField u = (k == 0)
                                ? circ::sample(n, [](double x) { return 0.1 * std::sin(x); })
                                : circ::sample(n, [](double x) { return 0.5 * std::cos(x); });
    const double e0 = circ::hk_energy(u, k);
    double worst = 0.0;
    for (long s = 0; s < 4000; ++s) {
      u = circ::euler_hk_step(u, k, dt, circ::TimeScheme::rk4, true, s);
      worst = std::max(worst, std::fabs(circ::hk_energy(u, k) - e0) / std::fabs(e0));
    }
    out.push_back({"H^" + std::to_string(k) + " energy drift over T=2", worst, 1e-7});
  }

  // momentum over windows the 256-point grid still resolves
  const auto u0 = circ::sample(n, [](double x) { return 0.5 * std::cos(x); });
  circ::GeodesicOptions opts;
  opts.stride = 60;
  const auto traj1 = circ::geodesic_flow(u0, 1, 1.2, dt, opts);
  out.push_back({"m_1 sup drift, u0=0.5 cos x, to t=1.2", momentum_sup_drift(traj1, 1), 1e-6});

  const auto w0 = circ::sample(n, [](double x) { return 0.1 * std::sin(x); });
  opts.stride = 100;
  const auto traj0 = circ::geodesic_flow(w0, 0, 0.5 * circ::breaking_time(w0), 1e-3, opts);
  out.push_back({"m_0 sup drift, u0=0.1 sin x, to half breaking time",
                 momentum_sup_drift(traj0, 0), 1e-6});

  Rng rng(111);
  out.push_back({"explicit rhs vs B_1 pointwise", ch_equivalence(rng), 1e-10});
  return out;
}

}  // namespace lieflow::cli
