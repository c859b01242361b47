#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "lieflow/errors.hpp"

namespace lieflow::circle {

/// Real 2*pi-periodic field sampled at the uniform nodes x_j = 2*pi*j/N.
/// N must be a power of two >= 16 so the transforms stay fast and the
/// grids refine by doubling; values must be finite.
class PeriodicField {
 public:
  explicit PeriodicField(Eigen::VectorXd values);

  static PeriodicField Zero(Eigen::Index n);
  static PeriodicField Constant(Eigen::Index n, double value);

  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](Eigen::Index j) const { return values_[j]; }
  double max_abs() const { return values_.cwiseAbs().maxCoeff(); }

  PeriodicField operator+(const PeriodicField& o) const;
  PeriodicField operator-(const PeriodicField& o) const;
  PeriodicField operator-() const;
  PeriodicField operator*(double s) const;
  friend PeriodicField operator*(double s, const PeriodicField& f) { return f * s; }
  /// Pointwise product on the shared grid.
  PeriodicField operator*(const PeriodicField& o) const;

 private:
  Eigen::VectorXd values_;
};

/// Grid nodes x_j = 2*pi*j/N.
Eigen::VectorXd grid(Eigen::Index n);

/// Sample a function of x on the uniform grid.
PeriodicField sample(Eigen::Index n, const std::function<double(double)>& f);

/// Order of the H^k metric. The multipliers grow like xi^{2k}, so double
/// precision limits support to k in {0, 1, 2, 3}.
struct MetricOrder {
  int k;
  MetricOrder(int k);  // implicit on purpose: operations accept plain ints
};

/// Lagrangian state of the flow: the circle map phi(x) = x + psi(x) stored
/// through its periodic displacement psi (winding number one), its time
/// derivative v = phi_t, and the current time.
struct FlowMapState {
  PeriodicField psi;
  PeriodicField v;
  double t = 0.0;
};

/// Normalized half spectrum c_m = (1/N) sum_j u_j exp(-i m x_j), m = 0..N/2.
Eigen::VectorXcd to_spectrum(const PeriodicField& u);

/// Inverse of to_spectrum; spec must have N/2 + 1 entries.
PeriodicField from_spectrum(const Eigen::VectorXcd& spec, Eigen::Index n);

/// Spectral derivative du/dx (the Nyquist mode maps to zero).
PeriodicField derivative(const PeriodicField& u);

/// Zero every mode with xi > N/3 (the 2/3 dealiasing rule).
PeriodicField truncate_two_thirds(const PeriodicField& u);

/// Band-limited interpolation onto a grid refined by `factor` (a power of two).
PeriodicField oversample(const PeriodicField& u, int factor);

/// Evaluate the trigonometric interpolant at arbitrary points.
Eigen::VectorXd eval_at(const PeriodicField& u, const Eigen::VectorXd& points);
double eval_at(const PeriodicField& u, double point);

/// u(x + psi(x)) on the grid of psi: composition with the circle map
/// phi = id + psi by trigonometric summation, exact for band-limited u.
PeriodicField compose(const PeriodicField& u, const PeriodicField& psi);

/// Displacement eta of the inverse map, (id + psi)^{-1} = id + eta,
/// solved per node by bracketed bisection. Requires 1 + psi_x > 0.
PeriodicField invert_displacement(const PeriodicField& psi);

/// Integral over one period, (2*pi/N) * sum (exact for trigonometric data).
double integral(const PeriodicField& u);

/// L2 pairing (2*pi/N) * sum a_j b_j.
double l2_inner(const PeriodicField& a, const PeriodicField& b);

/// H^k inner product <A_k a, b>_{L2}.
double hk_inner(const PeriodicField& a, const PeriodicField& b, MetricOrder k);

/// Kinetic energy (1/2) <u,u>_k of the H^k metric.
double hk_energy(const PeriodicField& u, MetricOrder k);

/// Bracket of vector fields on the circle, [v,w] = -(v_x w - v w_x).
PeriodicField vect_bracket(const PeriodicField& v, const PeriodicField& w);

/// Fourier multiplier sum_{i<=k} xi^{2i}, the operator of the H^k metric.
/// k = 0 is the identity.
PeriodicField apply_Ak(const PeriodicField& u, MetricOrder k);

/// Inverse multiplier; apply_Ak then invert_Ak reproduces the input.
PeriodicField invert_Ak(const PeriodicField& m, MetricOrder k);

/// Geodesic operator of the right-invariant H^k metric,
/// B_k(u,v) = -A_k^{-1}(2 v_x A_k(u) + v A_k(u_x)).
PeriodicField b_k(const PeriodicField& u, const PeriodicField& v, MetricOrder k,
                  bool dealias = false);

/// Camassa-Holm right-hand side
/// -u u_x - d/dx (1 - d^2/dx^2)^{-1}(u^2 + u_x^2/2); equals b_k(u,u,1).
PeriodicField ch_rhs(const PeriodicField& u);

/// Quadratic form Q_k(w) = B_k(w,w) + w w_x of the Lagrangian formulation.
PeriodicField q_k(const PeriodicField& w, MetricOrder k);

enum class TimeScheme { rk4 };

/// One explicit step of u_t = B_k(u,u); dealiasing of the quadratic terms
/// is on by default. Non-finite values raise BlowUpError tagged with
/// `step_index`.
PeriodicField euler_hk_step(const PeriodicField& u, MetricOrder k, double dt,
                            TimeScheme scheme = TimeScheme::rk4,
                            bool dealias = true, long step_index = 0);

/// Solution of u_t + 3 u u_x = 0 by characteristics: solves
/// x0 + 3 u0(x0) t = x per grid node (monotone before breaking, bracketed
/// bisection) and returns u(x) = u0(x0). Valid for 0 <= t < breaking time.
PeriodicField burgers_exact(const PeriodicField& u0, double t);

/// First wave-breaking time -1/(3 min u0'), +infinity when the minimum
/// slope is nonnegative (constants). Minimum taken on a 4x refined grid.
double breaking_time(const PeriodicField& u0);

struct GeodesicOptions {
  TimeScheme scheme = TimeScheme::rk4;
  bool dealias = true;
  double eps_diffeo = 1e-6;  // min phi_x at or below this is diffeomorphism loss
  long stride = 1;           // keep every stride-th step in the trajectory
};

struct GeodesicSample {
  FlowMapState state;
  PeriodicField u;
};

/// Geodesic with initial velocity u0: u advances by u_t = B_k(u,u) and the
/// flow map by phi_t = u o phi, coupled in a single rk4 system. The
/// trajectory holds the initial state, every stride-th step, and the final
/// step. v is stored as u o phi at each sample.
std::vector<GeodesicSample> geodesic_flow(const PeriodicField& u0, MetricOrder k,
                                          double T, double dt,
                                          const GeodesicOptions& opts = {});

/// Lagrangian k = 0 right-hand side P_0(phi, v) = -2 v v_x / phi_x.
PeriodicField p0_rhs(const FlowMapState& state);

/// Conserved momentum m_k = A_k(u) o phi * phi_x^2. The state must satisfy
/// v = u o phi within consistency_tol (sup norm, relative).
PeriodicField momentum_k(const FlowMapState& state, const PeriodicField& u,
                         MetricOrder k, double consistency_tol = 1e-6);

/// Riemannian exponential exp(u0) = phi(1; u0). Blow-up or diffeomorphism
/// loss before time one becomes OutOfDomainError.
FlowMapState riemannian_exp(const PeriodicField& u0, MetricOrder k,
                            double dt = 1e-3);

/// Central-difference probe (exp(h w) - exp(-h w)) / (2h) of the derivative
/// of the exponential at zero, one displacement field per direction.
std::vector<PeriodicField> dexp_at_zero(MetricOrder k,
                                        const std::vector<PeriodicField>& directions,
                                        double h = 1e-4);

}  // namespace lieflow::circle
