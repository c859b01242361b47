#include "lieflow/circle_diff.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace lieflow::circle {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": grid mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

// normalized half spectrum, c_m = (1/N) sum_j u_j exp(-i m x_j)
Eigen::VectorXcd fwd_raw(const Eigen::VectorXd& u) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  Eigen::VectorXcd spec;
  fft.fwd(spec, u);
  spec /= static_cast<double>(u.size());
  return spec;
}

Eigen::VectorXd inv_raw(Eigen::VectorXcd spec, Eigen::Index n) {
  spec *= static_cast<double>(n);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  Eigen::VectorXd out;
  fft.inv(out, spec, n);
  return out;
}

double ak_multiplier(Eigen::Index mode, int k) {
  const double xi2 = static_cast<double>(mode) * static_cast<double>(mode);
  double sum = 1.0;
  double pw = 1.0;
  for (int i = 0; i < k; ++i) {
    pw *= xi2;
    sum += pw;
  }
  return sum;
}

Eigen::VectorXd apply_ak_raw(const Eigen::VectorXd& u, int k) {
  if (k == 0) return u;
  Eigen::VectorXcd spec = fwd_raw(u);
  for (Eigen::Index m = 0; m < spec.size(); ++m) spec[m] *= ak_multiplier(m, k);
  return inv_raw(std::move(spec), u.size());
}

Eigen::VectorXd invert_ak_raw(const Eigen::VectorXd& u, int k) {
  if (k == 0) return u;
  Eigen::VectorXcd spec = fwd_raw(u);
  for (Eigen::Index m = 0; m < spec.size(); ++m) spec[m] /= ak_multiplier(m, k);
  return inv_raw(std::move(spec), u.size());
}

Eigen::VectorXd derivative_raw(const Eigen::VectorXd& u) {
  Eigen::VectorXcd spec = fwd_raw(u);
  for (Eigen::Index m = 0; m < spec.size(); ++m)
    spec[m] *= std::complex<double>(0.0, static_cast<double>(m));
  spec[spec.size() - 1] = 0.0;  // odd multiplier kills the unpaired Nyquist mode
  return inv_raw(std::move(spec), u.size());
}

Eigen::VectorXd truncate_raw(const Eigen::VectorXd& u) {
  Eigen::VectorXcd spec = fwd_raw(u);
  const Eigen::Index cutoff = u.size() / 3;
  for (Eigen::Index m = cutoff + 1; m < spec.size(); ++m) spec[m] = 0.0;
  return inv_raw(std::move(spec), u.size());
}

Eigen::VectorXd bk_raw(const Eigen::VectorXd& u, const Eigen::VectorXd& v, int k,
                       bool dealias) {
  const Eigen::VectorXd ut = dealias ? truncate_raw(u) : u;
  const Eigen::VectorXd vt = dealias ? truncate_raw(v) : v;
  const Eigen::VectorXd au = apply_ak_raw(ut, k);
  const Eigen::VectorXd aux = apply_ak_raw(derivative_raw(ut), k);
  const Eigen::VectorXd vx = derivative_raw(vt);
  Eigen::VectorXd quad = 2.0 * vx.cwiseProduct(au) + vt.cwiseProduct(aux);
  if (dealias) quad = truncate_raw(quad);
  return -invert_ak_raw(quad, k);
}

double eval_spec(const Eigen::VectorXcd& spec, double x) {
  const Eigen::Index half = spec.size() - 1;
  const std::complex<double> z(std::cos(x), std::sin(x));
  std::complex<double> zm = z;
  double acc = spec[0].real();
  for (Eigen::Index m = 1; m < half; ++m) {
    acc += 2.0 * (spec[m] * zm).real();
    zm *= z;
  }
  acc += (spec[half] * zm).real();
  return acc;
}

Eigen::VectorXd eval_spec_many(const Eigen::VectorXcd& spec, const Eigen::VectorXd& pts) {
  const Eigen::Index half = spec.size() - 1;
  Eigen::ArrayXcd z(pts.size());
  for (Eigen::Index j = 0; j < pts.size(); ++j) z[j] = std::polar(1.0, pts[j]);
  Eigen::ArrayXcd zm = z;
  Eigen::ArrayXd acc = Eigen::ArrayXd::Constant(pts.size(), spec[0].real());
  for (Eigen::Index m = 1; m < half; ++m) {
    acc += 2.0 * (spec[m] * zm).real();
    zm *= z;
  }
  acc += (spec[half] * zm).real();
  return acc.matrix();
}

Eigen::VectorXd grid_raw(Eigen::Index n) {
  Eigen::VectorXd x(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
  return x;
}

// solves f(y) = y + offset(y) - target = 0 for the strictly increasing map
// y + offset(y); the initial bracket is a hint and gets widened if the
// interpolant peaks between grid nodes, past the sampled max
double bisect_monotone(const Eigen::VectorXcd& offset_spec, double target, double lo,
                       double hi) {
  const double width = hi - lo;
  for (int g = 0; g < 100 && lo + eval_spec(offset_spec, lo) - target > 0.0; ++g)
    lo -= width;
  for (int g = 0; g < 100 && hi + eval_spec(offset_spec, hi) - target < 0.0; ++g)
    hi += width;
  for (int it = 0; it < 260 && hi - lo > 1e-15 * (1.0 + std::abs(target)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid + eval_spec(offset_spec, mid) - target;
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PeriodicField::PeriodicField(Eigen::VectorXd values) : values_(std::move(values)) {
  const Eigen::Index n = values_.size();
  if (n < 16 || (n & (n - 1)) != 0)
    throw InvalidArgument("PeriodicField: grid size must be a power of two >= 16, got " +
                          std::to_string(n));
  if (!values_.allFinite()) throw InvalidArgument("PeriodicField: values must be finite");
}

PeriodicField PeriodicField::Zero(Eigen::Index n) {
  return PeriodicField(Eigen::VectorXd::Zero(n));
}

PeriodicField PeriodicField::Constant(Eigen::Index n, double value) {
  return PeriodicField(Eigen::VectorXd::Constant(n, value));
}

PeriodicField PeriodicField::operator+(const PeriodicField& o) const {
  check_size(size(), o.size(), "PeriodicField::operator+");
  return PeriodicField(values_ + o.values_);
}

PeriodicField PeriodicField::operator-(const PeriodicField& o) const {
  check_size(size(), o.size(), "PeriodicField::operator-");
  return PeriodicField(values_ - o.values_);
}

PeriodicField PeriodicField::operator-() const { return PeriodicField(-values_); }

PeriodicField PeriodicField::operator*(double s) const { return PeriodicField(values_ * s); }

PeriodicField PeriodicField::operator*(const PeriodicField& o) const {
  check_size(size(), o.size(), "PeriodicField::operator*");
  return PeriodicField(values_.cwiseProduct(o.values_));
}

Eigen::VectorXd grid(Eigen::Index n) { return grid_raw(n); }

PeriodicField sample(Eigen::Index n, const std::function<double(double)>& f) {
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j)
    v[j] = f(two_pi * static_cast<double>(j) / static_cast<double>(n));
  return PeriodicField(std::move(v));
}

MetricOrder::MetricOrder(int k_) : k(k_) {
  if (k < 0 || k > 3)
    throw InvalidArgument("MetricOrder: k must be in {0, 1, 2, 3}, got " + std::to_string(k));
}

Eigen::VectorXcd to_spectrum(const PeriodicField& u) { return fwd_raw(u.values()); }

PeriodicField from_spectrum(const Eigen::VectorXcd& spec, Eigen::Index n) {
  if (spec.size() != n / 2 + 1)
    throw DimensionError("from_spectrum: expected " + std::to_string(n / 2 + 1) +
                         " modes for grid size " + std::to_string(n) + ", got " +
                         std::to_string(spec.size()));
  return PeriodicField(inv_raw(spec, n));
}

PeriodicField derivative(const PeriodicField& u) {
  return PeriodicField(derivative_raw(u.values()));
}

PeriodicField truncate_two_thirds(const PeriodicField& u) {
  return PeriodicField(truncate_raw(u.values()));
}

PeriodicField oversample(const PeriodicField& u, int factor) {
  if (factor < 1 || (factor & (factor - 1)) != 0)
    throw InvalidArgument("oversample: factor must be a power of two >= 1");
  if (factor == 1) return u;
  const Eigen::Index n = u.size();
  const Eigen::Index m = n * factor;
  const Eigen::VectorXcd spec = fwd_raw(u.values());
  Eigen::VectorXcd big = Eigen::VectorXcd::Zero(m / 2 + 1);
  big.head(spec.size()) = spec;
  big[spec.size() - 1] *= 0.5;  // the Nyquist bin splits across +/- N/2 once interior
  return PeriodicField(inv_raw(std::move(big), m));
}

Eigen::VectorXd eval_at(const PeriodicField& u, const Eigen::VectorXd& points) {
  return eval_spec_many(fwd_raw(u.values()), points);
}

double eval_at(const PeriodicField& u, double point) {
  return eval_spec(fwd_raw(u.values()), point);
}

PeriodicField compose(const PeriodicField& u, const PeriodicField& psi) {
  check_size(u.size(), psi.size(), "compose");
  const Eigen::VectorXd pts = grid_raw(psi.size()) + psi.values();
  return PeriodicField(eval_spec_many(fwd_raw(u.values()), pts));
}

PeriodicField invert_displacement(const PeriodicField& psi) {
  const Eigen::VectorXd slope = derivative_raw(psi.values());
  if (1.0 + slope.minCoeff() <= 0.0)
    throw InvalidArgument("invert_displacement: id + psi is not a diffeomorphism");
  const Eigen::VectorXcd spec = fwd_raw(psi.values());
  const double bound = psi.max_abs() + 1e-9;
  const Eigen::Index n = psi.size();
  const Eigen::VectorXd x = grid_raw(n);
  Eigen::VectorXd eta(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double y = bisect_monotone(spec, x[j], x[j] - bound, x[j] + bound);
    eta[j] = y - x[j];
  }
  return PeriodicField(std::move(eta));
}

double integral(const PeriodicField& u) {
  return u.values().sum() * two_pi / static_cast<double>(u.size());
}

double l2_inner(const PeriodicField& a, const PeriodicField& b) {
  check_size(a.size(), b.size(), "l2_inner");
  return a.values().dot(b.values()) * two_pi / static_cast<double>(a.size());
}

double hk_inner(const PeriodicField& a, const PeriodicField& b, MetricOrder k) {
  return l2_inner(apply_Ak(a, k), b);
}

double hk_energy(const PeriodicField& u, MetricOrder k) {
  return 0.5 * hk_inner(u, u, k);
}

PeriodicField vect_bracket(const PeriodicField& v, const PeriodicField& w) {
  check_size(v.size(), w.size(), "vect_bracket");
  return v * derivative(w) - derivative(v) * w;
}

PeriodicField apply_Ak(const PeriodicField& u, MetricOrder k) {
  return k.k == 0 ? u : PeriodicField(apply_ak_raw(u.values(), k.k));
}

PeriodicField invert_Ak(const PeriodicField& m, MetricOrder k) {
  return k.k == 0 ? m : PeriodicField(invert_ak_raw(m.values(), k.k));
}

PeriodicField b_k(const PeriodicField& u, const PeriodicField& v, MetricOrder k,
                  bool dealias) {
  check_size(u.size(), v.size(), "b_k");
  return PeriodicField(bk_raw(u.values(), v.values(), k.k, dealias));
}

PeriodicField ch_rhs(const PeriodicField& u) {
  const Eigen::VectorXd ux = derivative_raw(u.values());
  const Eigen::VectorXd quad = u.values().cwiseProduct(u.values()) + 0.5 * ux.cwiseProduct(ux);
  Eigen::VectorXcd spec = fwd_raw(quad);
  for (Eigen::Index m = 0; m < spec.size(); ++m) {
    const double mm = static_cast<double>(m);
    spec[m] *= std::complex<double>(0.0, mm) / (1.0 + mm * mm);
  }
  spec[spec.size() - 1] = 0.0;
  const Eigen::VectorXd tail = inv_raw(std::move(spec), u.size());
  return PeriodicField(-(u.values().cwiseProduct(ux) + tail));
}

PeriodicField q_k(const PeriodicField& w, MetricOrder k) {
  return b_k(w, w, k) + w * derivative(w);
}

PeriodicField euler_hk_step(const PeriodicField& u, MetricOrder k, double dt,
                            TimeScheme scheme, bool dealias, long step_index) {
  if (dt <= 0.0) throw InvalidArgument("euler_hk_step: dt must be positive");
  (void)scheme;  // rk4 is the only scheme
  const Eigen::VectorXd& y = u.values();
  const Eigen::VectorXd k1 = bk_raw(y, y, k.k, dealias);
  const Eigen::VectorXd y2 = y + 0.5 * dt * k1;
  const Eigen::VectorXd k2 = bk_raw(y2, y2, k.k, dealias);
  const Eigen::VectorXd y3 = y + 0.5 * dt * k2;
  const Eigen::VectorXd k3 = bk_raw(y3, y3, k.k, dealias);
  const Eigen::VectorXd y4 = y + dt * k3;
  const Eigen::VectorXd k4 = bk_raw(y4, y4, k.k, dealias);
  Eigen::VectorXd out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.allFinite())
    throw BlowUpError("euler_hk_step: non-finite values at step " + std::to_string(step_index),
                      step_index);
  return PeriodicField(std::move(out));
}

PeriodicField burgers_exact(const PeriodicField& u0, double t) {
  if (t < 0.0) throw InvalidArgument("burgers_exact: t must be nonnegative");
  const double tb = breaking_time(u0);
  if (t >= tb)
    throw ShockError("burgers_exact: t = " + std::to_string(t) +
                         " is at or beyond the breaking time " + std::to_string(tb),
                     tb);
  const Eigen::VectorXcd spec = fwd_raw(u0.values());
  const double amp = oversample(u0, 4).max_abs() * (1.0 + 1e-9) + 1e-12;
  const double reach = 3.0 * t * amp + 1e-9;
  const Eigen::Index n = u0.size();
  const Eigen::VectorXd x = grid_raw(n);
  Eigen::VectorXd u(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // root of x0 + 3 t u0(x0) = x_j; increasing in x0 while t < breaking time
    double lo = x[j] - reach;
    double hi = x[j] + reach;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(x[j])); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid + 3.0 * t * eval_spec(spec, mid) < x[j])
        lo = mid;
      else
        hi = mid;
    }
    u[j] = eval_spec(spec, 0.5 * (lo + hi));
  }
  return PeriodicField(std::move(u));
}

double breaking_time(const PeriodicField& u0) {
  const double min_slope = oversample(derivative(u0), 4).values().minCoeff();
  const double scale = std::max(1.0, u0.max_abs());
  if (min_slope >= -1e-13 * scale) return std::numeric_limits<double>::infinity();
  return -1.0 / (3.0 * min_slope);
}

std::vector<GeodesicSample> geodesic_flow(const PeriodicField& u0, MetricOrder k, double T,
                                          double dt, const GeodesicOptions& opts) {
  if (dt <= 0.0) throw InvalidArgument("geodesic_flow: dt must be positive");
  if (T < 0.0) throw InvalidArgument("geodesic_flow: T must be nonnegative");
  if (opts.stride < 1) throw InvalidArgument("geodesic_flow: stride must be >= 1");
  (void)opts.scheme;
  const Eigen::Index n = u0.size();
  const Eigen::VectorXd x = grid_raw(n);
  Eigen::VectorXd u = u0.values();
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);

  const auto take_sample = [&](double time) {
    Eigen::VectorXd v = eval_spec_many(fwd_raw(u), x + psi);
    return GeodesicSample{FlowMapState{PeriodicField(psi), PeriodicField(std::move(v)), time},
                          PeriodicField(u)};
  };

  std::vector<GeodesicSample> out;
  out.push_back(take_sample(0.0));
  const long nsteps = static_cast<long>(std::ceil(T / dt - 1e-9));
  double t = 0.0;
  for (long s = 1; s <= nsteps; ++s) {
    const double h = std::min(dt, T - t);
    const Eigen::VectorXd k1u = bk_raw(u, u, k.k, opts.dealias);
    const Eigen::VectorXd k1p = eval_spec_many(fwd_raw(u), x + psi);
    const Eigen::VectorXd u2 = u + 0.5 * h * k1u;
    const Eigen::VectorXd p2 = psi + 0.5 * h * k1p;
    const Eigen::VectorXd k2u = bk_raw(u2, u2, k.k, opts.dealias);
    const Eigen::VectorXd k2p = eval_spec_many(fwd_raw(u2), x + p2);
    const Eigen::VectorXd u3 = u + 0.5 * h * k2u;
    const Eigen::VectorXd p3 = psi + 0.5 * h * k2p;
    const Eigen::VectorXd k3u = bk_raw(u3, u3, k.k, opts.dealias);
    const Eigen::VectorXd k3p = eval_spec_many(fwd_raw(u3), x + p3);
    const Eigen::VectorXd u4 = u + h * k3u;
    const Eigen::VectorXd p4 = psi + h * k3p;
    const Eigen::VectorXd k4u = bk_raw(u4, u4, k.k, opts.dealias);
    const Eigen::VectorXd k4p = eval_spec_many(fwd_raw(u4), x + p4);
    u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    psi += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    t = (s == nsteps) ? T : t + h;
    if (!u.allFinite() || !psi.allFinite())
      throw BlowUpError("geodesic_flow: non-finite state at t = " + std::to_string(t), s);
    const double min_phix = 1.0 + derivative_raw(psi).minCoeff();
    if (min_phix <= opts.eps_diffeo)
      throw DiffeoLossError("geodesic_flow: min phi_x = " + std::to_string(min_phix) +
                                " at t = " + std::to_string(t),
                            t);
    if (s % opts.stride == 0 || s == nsteps) out.push_back(take_sample(t));
  }
  return out;
}

PeriodicField p0_rhs(const FlowMapState& state) {
  check_size(state.psi.size(), state.v.size(), "p0_rhs");
  const Eigen::VectorXd phix =
      (1.0 + derivative_raw(state.psi.values()).array()).matrix();
  if (phix.minCoeff() <= 0.0)
    throw DiffeoLossError("p0_rhs: phi_x must stay positive", state.t);
  const Eigen::VectorXd vx = derivative_raw(state.v.values());
  return PeriodicField(
      (-2.0 * state.v.values().array() * vx.array() / phix.array()).matrix());
}

PeriodicField momentum_k(const FlowMapState& state, const PeriodicField& u, MetricOrder k,
                         double consistency_tol) {
  check_size(state.psi.size(), u.size(), "momentum_k");
  check_size(state.psi.size(), state.v.size(), "momentum_k");
  const Eigen::VectorXd warped = grid_raw(u.size()) + state.psi.values();
  const Eigen::VectorXd ucomp = eval_spec_many(fwd_raw(u.values()), warped);
  const double scale = std::max(1.0, state.v.max_abs());
  if ((ucomp - state.v.values()).cwiseAbs().maxCoeff() > consistency_tol * scale)
    throw ConsistencyError("momentum_k: v does not match u composed with the flow map");
  const Eigen::VectorXd acomp = eval_spec_many(fwd_raw(apply_ak_raw(u.values(), k.k)), warped);
  const Eigen::VectorXd phix = (1.0 + derivative_raw(state.psi.values()).array()).matrix();
  return PeriodicField(acomp.cwiseProduct(phix.cwiseProduct(phix)));
}

FlowMapState riemannian_exp(const PeriodicField& u0, MetricOrder k, double dt) {
  GeodesicOptions opts;
  opts.stride = std::numeric_limits<long>::max();
  try {
    return geodesic_flow(u0, k, 1.0, dt, opts).back().state;
  } catch (const BlowUpError& e) {
    throw OutOfDomainError(std::string("riemannian_exp: geodesic left the group "
                                       "before time one: ") +
                           e.what());
  } catch (const DiffeoLossError& e) {
    throw OutOfDomainError(std::string("riemannian_exp: geodesic left the group "
                                       "before time one: ") +
                           e.what());
  }
}

std::vector<PeriodicField> dexp_at_zero(MetricOrder k,
                                        const std::vector<PeriodicField>& directions,
                                        double h) {
  if (h <= 0.0) throw InvalidArgument("dexp_at_zero: h must be positive");
  std::vector<PeriodicField> probes;
  probes.reserve(directions.size());
  for (const PeriodicField& w : directions) {
    const FlowMapState plus = riemannian_exp(w * h, k);
    const FlowMapState minus = riemannian_exp(w * (-h), k);
    probes.push_back((plus.psi - minus.psi) * (1.0 / (2.0 * h)));
  }
  return probes;
}

}  // namespace lieflow::circle
