#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lieflow/errors.hpp"
#include "lieflow/so_n.hpp"

namespace lieflow::rigid {

template <typename Scalar = double>
struct MassAtom {
  Scalar mass;
  Eigen::VectorX<Scalar> position;
};

/// Finite list of point masses. Continuous densities are out of scope;
/// they enter only through a user-supplied moment matrix.
template <typename Scalar = double>
class MassDistribution {
 public:
  explicit MassDistribution(std::vector<MassAtom<Scalar>> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw InvalidArgument("MassDistribution: no atoms");
    const Eigen::Index n = atoms_.front().position.size();
    if (n < 2) throw DimensionError("MassDistribution: ambient dimension must be >= 2");
    for (const auto& a : atoms_) {
      if (!(a.mass > Scalar(0))) throw InvalidArgument("MassDistribution: masses must be positive");
      if (a.position.size() != n)
        throw DimensionError("MassDistribution: atoms live in different dimensions");
    }
  }

  const std::vector<MassAtom<Scalar>>& atoms() const { return atoms_; }
  Eigen::Index dim() const { return atoms_.front().position.size(); }

 private:
  std::vector<MassAtom<Scalar>> atoms_;
};

/// Second-moment matrix J of a mass distribution, J_ij = sum m x_i x_j.
/// Symmetrized on ingestion and eigendecomposed once; the factorization
/// backs the inertia solve and the Manakov matrices.
template <typename Scalar = double>
class MomentMatrix {
 public:
  using MatrixType = Eigen::MatrixX<Scalar>;

  template <typename Derived>
  explicit MomentMatrix(const Eigen::MatrixBase<Derived>& raw) {
    if (raw.rows() != raw.cols()) throw DimensionError("MomentMatrix: input must be square");
    if (raw.rows() < 2) throw DimensionError("MomentMatrix: dimension must be >= 2");
    j_ = (raw.derived() + raw.derived().transpose()) / Scalar(2);
    if (!j_.allFinite()) throw InvalidArgument("MomentMatrix: non-finite entries");
    Eigen::SelfAdjointEigenSolver<MatrixType> es(j_);
    if (es.info() != Eigen::Success)
      throw InvalidArgument("MomentMatrix: eigendecomposition failed");
    lambda_ = es.eigenvalues();
    v_ = es.eigenvectors();
    const Scalar scale = std::max(Scalar(1), lambda_.cwiseAbs().maxCoeff());
    if (lambda_.minCoeff() < Scalar(-1e-10) * scale)
      throw InvalidArgument("MomentMatrix: not positive semi-definite");
    j2_ = j_ * j_;
  }

  Eigen::Index dim() const { return j_.rows(); }
  const MatrixType& matrix() const { return j_; }
  const MatrixType& squared() const { return j2_; }
  const Eigen::VectorX<Scalar>& eigenvalues() const { return lambda_; }
  const MatrixType& eigenvectors() const { return v_; }

 private:
  MatrixType j_;
  MatrixType j2_;
  Eigen::VectorX<Scalar> lambda_;
  MatrixType v_;
};

/// Configuration and body angular velocity of the free rigid body.
template <typename Scalar = double>
struct BodyState {
  RotationMatrix<Scalar> g;
  SkewMatrix<Scalar> omega;
  Scalar time = Scalar(0);
};

enum class StepMethod { rk4, cayley_liegroup };

template <typename Scalar>
MomentMatrix<Scalar> moment_matrix(const MassDistribution<Scalar>& dist) {
  const Eigen::Index n = dist.dim();
  Eigen::MatrixX<Scalar> j = Eigen::MatrixX<Scalar>::Zero(n, n);
  for (const auto& a : dist.atoms()) j += a.mass * a.position * a.position.transpose();
  return MomentMatrix<Scalar>(j);
}

/// Classical 3D inertia tensor I = tr(J) Id - J, with entries
/// int(y^2+z^2), -int(xy), ... as in classical mechanics.
template <typename Scalar>
Eigen::Matrix3<Scalar> classical_inertia_3d(const MassDistribution<Scalar>& dist) {
  if (dist.dim() != 3) throw DimensionError("classical_inertia_3d: requires n = 3");
  const auto j = moment_matrix(dist).matrix();
  return Eigen::Matrix3<Scalar>(j.trace() * Eigen::Matrix3<Scalar>::Identity() - j);
}

/// Inertia operator A(w) = Jw + wJ, a self-adjoint positive operator in
/// the Killing inner product.
template <typename Scalar>
Covector<Scalar> inertia_apply(const MomentMatrix<Scalar>& j, const SkewMatrix<Scalar>& w) {
  detail::check_same_dim(j.dim(), w.dim(), "inertia_apply");
  return Covector<Scalar>(j.matrix() * w.matrix() + w.matrix() * j.matrix());
}

/// Solves A(w) = m in the eigenbasis of J: w'_ij = m'_ij / (lambda_i +
/// lambda_j). Eigenvalue pair sums at or below the tolerance mean some
/// rotation plane carries no inertia and the solve must be refused.
template <typename Scalar>
SkewMatrix<Scalar> inertia_solve(const MomentMatrix<Scalar>& j, const Covector<Scalar>& m) {
  detail::check_same_dim(j.dim(), m.dim(), "inertia_solve");
  const Eigen::Index n = j.dim();
  const auto& lambda = j.eigenvalues();
  const auto& v = j.eigenvectors();
  const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), lambda.cwiseAbs().maxCoeff());
  Eigen::MatrixX<Scalar> mp = v.transpose() * m.matrix() * v;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const Scalar s = lambda[i] + lambda[k];
      if (!(s > tol))
        throw SingularInertiaError(
            "inertia_solve: eigenvalue pair sum " + std::to_string(static_cast<double>(s)) +
            " at (" + std::to_string(i) + "," + std::to_string(k) + ") is not invertible");
      mp(i, k) /= s;
      mp(k, i) /= s;
    }
    mp(i, i) = Scalar(0);
  }
  return SkewMatrix<Scalar>(v * mp * v.transpose());
}

/// Kinetic energy K = -1/2 tr(w J w) = 1/2 <A(w), w>.
template <typename Scalar>
Scalar kinetic_energy(const MomentMatrix<Scalar>& j, const SkewMatrix<Scalar>& w) {
  detail::check_same_dim(j.dim(), w.dim(), "kinetic_energy");
  return Scalar(-0.5) * (w.matrix() * j.matrix() * w.matrix()).trace();
}

template <typename Scalar = double>
struct EulerRhs {
  Eigen::MatrixX<Scalar> dg;
  SkewMatrix<Scalar> dM;
};

/// Time derivative of (g, M): dg = g w, dM = [M, w] with M = A(w).
template <typename Scalar>
EulerRhs<Scalar> euler_rhs(const MomentMatrix<Scalar>& j, const BodyState<Scalar>& state) {
  detail::check_same_dim(j.dim(), state.g.dim(), "euler_rhs");
  const auto& w = state.omega.matrix();
  Eigen::MatrixX<Scalar> m = j.matrix() * w + w * j.matrix();
  return EulerRhs<Scalar>{state.g.matrix() * w, SkewMatrix<Scalar>(m * w - w * m)};
}

namespace detail_rigid {

/// Momentum form of the right hand side on plain matrices.
template <typename Scalar>
std::pair<Eigen::MatrixX<Scalar>, Eigen::MatrixX<Scalar>> rhs_gm(
    const MomentMatrix<Scalar>& j, const Eigen::MatrixX<Scalar>& g,
    const Eigen::MatrixX<Scalar>& m) {
  const Eigen::MatrixX<Scalar> w = inertia_solve(j, Covector<Scalar>(m)).matrix();
  return {g * w, m * w - w * m};
}

/// One Newton iteration toward the polar factor; keeps the accumulated
/// orthogonality defect of a long Cayley run at round-off level.
template <typename Scalar>
Eigen::MatrixX<Scalar> polar_touch_up(const Eigen::MatrixX<Scalar>& g) {
  const Eigen::Index n = g.rows();
  return Scalar(0.5) * g *
         (Scalar(3) * Eigen::MatrixX<Scalar>::Identity(n, n) - g.transpose() * g);
}

}  // namespace detail_rigid

/// Advances the state by one step of size dt.
///
/// rk4 integrates (g, M) with the classical 4th-order scheme and
/// skew-projects M afterwards; g drifts off the group at O(dt^5) per step.
/// cayley_liegroup advances M the same way but moves g by the Cayley
/// transform of the midpoint velocity, g <- g cay(dt w_mid) with
/// cay(X) = (I - X/2)^{-1} (I + X/2), so g stays orthogonal to round-off
/// at the cost of second-order accuracy in g.
template <typename Scalar>
BodyState<Scalar> step(const MomentMatrix<Scalar>& j, const BodyState<Scalar>& state, Scalar dt,
                       StepMethod method, Scalar orthogonality_tol = Scalar(1e-10)) {
  if (!(dt > Scalar(0))) throw InvalidArgument("step: dt must be positive");
  using Mat = Eigen::MatrixX<Scalar>;
  const Eigen::Index n = j.dim();
  const Mat g0 = state.g.matrix();
  const Mat m0 = inertia_apply(j, state.omega).matrix();

  const auto [k1g, k1m] = detail_rigid::rhs_gm(j, g0, m0);
  const auto [k2g, k2m] = detail_rigid::rhs_gm<Scalar>(j, g0 + Scalar(0.5) * dt * k1g,
                                                       m0 + Scalar(0.5) * dt * k1m);
  const auto [k3g, k3m] = detail_rigid::rhs_gm<Scalar>(j, g0 + Scalar(0.5) * dt * k2g,
                                                       m0 + Scalar(0.5) * dt * k2m);
  const auto [k4g, k4m] = detail_rigid::rhs_gm<Scalar>(j, g0 + dt * k3g, m0 + dt * k3m);

  const Mat m1 = m0 + (dt / Scalar(6)) * (k1m + Scalar(2) * k2m + Scalar(2) * k3m + k4m);
  Mat g1;
  if (method == StepMethod::rk4) {
    g1 = g0 + (dt / Scalar(6)) * (k1g + Scalar(2) * k2g + Scalar(2) * k3g + k4g);
  } else {
    const SkewMatrix<Scalar> w_mid =
        inertia_solve(j, Covector<Scalar>(Mat(Scalar(0.5) * (m0 + m1))));
    const Mat x = Scalar(0.5) * dt * w_mid.matrix();
    const Mat id = Mat::Identity(n, n);
    g1 = detail_rigid::polar_touch_up<Scalar>(g0 * (id - x).lu().solve(id + x));
  }

  if (!m1.allFinite() || !g1.allFinite())
    throw DivergenceError("step: non-finite state at t = " +
                          std::to_string(static_cast<double>(state.time)));

  const SkewMatrix<Scalar> m_new(m1);
  return BodyState<Scalar>{RotationMatrix<Scalar>(g1, orthogonality_tol),
                           inertia_solve(j, Covector<Scalar>(m_new)), state.time + dt};
}

/// Spatial angular momentum g A(w) g^T, a constant of motion.
template <typename Scalar>
Covector<Scalar> spatial_momentum(const MomentMatrix<Scalar>& j, const BodyState<Scalar>& state) {
  const Covector<Scalar> m = inertia_apply(j, state.omega);
  return Covector<Scalar>(state.g.matrix() * m.matrix() * state.g.matrix().transpose());
}

/// Evaluates P_k(lambda) = tr((M + lambda J^2)^k) at each sample. Every
/// value is a first integral of the flow.
template <typename Scalar>
std::vector<Scalar> manakov_integrals(const MomentMatrix<Scalar>& j, const Covector<Scalar>& m,
                                      int k, const std::vector<Scalar>& lambda_samples) {
  detail::check_same_dim(j.dim(), m.dim(), "manakov_integrals");
  if (k < 2 || k > j.dim())
    throw InvalidArgument("manakov_integrals: degree must satisfy 2 <= k <= n");
  std::vector<Scalar> out;
  out.reserve(lambda_samples.size());
  for (const Scalar lambda : lambda_samples) {
    if (!std::isfinite(static_cast<double>(lambda)))
      throw InvalidArgument("manakov_integrals: non-finite lambda sample");
    const Eigen::MatrixX<Scalar> l = m.matrix() + lambda * j.squared();
    Eigen::MatrixX<Scalar> p = l;
    for (int i = 1; i < k; ++i) p = p * l;
    out.push_back(p.trace());
  }
  return out;
}

/// Chebyshev extrema on [-1,1]; a well-conditioned default sample set for
/// degree-k coefficient extraction.
template <typename Scalar = double>
std::vector<Scalar> manakov_default_samples(int k) {
  std::vector<Scalar> s(k + 1);
  for (int i = 0; i <= k; ++i)
    s[i] = k == 0 ? Scalar(0) : Scalar(std::cos(M_PI * double(i) / double(k)));
  return s;
}

/// Coefficients c_0..c_k of the polynomial P_k(lambda), recovered from
/// values at k+1 distinct samples through a Vandermonde solve.
template <typename Scalar>
std::vector<Scalar> manakov_coefficients(const MomentMatrix<Scalar>& j, const Covector<Scalar>& m,
                                         int k, const std::vector<Scalar>& lambda_samples) {
  if (static_cast<int>(lambda_samples.size()) != k + 1)
    throw InvalidArgument("manakov_coefficients: need exactly k+1 samples");
  Scalar span = Scalar(0);
  for (const Scalar a : lambda_samples)
    for (const Scalar b : lambda_samples) span = std::max(span, std::abs(a - b));
  for (std::size_t p = 0; p < lambda_samples.size(); ++p)
    for (std::size_t q = p + 1; q < lambda_samples.size(); ++q)
      if (std::abs(lambda_samples[p] - lambda_samples[q]) <
          Scalar(1e-8) * std::max(Scalar(1), span))
        throw ConditioningError("manakov_coefficients: near-duplicate lambda samples");

  const std::vector<Scalar> values = manakov_integrals(j, m, k, lambda_samples);
  Eigen::MatrixX<Scalar> vand(k + 1, k + 1);
  Eigen::VectorX<Scalar> rhs(k + 1);
  for (int row = 0; row <= k; ++row) {
    Scalar p = Scalar(1);
    for (int s = 0; s <= k; ++s) {
      vand(row, s) = p;
      p *= lambda_samples[row];
    }
    rhs[row] = values[row];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixX<Scalar>> qr(vand);
  if (qr.rank() < k + 1)
    throw ConditioningError("manakov_coefficients: Vandermonde system is rank deficient");
  const Eigen::VectorX<Scalar> c = qr.solve(rhs);
  return std::vector<Scalar>(c.data(), c.data() + c.size());
}

/// Number of independent integrals in involution provided by the Manakov
/// family: N(n) = floor(n/2)/2 + n(n-1)/4, an integer for every n.
inline long manakov_count(long n) {
  if (n < 2) throw InvalidArgument("manakov_count: n must be >= 2");
  const long numerator = 2 * (n / 2) + n * (n - 1);
  return numerator / 4;
}

}  // namespace lieflow::rigid
