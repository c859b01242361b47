#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lieflow/errors.hpp"
#include "lieflow/rigid_body.hpp"
#include "lieflow/so_n.hpp"

namespace lieflow::algebra {

template <typename Scalar = double>
struct AlgebraVector {
  Eigen::VectorX<Scalar> coords;
  explicit AlgebraVector(Eigen::VectorX<Scalar> c) : coords(std::move(c)) {
    if (!coords.allFinite()) throw InvalidArgument("AlgebraVector: non-finite coordinates");
  }
  Eigen::Index dim() const { return coords.size(); }
};

template <typename Scalar = double>
struct AlgebraCovector {
  Eigen::VectorX<Scalar> coords;
  explicit AlgebraCovector(Eigen::VectorX<Scalar> c) : coords(std::move(c)) {
    if (!coords.allFinite()) throw InvalidArgument("AlgebraCovector: non-finite coordinates");
  }
  Eigen::Index dim() const { return coords.size(); }
};

/// Scalar field on the dual space, given in covector coordinates.
template <typename Scalar = double>
using ScalarField = std::function<Scalar(const Eigen::VectorX<Scalar>&)>;

/// A finite-dimensional Lie algebra presented by structure constants plus
/// a reference inner product. structure[k](i,j) is the e_k coefficient of
/// [e_i, e_j]; covectors use the dual basis, so the natural pairing is the
/// plain coordinate dot product.
template <typename Scalar = double>
class AlgebraSpec {
 public:
  AlgebraSpec(std::vector<Eigen::MatrixX<Scalar>> structure, Eigen::MatrixX<Scalar> pairing)
      : structure_(std::move(structure)), pairing_(std::move(pairing)) {
    const Eigen::Index d = static_cast<Eigen::Index>(structure_.size());
    if (d == 0) throw DimensionError("AlgebraSpec: empty structure table");
    Scalar scale = Scalar(1);
    for (const auto& c : structure_) {
      if (c.rows() != d || c.cols() != d)
        throw DimensionError("AlgebraSpec: structure tables must be d x d");
      scale = std::max(scale, c.cwiseAbs().maxCoeff());
    }
    for (const auto& c : structure_)
      if ((c + c.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
        throw InvalidArgument("AlgebraSpec: bracket is not antisymmetric");
    check_jacobi(scale);
    if (pairing_.rows() != d || pairing_.cols() != d)
      throw DimensionError("AlgebraSpec: pairing matrix must be d x d");
    if ((pairing_ - pairing_.transpose()).cwiseAbs().maxCoeff() >
        Scalar(1e-12) * std::max(Scalar(1), pairing_.cwiseAbs().maxCoeff()))
      throw InvalidArgument("AlgebraSpec: pairing is not symmetric");
    Eigen::LLT<Eigen::MatrixX<Scalar>> llt(pairing_);
    if (llt.info() != Eigen::Success)
      throw InvalidArgument("AlgebraSpec: pairing is not positive definite");
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(structure_.size()); }
  const std::vector<Eigen::MatrixX<Scalar>>& structure() const { return structure_; }
  const Eigen::MatrixX<Scalar>& pairing() const { return pairing_; }

  /// [a, b] in coordinates.
  Eigen::VectorX<Scalar> bracket(const Eigen::VectorX<Scalar>& a,
                                 const Eigen::VectorX<Scalar>& b) const {
    detail::check_same_dim(a.size(), dim(), "AlgebraSpec::bracket");
    detail::check_same_dim(b.size(), dim(), "AlgebraSpec::bracket");
    Eigen::VectorX<Scalar> out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) out[k] = a.dot(structure_[k] * b);
    return out;
  }

  /// ad*_xi m in dual coordinates: (ad*_xi m)(w) = m([xi, w]).
  Eigen::VectorX<Scalar> ad_star(const Eigen::VectorX<Scalar>& xi,
                                 const Eigen::VectorX<Scalar>& m) const {
    detail::check_same_dim(xi.size(), dim(), "AlgebraSpec::ad_star");
    detail::check_same_dim(m.size(), dim(), "AlgebraSpec::ad_star");
    Eigen::VectorX<Scalar> out = Eigen::VectorX<Scalar>::Zero(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) out += m[k] * (structure_[k].transpose() * xi);
    return out;
  }

  /// The same algebra with the opposite bracket; left- and right-invariant
  /// conventions differ by exactly this sign.
  AlgebraSpec opposite() const {
    std::vector<Eigen::MatrixX<Scalar>> neg;
    neg.reserve(structure_.size());
    for (const auto& c : structure_) neg.push_back(-c);
    return AlgebraSpec(std::move(neg), pairing_);
  }

 private:
  void check_jacobi(Scalar scale) const {
    const Eigen::Index d = dim();
    const Scalar tol = Scalar(1e-12) * scale * scale * scale;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
          Eigen::VectorX<Scalar> sum = Eigen::VectorX<Scalar>::Zero(d);
          sum += bracket_basis(i, bracket_pair(j, k));
          sum += bracket_basis(j, bracket_pair(k, i));
          sum += bracket_basis(k, bracket_pair(i, j));
          if (sum.norm() > tol)
            throw InvalidArgument("AlgebraSpec: Jacobi identity fails on basis triple (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
        }
      }
    }
  }

  Eigen::VectorX<Scalar> bracket_pair(Eigen::Index i, Eigen::Index j) const {
    Eigen::VectorX<Scalar> v(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) v[k] = structure_[k](i, j);
    return v;
  }

  Eigen::VectorX<Scalar> bracket_basis(Eigen::Index i, const Eigen::VectorX<Scalar>& v) const {
    Eigen::VectorX<Scalar> out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) out[k] = structure_[k].row(i).dot(v);
    return out;
  }

  std::vector<Eigen::MatrixX<Scalar>> structure_;
  Eigen::MatrixX<Scalar> pairing_;
};

/// Inertia operator A : g -> g* as a symmetric positive-definite matrix in
/// basis coordinates; defines the metric <u,v> = (A u) . v.
template <typename Scalar = double>
class InertiaMap {
 public:
  template <typename Derived>
  explicit InertiaMap(const Eigen::MatrixBase<Derived>& a) : a_(a.derived()), llt_(a_) {
    if (a_.rows() != a_.cols()) throw DimensionError("InertiaMap: matrix must be square");
    const Scalar scale = std::max(Scalar(1), a_.cwiseAbs().maxCoeff());
    if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale)
      throw InvalidArgument("InertiaMap: matrix is not symmetric");
    if (llt_.info() != Eigen::Success)
      throw SingularInertiaError("InertiaMap: matrix is not positive definite");
  }

  Eigen::Index dim() const { return a_.rows(); }
  const Eigen::MatrixX<Scalar>& matrix() const { return a_; }

  Eigen::VectorX<Scalar> apply(const Eigen::VectorX<Scalar>& w) const { return a_ * w; }
  Eigen::VectorX<Scalar> solve(const Eigen::VectorX<Scalar>& m) const { return llt_.solve(m); }

 private:
  Eigen::MatrixX<Scalar> a_;
  Eigen::LLT<Eigen::MatrixX<Scalar>> llt_;
};

/// B(a,b) = A^{-1} ad*_b (A a), the bilinear operator of the Euler-Arnold
/// equation; defined by <[a,b],c> = <B(c,a),b> in the A-metric.
template <typename Scalar>
AlgebraVector<Scalar> b_operator(const AlgebraSpec<Scalar>& spec, const InertiaMap<Scalar>& a,
                                 const AlgebraVector<Scalar>& x, const AlgebraVector<Scalar>& y) {
  detail::check_same_dim(spec.dim(), a.dim(), "b_operator");
  return AlgebraVector<Scalar>(a.solve(spec.ad_star(y.coords, a.apply(x.coords))));
}

/// Levi-Civita covariant derivative of left-invariant fields at the
/// identity: (nabla_a b)(e) = 1/2 [a,b] - 1/2 (B(a,b) + B(b,a)).
template <typename Scalar>
AlgebraVector<Scalar> connection_at_identity(const AlgebraSpec<Scalar>& spec,
                                             const InertiaMap<Scalar>& a,
                                             const AlgebraVector<Scalar>& x,
                                             const AlgebraVector<Scalar>& y) {
  const Eigen::VectorX<Scalar> sym =
      b_operator(spec, a, x, y).coords + b_operator(spec, a, y, x).coords;
  return AlgebraVector<Scalar>(
      Eigen::VectorX<Scalar>(Scalar(0.5) * spec.bracket(x.coords, y.coords) - Scalar(0.5) * sym));
}

/// Right hand side of the Euler-Arnold equation, d omega/dt = B(omega, omega).
template <typename Scalar>
AlgebraVector<Scalar> euler_arnold_rhs(const AlgebraSpec<Scalar>& spec,
                                       const InertiaMap<Scalar>& a,
                                       const AlgebraVector<Scalar>& w) {
  return b_operator(spec, a, w, w);
}

/// Momentum form of the same dynamics, dm/dt = ad*_{A^{-1} m} m.
template <typename Scalar>
AlgebraCovector<Scalar> dual_euler_arnold_rhs(const AlgebraSpec<Scalar>& spec,
                                              const InertiaMap<Scalar>& a,
                                              const AlgebraCovector<Scalar>& m) {
  return AlgebraCovector<Scalar>(spec.ad_star(a.solve(m.coords), m.coords));
}

template <typename Scalar>
Scalar default_fd_step(const Eigen::VectorX<Scalar>& m) {
  return Scalar(1e-4) * (Scalar(1) + m.norm());
}

/// Gradient of a scalar field on the dual space by 4th-order central
/// differences; exact for polynomials up to degree four.
template <typename Scalar>
Eigen::VectorX<Scalar> fd_gradient(const ScalarField<Scalar>& f, const Eigen::VectorX<Scalar>& m,
                                   Scalar h) {
  if (!(h > Scalar(0))) throw InvalidArgument("fd_gradient: step must be positive");
  const Eigen::Index d = m.size();
  Eigen::VectorX<Scalar> grad(d);
  Eigen::VectorX<Scalar> p = m;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Scalar base = m[i];
    auto at = [&](Scalar offset) {
      p[i] = base + offset;
      const Scalar v = f(p);
      if (!std::isfinite(static_cast<double>(v)))
        throw InvalidArgument("fd_gradient: non-finite function value");
      return v;
    };
    grad[i] =
        (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (Scalar(12) * h);
    p[i] = base;
  }
  return grad;
}

/// Lie-Poisson bracket {f,g}(m) = (m, [d_m f, d_m g]) with finite
/// difference gradients of step h.
template <typename Scalar>
Scalar lie_poisson_bracket(const AlgebraSpec<Scalar>& spec, const ScalarField<Scalar>& f,
                           const ScalarField<Scalar>& g, const AlgebraCovector<Scalar>& m,
                           Scalar h) {
  const Eigen::VectorX<Scalar> df = fd_gradient(f, m.coords, h);
  const Eigen::VectorX<Scalar> dg = fd_gradient(g, m.coords, h);
  return m.coords.dot(spec.bracket(df, dg));
}

template <typename Scalar>
Scalar lie_poisson_bracket(const AlgebraSpec<Scalar>& spec, const ScalarField<Scalar>& f,
                           const ScalarField<Scalar>& g, const AlgebraCovector<Scalar>& m) {
  return lie_poisson_bracket(spec, f, g, m, default_fd_step<Scalar>(m.coords));
}

/// Hamiltonian vector field on the dual space, xi_H(m) = ad*_{d_m H} m.
template <typename Scalar>
AlgebraCovector<Scalar> hamiltonian_field(const AlgebraSpec<Scalar>& spec,
                                          const ScalarField<Scalar>& h_field,
                                          const AlgebraCovector<Scalar>& m, Scalar h) {
  return AlgebraCovector<Scalar>(spec.ad_star(fd_gradient(h_field, m.coords, h), m.coords));
}

template <typename Scalar>
AlgebraCovector<Scalar> hamiltonian_field(const AlgebraSpec<Scalar>& spec,
                                          const ScalarField<Scalar>& h_field,
                                          const AlgebraCovector<Scalar>& m) {
  return hamiltonian_field(spec, h_field, m, default_fd_step<Scalar>(m.coords));
}

/// Kirillov orbit form evaluated on orbit tangents ad*_a m, ad*_b m:
/// omega(ad*_a m, ad*_b m) = (m, [a,b]).
template <typename Scalar>
Scalar kirillov_form(const AlgebraSpec<Scalar>& spec, const AlgebraVector<Scalar>& a,
                     const AlgebraVector<Scalar>& b, const AlgebraCovector<Scalar>& m) {
  return m.coords.dot(spec.bracket(a.coords, b.coords));
}

template <typename Scalar = double>
struct InvolutionReport {
  Scalar max_abs = Scalar(0);
  std::size_t argmax_first = 0;
  std::size_t argmax_second = 0;
  std::size_t argmax_sample = 0;
  Scalar threshold = Scalar(1e-5);
  bool pass() const { return max_abs <= threshold; }
};

/// Evaluates all pairwise Lie-Poisson brackets of the given functions at
/// the given samples and reports the worst case. The default threshold
/// reflects finite-difference error, not exact-arithmetic involution.
template <typename Scalar>
InvolutionReport<Scalar> involution_check(const AlgebraSpec<Scalar>& spec,
                                          const std::vector<ScalarField<Scalar>>& functions,
                                          const std::vector<AlgebraCovector<Scalar>>& samples,
                                          Scalar h = Scalar(0),
                                          Scalar threshold = Scalar(1e-5)) {
  InvolutionReport<Scalar> report;
  report.threshold = threshold;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Scalar step = h > Scalar(0) ? h : default_fd_step<Scalar>(samples[s].coords);
    for (std::size_t i = 0; i < functions.size(); ++i) {
      for (std::size_t j = i + 1; j < functions.size(); ++j) {
        const Scalar value =
            std::abs(lie_poisson_bracket(spec, functions[i], functions[j], samples[s], step));
        if (value > report.max_abs) {
          report.max_abs = value;
          report.argmax_first = i;
          report.argmax_second = j;
          report.argmax_sample = s;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// so(n) instantiation: orthonormal basis b_{ij} = l_op(e_i, e_j), i < j, in
// lexicographic order. killing_pair is the identity form in these
// coordinates, so algebra and dual coordinates coincide numerically.

inline std::vector<SkewMatrix<double>> so_basis(Eigen::Index n) {
  std::vector<SkewMatrix<double>> basis;
  basis.reserve(n * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      basis.push_back(l_op(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j)));
  return basis;
}

inline Eigen::VectorXd so_coordinates(const SkewMatrix<double>& w) {
  const Eigen::Index n = w.dim();
  Eigen::VectorXd v(n * (n - 1) / 2);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) v[idx++] = w.matrix()(j, i);
  return v;
}

inline Eigen::VectorXd so_coordinates(const Covector<double>& m) {
  return so_coordinates(m.rep());
}

inline SkewMatrix<double> so_from_coordinates(Eigen::Index n, const Eigen::VectorXd& v) {
  detail::check_same_dim(v.size(), n * (n - 1) / 2, "so_from_coordinates");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      w(j, i) = v[idx];
      w(i, j) = -v[idx];
      ++idx;
    }
  }
  return SkewMatrix<double>(w);
}

/// Structure constants of so(n) in the b_{ij} basis, with killing_pair as
/// the reference pairing (the identity matrix in these coordinates).
inline AlgebraSpec<double> so_algebra_spec(Eigen::Index n) {
  if (n < 2) throw DimensionError("so_algebra_spec: n must be >= 2");
  const auto basis = so_basis(n);
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::MatrixXd> structure(d, Eigen::MatrixXd::Zero(d, d));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::VectorXd c = so_coordinates(bracket(basis[i], basis[j]));
      for (Eigen::Index k = 0; k < d; ++k) structure[k](i, j) = c[k];
    }
  }
  return AlgebraSpec<double>(std::move(structure), Eigen::MatrixXd::Identity(d, d));
}

/// Coordinate matrix of the rigid-body inertia operator A(w) = Jw + wJ in
/// the b_{ij} basis.
inline InertiaMap<double> so_inertia_map(const rigid::MomentMatrix<double>& j) {
  const auto basis = so_basis(j.dim());
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index beta = 0; beta < d; ++beta) {
    const Eigen::VectorXd col = so_coordinates(rigid::inertia_apply(j, basis[beta]));
    a.col(beta) = col;
  }
  return InertiaMap<double>(Eigen::MatrixXd((a + a.transpose()) / 2.0));
}

/// The non-constant coefficient functions of the Manakov polynomials
/// tr((M + lambda J^2)^k) for 2 <= k <= n, as labeled scalar fields on
/// so(n)* coordinates. Coefficients with s of opposite parity to k vanish
/// identically and the top coefficient is constant; both are omitted.
inline std::vector<std::pair<std::string, ScalarField<double>>> manakov_coefficient_fields(
    const rigid::MomentMatrix<double>& j) {
  std::vector<std::pair<std::string, ScalarField<double>>> out;
  const Eigen::Index n = j.dim();
  for (int k = 2; k <= static_cast<int>(n); ++k) {
    for (int s = k % 2; s < k; s += 2) {
      auto field = [j, k, s, n](const Eigen::VectorXd& coords) {
        const auto m = Covector<double>(so_from_coordinates(n, coords).matrix());
        return rigid::manakov_coefficients(j, m, k, rigid::manakov_default_samples(k))[s];
      };
      out.emplace_back("P" + std::to_string(k) + "_lambda" + std::to_string(s),
                       ScalarField<double>(field));
    }
  }
  return out;
}

}  // namespace lieflow::algebra
