#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "lieflow/errors.hpp"

namespace lieflow {

namespace detail {

inline void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace detail

/// Element of so(n), stored as an n x n matrix that is exactly
/// antisymmetric: every constructor applies the projection (X - X^T)/2,
/// which is antisymmetric in exact floating point arithmetic. Tolerant by
/// design; integrators feed slightly polluted matrices back in every step.
template <typename Scalar = double>
class SkewMatrix {
 public:
  using MatrixType = Eigen::MatrixX<Scalar>;

  template <typename Derived>
  explicit SkewMatrix(const Eigen::MatrixBase<Derived>& raw) {
    if (raw.rows() != raw.cols())
      throw DimensionError("SkewMatrix: input must be square");
    if (raw.rows() < 2)
      throw DimensionError("SkewMatrix: dimension must be >= 2");
    m_ = (raw.derived() - raw.derived().transpose()) / Scalar(2);
  }

  static SkewMatrix Zero(Eigen::Index n) {
    return SkewMatrix(MatrixType::Zero(n, n));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }

  Scalar norm() const { return m_.norm(); }

  SkewMatrix operator+(const SkewMatrix& o) const { return SkewMatrix(m_ + o.m_); }
  SkewMatrix operator-(const SkewMatrix& o) const { return SkewMatrix(m_ - o.m_); }
  SkewMatrix operator-() const { return SkewMatrix(-m_); }
  SkewMatrix operator*(Scalar s) const { return SkewMatrix(m_ * s); }
  friend SkewMatrix operator*(Scalar s, const SkewMatrix& w) { return w * s; }

 private:
  MatrixType m_;
};

/// Element of so(n)*, identified with a skew matrix through the Killing
/// form: the covector m acts on w by -1/2 tr(m w). Kept as a separate type
/// so adjoint-side and coadjoint-side quantities cannot be mixed up.
template <typename Scalar = double>
class Covector {
 public:
  using MatrixType = Eigen::MatrixX<Scalar>;

  template <typename Derived>
  explicit Covector(const Eigen::MatrixBase<Derived>& raw)
      : rep_(SkewMatrix<Scalar>(raw)) {}
  explicit Covector(SkewMatrix<Scalar> rep) : rep_(std::move(rep)) {}

  static Covector Zero(Eigen::Index n) {
    return Covector(SkewMatrix<Scalar>::Zero(n));
  }

  Eigen::Index dim() const { return rep_.dim(); }
  const MatrixType& matrix() const { return rep_.matrix(); }
  const SkewMatrix<Scalar>& rep() const { return rep_; }

  Scalar norm() const { return rep_.norm(); }

  Covector operator+(const Covector& o) const { return Covector(rep_ + o.rep_); }
  Covector operator-(const Covector& o) const { return Covector(rep_ - o.rep_); }
  Covector operator-() const { return Covector(-rep_); }
  Covector operator*(Scalar s) const { return Covector(rep_ * s); }
  friend Covector operator*(Scalar s, const Covector& m) { return m * s; }

 private:
  SkewMatrix<Scalar> rep_;
};

/// Group element g in SO(n). Construction checks orthogonality and
/// orientation; the tolerance is configurable so long integrations can
/// relax it if they accumulate round-off.
template <typename Scalar = double>
class RotationMatrix {
 public:
  using MatrixType = Eigen::MatrixX<Scalar>;

  template <typename Derived>
  explicit RotationMatrix(const Eigen::MatrixBase<Derived>& entries,
                          Scalar orthogonality_tol = Scalar(1e-10))
      : m_(entries.derived()) {
    if (m_.rows() != m_.cols())
      throw DimensionError("RotationMatrix: input must be square");
    if (m_.rows() < 2)
      throw DimensionError("RotationMatrix: dimension must be >= 2");
    const Scalar defect =
        (m_.transpose() * m_ - MatrixType::Identity(m_.rows(), m_.cols())).norm();
    if (!(defect <= orthogonality_tol))
      throw InvalidArgument("RotationMatrix: not orthogonal, ||g^T g - I|| = " +
                            std::to_string(static_cast<double>(defect)));
    if (!(m_.determinant() > Scalar(0)))
      throw InvalidArgument("RotationMatrix: orientation-reversing (det <= 0)");
  }

  static RotationMatrix Identity(Eigen::Index n) {
    return RotationMatrix(MatrixType::Identity(n, n));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }

  /// Frobenius distance of g^T g from the identity.
  Scalar orthogonality_defect() const {
    return (m_.transpose() * m_ - MatrixType::Identity(m_.rows(), m_.cols())).norm();
  }

  RotationMatrix operator*(const RotationMatrix& o) const {
    detail::check_same_dim(dim(), o.dim(), "RotationMatrix::operator*");
    return RotationMatrix(MatrixType(m_ * o.m_), Scalar(1e-8));
  }

 private:
  MatrixType m_;
};

/// L(x,y) = y x^T - x y^T, the elementary skew matrix generated by two
/// vectors. Bilinear and antisymmetric in (x,y).
template <typename DerivedX, typename DerivedY>
SkewMatrix<typename DerivedX::Scalar> l_op(const Eigen::MatrixBase<DerivedX>& x,
                                           const Eigen::MatrixBase<DerivedY>& y) {
  detail::check_same_dim(x.size(), y.size(), "l_op");
  using Scalar = typename DerivedX::Scalar;
  Eigen::VectorX<Scalar> xv = x.derived();
  Eigen::VectorX<Scalar> yv = y.derived();
  Eigen::MatrixX<Scalar> m = yv * xv.transpose() - xv * yv.transpose();
  return SkewMatrix<Scalar>(m);
}

/// The inner product <a,b> = -1/2 tr(ab) on so(n); symmetric and
/// positive definite.
template <typename Scalar>
Scalar killing_pair(const SkewMatrix<Scalar>& a, const SkewMatrix<Scalar>& b) {
  detail::check_same_dim(a.dim(), b.dim(), "killing_pair");
  return Scalar(-0.5) * (a.matrix() * b.matrix()).trace();
}

/// Natural pairing of a covector with an algebra element. Under the
/// identification used here it reduces to killing_pair of the matrices.
template <typename Scalar>
Scalar dual_pair(const Covector<Scalar>& m, const SkewMatrix<Scalar>& w) {
  detail::check_same_dim(m.dim(), w.dim(), "dual_pair");
  return Scalar(-0.5) * (m.matrix() * w.matrix()).trace();
}

/// Canonical bilinear form k(a,b) = (n-2) tr(ab) of so(n); proportional to
/// killing_pair with factor -2(n-2). Degenerate for n < 3.
template <typename Scalar>
Scalar killing_canonical(const SkewMatrix<Scalar>& a, const SkewMatrix<Scalar>& b) {
  detail::check_same_dim(a.dim(), b.dim(), "killing_canonical");
  const auto n = a.dim();
  if (n < 3)
    throw DegenerateFormError("killing_canonical: form is degenerate for n < 3");
  return Scalar(n - 2) * (a.matrix() * b.matrix()).trace();
}

/// Matrix commutator [a,b] = ab - ba.
template <typename Scalar>
SkewMatrix<Scalar> bracket(const SkewMatrix<Scalar>& a, const SkewMatrix<Scalar>& b) {
  detail::check_same_dim(a.dim(), b.dim(), "bracket");
  return SkewMatrix<Scalar>(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

/// Adjoint action Ad_g w = g w g^T.
template <typename Scalar>
SkewMatrix<Scalar> adjoint(const RotationMatrix<Scalar>& g, const SkewMatrix<Scalar>& w) {
  detail::check_same_dim(g.dim(), w.dim(), "adjoint");
  return SkewMatrix<Scalar>(g.matrix() * w.matrix() * g.matrix().transpose());
}

/// Coadjoint action of the group, Ad*_g m = g m g^T in the Killing
/// identification; satisfies (Ad*_g m)(w) = m(Ad_{g^{-1}} w).
template <typename Scalar>
Covector<Scalar> coadjoint_action(const RotationMatrix<Scalar>& g, const Covector<Scalar>& m) {
  detail::check_same_dim(g.dim(), m.dim(), "coadjoint_action");
  return Covector<Scalar>(g.matrix() * m.matrix() * g.matrix().transpose());
}

/// Infinitesimal coadjoint action ad*_w m = -[w,m] = [m,w] in the Killing
/// identification; satisfies (ad*_w m)(xi) = m([w,xi]).
template <typename Scalar>
Covector<Scalar> coadjoint_ad_star(const SkewMatrix<Scalar>& w, const Covector<Scalar>& m) {
  detail::check_same_dim(w.dim(), m.dim(), "coadjoint_ad_star");
  return Covector<Scalar>(m.matrix() * w.matrix() - w.matrix() * m.matrix());
}

/// hat: R^3 -> so(3) with the convention w1 = -W23, w2 = W13, w3 = -W12,
/// i.e. hat(v) u = v x u; inverse of vee.
template <typename Derived>
SkewMatrix<typename Derived::Scalar> hat(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.size() != 3) throw DimensionError("hat: expected a 3-vector");
  Eigen::Matrix3<Scalar> m;
  m << Scalar(0), -v[2], v[1],
       v[2], Scalar(0), -v[0],
       -v[1], v[0], Scalar(0);
  return SkewMatrix<Scalar>(m);
}

template <typename Scalar>
Eigen::Vector3<Scalar> vee(const SkewMatrix<Scalar>& w) {
  if (w.dim() != 3) throw DimensionError("vee: expected so(3)");
  const auto& m = w.matrix();
  return Eigen::Vector3<Scalar>(-m(1, 2), m(0, 2), -m(0, 1));
}

}  // namespace lieflow
