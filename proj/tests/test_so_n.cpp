#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "lieflow/so_n.hpp"
#include "support.hpp"

using namespace lieflow;
using lieflow::testing::frob_diff;
using lieflow::testing::random_rotation;
using lieflow::testing::random_skew;

namespace {
Eigen::Vector3d e(int i) { return Eigen::Vector3d::Unit(i); }
}  // namespace

TEST_CASE("l_op elementary values") {
  auto w = l_op(e(0), e(1));
  CHECK(w.matrix()(1, 0) == 1.0);
  CHECK(w.matrix()(0, 1) == -1.0);
  CHECK(w.matrix()(2, 2) == 0.0);
  CHECK(w.matrix()(0, 2) == 0.0);

  Eigen::Vector3d x(0.3, -1.2, 0.7);
  CHECK(l_op(x, x).norm() == 0.0);

  auto w2 = l_op(Eigen::Vector3d(2 * e(0)), e(1));
  CHECK(frob_diff(w2.matrix(), 2.0 * w.matrix()) == 0.0);

  CHECK_THROWS_AS(l_op(Eigen::Vector2d(1, 0), e(1)), DimensionError);
}

TEST_CASE("killing_pair on elementary skews") {
  auto a = l_op(e(0), e(1));
  auto b = l_op(e(0), e(2));
  CHECK(killing_pair(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(killing_pair(a, b) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(killing_pair(SkewMatrix<double>::Zero(3), a) == 0.0);

  Rng rng(11);
  auto u = random_skew(rng, 5);
  auto v = random_skew(rng, 5);
  CHECK(killing_pair(u, v) == doctest::Approx(killing_pair(v, u)).epsilon(1e-14));
  CHECK(killing_pair(u, u) > 0.0);
}

TEST_CASE("killing_canonical values and degeneracy") {
  auto a3 = l_op(e(0), e(1));
  CHECK(killing_canonical(a3, a3) == doctest::Approx(-2.0).epsilon(1e-15));

  Eigen::Vector4d f0 = Eigen::Vector4d::Unit(0), f1 = Eigen::Vector4d::Unit(1),
                  f2 = Eigen::Vector4d::Unit(2);
  auto a4 = l_op(f0, f1);
  auto b4 = l_op(f0, f2);
  CHECK(killing_canonical(a4, a4) == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(killing_canonical(a4, b4) == doctest::Approx(0.0).epsilon(1e-15));

  Rng rng(12);
  for (int n : {3, 4, 5, 6}) {
    auto u = random_skew(rng, n);
    auto v = random_skew(rng, n);
    CHECK(killing_canonical(u, v) ==
          doctest::Approx(-2.0 * (n - 2) * killing_pair(u, v)).epsilon(1e-13));
  }

  auto a2 = SkewMatrix<double>(Eigen::Matrix2d{{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(killing_canonical(a2, a2), DegenerateFormError);
}

TEST_CASE("bracket matches the cross product on so(3)") {
  auto c = bracket(hat(e(0)), hat(e(1)));
  CHECK(frob_diff(c.matrix(), hat(e(2)).matrix()) == 0.0);

  Rng rng(13);
  auto a = random_skew(rng, 4);
  CHECK(bracket(a, a).norm() == 0.0);
  auto b = random_skew(rng, 4);
  CHECK(frob_diff(bracket(a, b).matrix(), -bracket(b, a).matrix()) == 0.0);

  Eigen::Vector3d x(0.2, -0.5, 1.1), y(-0.4, 0.9, 0.3);
  CHECK(frob_diff(bracket(hat(x), hat(y)).matrix(), hat(Eigen::Vector3d(x.cross(y))).matrix()) <=
        1e-15);
}

TEST_CASE("adjoint action") {
  Rng rng(14);
  auto w = random_skew(rng, 4);
  auto id = RotationMatrix<double>::Identity(4);
  CHECK(frob_diff(adjoint(id, w).matrix(), w.matrix()) == 0.0);

  Eigen::Matrix3d rz{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  auto g = RotationMatrix<double>(rz);
  CHECK(frob_diff(adjoint(g, hat(e(0))).matrix(), hat(e(1)).matrix()) <= 1e-15);

  for (int n : {3, 5}) {
    auto h = random_rotation(rng, n);
    auto a = random_skew(rng, n);
    auto b = random_skew(rng, n);
    CHECK(killing_pair(adjoint(h, a), adjoint(h, b)) ==
          doctest::Approx(killing_pair(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("adjoint is a bracket homomorphism") {
  Rng rng(15);
  for (int n : {3, 4, 6}) {
    auto g = random_rotation(rng, n);
    auto a = random_skew(rng, n);
    auto b = random_skew(rng, n);
    CHECK(frob_diff(bracket(adjoint(g, a), adjoint(g, b)).matrix(),
                    adjoint(g, bracket(a, b)).matrix()) <= 1e-10);
  }
}

TEST_CASE("coadjoint_ad_star") {
  auto m = Covector<double>(hat(e(1)).matrix());
  auto out = coadjoint_ad_star(hat(e(0)), m);
  CHECK(frob_diff(out.matrix(), -hat(e(2)).matrix()) <= 1e-15);

  Rng rng(16);
  for (int n : {3, 4, 5}) {
    auto w = random_skew(rng, n);
    CHECK(coadjoint_ad_star(w, Covector<double>(w.matrix())).norm() <= 1e-15);

    auto mm = Covector<double>(random_skew(rng, n).matrix());
    auto xi = random_skew(rng, n);
    CHECK(dual_pair(coadjoint_ad_star(w, mm), xi) ==
          doctest::Approx(dual_pair(mm, bracket(w, xi))).epsilon(1e-12));
  }
}

TEST_CASE("coadjoint group action is dual to the adjoint action") {
  Rng rng(17);
  for (int n : {3, 4}) {
    auto g = random_rotation(rng, n);
    auto m = Covector<double>(random_skew(rng, n).matrix());
    auto w = random_skew(rng, n);
    Eigen::MatrixXd ginv = g.matrix().transpose();
    CHECK(dual_pair(coadjoint_action(g, m), w) ==
          doctest::Approx(dual_pair(m, adjoint(RotationMatrix<double>(ginv), w)))
              .epsilon(1e-12));
  }
}

TEST_CASE("hat and vee") {
  auto w = hat(e(2));
  CHECK(w.matrix()(0, 1) == -1.0);
  CHECK(w.matrix()(1, 0) == 1.0);
  CHECK(w.matrix()(0, 2) == 0.0);

  Rng rng(18);
  Eigen::Vector3d v = rng.normal_vector(3);
  CHECK((vee(hat(v)) - v).norm() == 0.0);
  CHECK((vee(bracket(hat(e(0)), hat(e(1)))) - e(2)).norm() == 0.0);

  Eigen::Vector3d u = rng.normal_vector(3);
  CHECK((hat(v).matrix() * u - v.cross(u)).norm() <= 1e-15);

  CHECK_THROWS_AS(vee(random_skew(rng, 4)), DimensionError);
  CHECK_THROWS_AS(hat(Eigen::Vector4d::Zero().eval()), DimensionError);
}

TEST_CASE("skew closure is exact") {
  Rng rng(19);
  for (int n : {2, 3, 5, 7}) {
    Eigen::MatrixXd raw = rng.normal_matrix(n, n);
    auto w = SkewMatrix<double>(raw);
    CHECK((w.matrix() + w.matrix().transpose()).isZero(0.0));
    CHECK(w.matrix().diagonal().isZero(0.0));
  }
}

TEST_CASE("Jacobi identity") {
  Rng rng(20);
  for (int n : {3, 4, 5, 6}) {
    auto a = random_skew(rng, n);
    auto b = random_skew(rng, n);
    auto c = random_skew(rng, n);
    auto jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
               bracket(c, bracket(a, b));
    const double scale = std::max({a.norm(), b.norm(), c.norm(), 1.0});
    CHECK(jac.norm() <= 1e-12 * scale * scale * scale);
  }
}

TEST_CASE("l_op is dual to evaluation: -1/2 tr(L(x,y) W) = (W x) . y") {
  Rng rng(21);
  for (int n : {3, 4, 6}) {
    Eigen::VectorXd x = rng.normal_vector(n);
    Eigen::VectorXd y = rng.normal_vector(n);
    auto w = random_skew(rng, n);
    const double lhs = killing_pair(l_op(x, y), w);
    const double rhs = (w.matrix() * x).dot(y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("rotation matrix validation") {
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(0, 1) = 1e-3;
  CHECK_THROWS_AS(RotationMatrix<double>{bad}, InvalidArgument);

  Eigen::Matrix3d refl = Eigen::Matrix3d::Identity();
  refl(2, 2) = -1.0;
  CHECK_THROWS_AS(RotationMatrix<double>{refl}, InvalidArgument);

  CHECK_NOTHROW(RotationMatrix<double>(bad, 1e-2));
}

TEST_CASE("core ops instantiate for float") {
  Eigen::Vector3f x = Eigen::Vector3f::Unit(0), y = Eigen::Vector3f::Unit(1);
  auto w = l_op(x, y);
  CHECK(killing_pair(w, w) == doctest::Approx(1.0f));
  CHECK(vee(hat(Eigen::Vector3f(1, 2, 3))).isApprox(Eigen::Vector3f(1, 2, 3)));
}
