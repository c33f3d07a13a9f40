#include "doctest.h"

#include "qig/bloch.hpp"
#include "qig/infogeo.hpp"
#include "qig/povm.hpp"
#include "support.hpp"

#include <Eigen/LU>

using namespace qig;
using qig::test::kPi;

TEST_SUITE("bloch") {

TEST_CASE("to_spherical examples") {
  auto s = to_spherical(BlochCartesian(1, 0, 0));
  CHECK(s.r() == doctest::Approx(1.0));
  CHECK(s.theta() == doctest::Approx(0.0));
  CHECK(s.phi() == doctest::Approx(0.0));

  s = to_spherical(BlochCartesian(0, 0, 0));
  CHECK(s.r() == 0.0);
  CHECK(s.theta() == 0.0);
  CHECK(s.phi() == 0.0);
  CHECK(s.degenerate());

  s = to_spherical(BlochCartesian(0, 0.5, 0));
  CHECK(s.r() == doctest::Approx(0.5));
  CHECK(s.theta() == doctest::Approx(kPi / 2));
  CHECK(s.phi() == doctest::Approx(0.0));
}

TEST_CASE("to_cartesian examples") {
  auto c = to_cartesian(BlochSpherical(1, 0, 0));
  CHECK((c.vec() - Vec3(1, 0, 0)).norm() < 1e-15);
  c = to_cartesian(BlochSpherical(0.5, kPi / 2, 0));
  CHECK((c.vec() - Vec3(0, 0.5, 0)).norm() < 1e-15);
  c = to_cartesian(BlochSpherical(0.5, kPi / 2, kPi / 2));
  CHECK((c.vec() - Vec3(0, 0, 0.5)).norm() < 1e-15);
}

TEST_CASE("round trips") {
  for (const auto& c : test::ball_points(500, 1)) {
    const BlochSpherical s = to_spherical(c);
    CHECK((to_cartesian(s).vec() - c.vec()).norm() < 1e-12);
    const BlochSpherical s2 = to_spherical(to_cartesian(s));
    CHECK(std::abs(s2.r() - s.r()) < 1e-12);
    CHECK(std::abs(s2.theta() - s.theta()) < 1e-12);
    CHECK(std::abs(s2.phi() - s.phi()) < 1e-12);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(BlochCartesian(1, 1, 0), InvalidState);
  CHECK_NOTHROW(BlochCartesian(0.6, 0.8, 0));
  CHECK(BlochCartesian(0.6, 0.8, 0).is_pure());
  CHECK_THROWS_AS(BlochSpherical(1.1, 0, 0), InvalidState);
  CHECK_THROWS_AS(BlochSpherical(0.5, -0.1, 0), InvalidState);
  CHECK_THROWS_AS(BlochSpherical(0.5, 1.0, 2 * kPi), InvalidState);
}

TEST_CASE("jacobian") {
  CHECK(jacobian(BlochSpherical(0.5, kPi / 2, 0)).determinant() == doctest::Approx(0.25));
  CHECK(jacobian(BlochSpherical(1.0, kPi / 2, 1.3)).determinant() == doctest::Approx(1.0));
  const Mat3 j = jacobian(BlochSpherical(0.5, kPi / 2, 0));
  CHECK((j.col(0) - Vec3(0, 1, 0)).norm() < 1e-15);
  for (const auto& c : test::ball_points(100, 2)) {
    const auto s = to_spherical(c);
    CHECK(jacobian(s).determinant() ==
          doctest::Approx(s.r() * s.r() * std::sin(s.theta())).epsilon(1e-12));
  }
  CHECK_THROWS_AS(jacobian(BlochSpherical(0, 1, 0)), DegenerateCoordinates);
  CHECK_THROWS_AS(jacobian(BlochSpherical(0.5, 0, 0)), DegenerateCoordinates);
  CHECK_THROWS_AS(jacobian(BlochSpherical(0.5, kPi, 0)), DegenerateCoordinates);
}

TEST_CASE("jacobian against finite differences") {
  const BlochSpherical s(0.7, 1.1, 2.3);
  const Mat3 j = jacobian(s);
  const double h = 1e-6;
  for (int k = 0; k < 3; ++k) {
    double a[3] = {s.r(), s.theta(), s.phi()}, b[3] = {s.r(), s.theta(), s.phi()};
    a[k] += h;
    b[k] -= h;
    const Vec3 d = (to_cartesian(BlochSpherical(a[0], a[1], a[2])).vec() -
                    to_cartesian(BlochSpherical(b[0], b[1], b[2])).vec()) / (2 * h);
    CHECK((d - j.col(k)).norm() < 1e-8);
  }
}

TEST_CASE("congruence") {
  const BlochSpherical s(0.5, kPi / 2, 0);
  const Mat3 j = jacobian(s);
  const InfoMatrix id(Mat3(Mat3::Identity()), Coords::cartesian);
  CHECK((congruence_to_spherical(id, s).mat3() - j.transpose() * j).norm() < 1e-15);

  for (const auto& c : test::ball_points(100, 3)) {
    const auto sp = to_spherical(c);
    const Mat3 a = congruence_to_spherical(helstrom_cartesian(c), sp).mat3();
    const Mat3 b = helstrom_spherical(sp).mat3();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
  CHECK_THROWS_AS(congruence_to_spherical(id, BlochSpherical(0.5, 0, 0)), DegenerateCoordinates);
}

TEST_CASE("trace invariance under congruence") {
  PhiloxStream rng(99, 0);
  for (const auto& c : test::ball_points(50, 4)) {
    Mat3 a, f;
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = rng.next_double() - 0.5;
    for (int i = 0; i < 9; ++i) f(i / 3, i % 3) = rng.next_double() - 0.5;
    const Mat3 g = a * a.transpose() + 0.1 * Mat3::Identity();
    f = 0.5 * (f + f.transpose()).eval();
    const auto s = to_spherical(c);
    const Mat3 gs = congruence_to_spherical(InfoMatrix(g, Coords::cartesian), s).mat3();
    const Mat3 fs = congruence_to_spherical(InfoMatrix(f, Coords::cartesian), s).mat3();
    const double t1 = (g.inverse() * f).trace(), t2 = (gs.inverse() * fs).trace();
    CHECK(std::abs(t1 - t2) <= 1e-9 * std::max(1.0, std::abs(t1)));
  }
}

TEST_CASE("InfoMatrix validation") {
  Mat3 m = Mat3::Identity();
  m(0, 1) = 1e-3;
  CHECK_THROWS_AS(InfoMatrix(m, Coords::cartesian), DomainError);
  CHECK_THROWS_AS(InfoMatrix(Eigen::Matrix2d::Identity(), Coords::cartesian), ShapeMismatch);
  CHECK_NOTHROW(InfoMatrix(Eigen::Matrix2d::Identity(), Coords::pure_m2));
  CHECK_NOTHROW(InfoMatrix(Eigen::Matrix4d::Identity(), Coords::pure_m3));
}

}
