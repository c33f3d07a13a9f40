#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qig/infogeo.hpp"
#include "qig/povm.hpp"
#include "support.hpp"

using namespace qig;
using qig::test::kPi;

TEST_SUITE("povm") {

TEST_CASE("N=2 probabilities") {
  auto p = vidal_probabilities(2, BlochCartesian(0, 0, 0));
  const double want0[] = {0.25, 3.0 / 16, 3.0 / 16, 3.0 / 16, 3.0 / 16};
  REQUIRE(p.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(p[i] == doctest::Approx(want0[i]).epsilon(1e-14));
  p = vidal_probabilities(2, BlochCartesian(0, 0, 1));
  const double want1[] = {0, 0.75, 1.0 / 12, 1.0 / 12, 1.0 / 12};
  for (int i = 0; i < 5; ++i) CHECK(std::abs(p[i] - want1[i]) < 1e-15);
}

TEST_CASE("N=3 probabilities") {
  const auto p = vidal_probabilities(3, BlochCartesian(0, 0, 0));
  REQUIRE(p.size() == 8);
  for (int i = 0; i < 6; ++i) CHECK(p[i] == doctest::Approx(1.0 / 12));
  CHECK(p[6] == doctest::Approx(0.25));
  CHECK(p[7] == doctest::Approx(0.25));
  CHECK_THROWS_AS(vidal_probabilities(4, BlochCartesian(0, 0, 0)), UnsupportedCopies);
}

TEST_CASE("closed forms for N=2,3 match the measurement models") {
  for (const auto& c : test::ball_points(200, 20)) {
    CHECK(test::rel(fisher_closed_form(2, c).mat3(), helstrom_cartesian(c).mat3()) < 1e-12);
    CHECK(test::rel(fisher_closed_form(3, c).mat3(), fisher_information(vidal_model(3), c).mat3()) < 1e-9);
    CHECK(test::rel(fisher_information(vidal_model(2), c).mat3(), helstrom_cartesian(c).mat3()) < 1e-9);
  }
}

TEST_CASE("residual eigenstructure") {
  for (const auto& c : test::ball_points(1000, 21)) {
    const double r2 = c.r2();
    for (int n = 3; n <= 6; ++n) {
      Eigen::SelfAdjointEigenSolver<Mat3> es(residual(n, c), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues()(2) <= 1e-10 * residual(n, c).norm());
    }
    Eigen::SelfAdjointEigenSolver<Mat3> e4(residual(4, c), Eigen::EigenvaluesOnly);
    CHECK(e4.eigenvalues()(0) == doctest::Approx(-(7 + 5 * r2) / 12).epsilon(1e-12));
    CHECK(e4.eigenvalues()(1) == doctest::Approx(-(7 + 5 * r2) / 12).epsilon(1e-12));
    CHECK(e4.eigenvalues()(2) == doctest::Approx(-7.0 / 12).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<Mat3> e5(residual(5, c), Eigen::EigenvaluesOnly);
    CHECK((e5.eigenvalues().array() + 3.0 / 16 * (5 + 3 * r2)).abs().minCoeff() < 1e-8);
    Eigen::SelfAdjointEigenSolver<Mat3> d(residual(4, c) - residual(6, c), Eigen::EigenvaluesOnly);
    CHECK(d.eigenvalues()(0) > 0.0);
  }
}

TEST_CASE("N=5 completion is symmetric under axis relabelling") {
  // Relabelling x -> y -> z -> x permutes the matrix accordingly.
  Eigen::Matrix3d p;
  p << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  for (const auto& c : test::ball_points(50, 22)) {
    const BlochCartesian rc(Vec3(p * c.vec()));
    const Mat3 a = residual(5, rc);
    const Mat3 b = p * residual(5, c) * p.transpose();
    CHECK(test::rel(a, b) < 1e-12);
  }
}

TEST_CASE("Gill-Massar trace polynomials") {
  for (const auto& c : test::ball_points(100, 23)) {
    for (int n = 2; n <= 6; ++n) {
      const double t = (helstrom_inverse(c).mat3() * fisher_closed_form(n, c).mat3()).trace();
      CHECK(t == doctest::Approx(gm_trace_reference(n, c.r())).epsilon(1e-9));
    }
  }
  CHECK(gm_trace_reference(4, 1.0) == 7.0);
  CHECK(gm_trace_reference(4, 0.0) == 7.25);
  CHECK(gm_trace_reference(6, 1.0) == 11.0);
  CHECK(gm_trace_reference(7, 0.0) == 14.25);
  for (int n = 2; n <= 7; ++n) CHECK(gm_trace_reference(n, 1.0) == 2 * n - 1);
  for (int n : {6, 7}) {
    double prev = INFINITY;
    for (int i = 0; i <= 100; ++i) {
      const double v = gm_trace_reference(n, i / 100.0);
      CHECK(v < prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(gm_trace_reference(8, 0.5), UnsupportedCopies);
}

TEST_CASE("unsupported and pure inputs") {
  CHECK_THROWS_AS(fisher_closed_form(7, BlochCartesian(0.1, 0, 0)), UnsupportedCopies);
  CHECK_THROWS_AS(fisher_closed_form(1, BlochCartesian(0.1, 0, 0)), UnsupportedCopies);
  CHECK_THROWS_AS(fisher_closed_form(4, BlochCartesian(1, 0, 0)), PureStateError);
  CHECK(fisher_family(7).availability == std::vector<Availability>{Availability::reference_trace_only});
  CHECK(fisher_family(2).availability.size() == 2);
  CHECK(fisher_family(5).availability == std::vector<Availability>{Availability::closed_form_matrix});
}

TEST_CASE("spherical diagonal forms") {
  CHECK(fisher_spherical_diag(4, BlochSpherical(1e-9, 1.0, 0))(0, 0) == doctest::Approx(29.0 / 12));
  CHECK(fisher_spherical_diag(6, BlochSpherical(1e-9, 1.0, 0))(0, 0) == doctest::Approx(95.0 / 24));
  for (const auto& c : test::ball_points(100, 24)) {
    const auto s = to_spherical(c);
    CHECK(test::rel(fisher_spherical_diag(2, s).mat3(), helstrom_spherical(s).mat3()) < 1e-14);
    for (int n : {4, 6}) {
      const Mat3 a = congruence_to_spherical(fisher_closed_form(n, c), s).mat3();
      CHECK((a - fisher_spherical_diag(n, s).mat3()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  CHECK_THROWS_AS(fisher_spherical_diag(5, BlochSpherical(0.5, 1, 0)), UnsupportedCopies);
}

TEST_CASE("fully mixed (1,1) entries") {
  CHECK(fully_mixed_entry11(2, 0.3, 0.1) == 1.0);
  CHECK(fully_mixed_entry11(4, 0.3, 0.1) == doctest::Approx(29.0 / 12));
  CHECK(fully_mixed_entry11(6, 0.3, 0.1) == doctest::Approx(95.0 / 24));
  CHECK(fully_mixed_entry11(3, kPi / 2, kPi / 4) == doctest::Approx(11.0 / 6));
  CHECK(fully_mixed_entry11(5, 0.0, 0.0) == doctest::Approx(108.0 / 32));

  // r -> 0 limit of the spherical (1,1) entry along a direction.
  auto entry_at_origin = [](int n, const Vec3& dir) {
    const BlochCartesian c(Vec3(1e-6 * dir));
    const auto s = to_spherical(c);
    return congruence_to_spherical(fisher_closed_form(n, c), s).mat3()(0, 0);
  };
  for (const auto& c : test::ball_points(20, 25)) {
    const Vec3 dir = c.vec().normalized();
    const auto s = to_spherical(BlochCartesian(dir * 0.5));
    for (int n : {2, 3, 4, 6}) {
      CHECK(entry_at_origin(n, dir) == doctest::Approx(fully_mixed_entry11(n, s.theta(), s.phi())).epsilon(1e-5));
    }
    // N = 5: angle measured from the (1,1,1) axis.
    const double ax = axis_angle(BlochCartesian(dir * 0.5));
    CHECK(entry_at_origin(5, dir) == doctest::Approx(fully_mixed_entry11(5, ax, 0.0)).epsilon(1e-5));
  }
}

TEST_CASE("pure-state limits") {
  const double r = 1 - 1e-6;
  for (int n = 2; n <= 6; ++n) {
    const auto want = pure_limit_entries(n);
    CHECK(want.entry22 == n / 2.0);
    for (const auto& c0 : test::ball_points(10, 26)) {
      const BlochCartesian c(Vec3(c0.vec().normalized() * r));
      const auto s = to_spherical(c);
      const Mat3 m = congruence_to_spherical(fisher_closed_form(n, c), s).mat3();
      const double st = std::sin(s.theta());
      CHECK(std::abs(m(1, 1) - want.entry22) < 1e-4);
      CHECK(std::abs(m(2, 2) / (st * st) - want.entry33_coeff) < 1e-4);
      CHECK(std::abs(m(1, 2) / st) < 1e-4);
    }
  }
  CHECK(pure_limit_entries(4).entry22 == 2.0);
  CHECK(pure_limit_entries(5).entry22 == 2.5);
}

}
