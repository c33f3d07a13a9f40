#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "qig/coding.hpp"
#include "qig/infogeo.hpp"
#include "support.hpp"

using namespace qig;
using qig::test::kPi;

namespace {
constexpr double kE = std::numbers::e;
}

TEST_SUITE("coding") {

TEST_CASE("classical information determinant") {
  CHECK(classical_info_determinant(BlochSpherical(0.5, kPi / 2, 0)) == doctest::Approx(16.0 / 3));
  for (const auto& c : test::ball_points(100, 40)) {
    const auto s = to_spherical(c);
    const double h = helstrom_spherical(s).mat3().determinant();
    CHECK(classical_info_determinant(s) / h == doctest::Approx(64.0).epsilon(1e-10));
  }
  CHECK(classical_info_determinant(BlochSpherical(1e-4, 1.0, 0)) < 1e-12);
  CHECK_THROWS_AS(classical_info_determinant(BlochSpherical(1.0, 1.0, 0)), DomainError);
  CHECK_THROWS_AS(classical_info_determinant(BlochSpherical(0.5, 0.0, 0)), DegenerateCoordinates);
}

TEST_CASE("prior normalizations") {
  CHECK(std::abs(prior_integral(PriorKind::jeffreys()) - 1) <= 1e-6);
  CHECK(std::abs(prior_integral(PriorKind::quasi_bures()) - 1) <= 1e-4);
  CHECK(std::abs(prior_integral(PriorKind::uniform_ball()) - 1) <= 1e-12);
  const double c = quasi_bures_normalization();
  CHECK(c == doctest::Approx(kQuasiBuresConstant).epsilon(1e-6));
  CHECK_THROWS_AS(prior_integral(PriorKind::custom({})), DomainError);
}

TEST_CASE("prior values") {
  const BlochSpherical s(0.5, kPi / 2, 0);
  CHECK(prior_value(PriorKind::jeffreys(), s) == doctest::Approx(0.25 / (kPi * kPi * std::sqrt(0.75))));
  for (const auto& c : test::ball_points(100, 41)) {
    const auto sp = to_spherical(c);
    const double wc = prior_value(PriorKind::jeffreys(), sp);
    CHECK(wc * wc * 64 * std::pow(kPi, 4) == doctest::Approx(classical_info_determinant(sp)).epsilon(1e-9));
    const double wq = prior_value(PriorKind::quasi_bures(), sp);
    const double st = std::sin(sp.theta());
    const double lhs = quantum_info_scalar(sp.r()) * std::pow(sp.r(), 4) * st * st;
    CHECK(lhs / (wq * wq) == doctest::Approx(1 / (kQuasiBuresConstant * kQuasiBuresConstant)).epsilon(1e-12));
    CHECK(lhs / (wq * wq) == doctest::Approx(144.372).epsilon(0.01 / 144.372));
  }
  // Radial factor at r -> 0: e * e^{-1} * constant.
  CHECK(prior_radial(PriorKind::quasi_bures(), 0.0) == doctest::Approx(kQuasiBuresConstant));
  CHECK(prior_radial(PriorKind::quasi_bures(), 1e-5) == doctest::Approx(kQuasiBuresConstant).epsilon(1e-5));
  CHECK(quasi_bures_radial_factor(0.0) == doctest::Approx(1 / kE));
  CHECK(quasi_bures_radial_factor(1e-3 * 0.999) ==
        doctest::Approx(std::pow((1 - 0.000999) / (1 + 0.000999), 1 / (2 * 0.000999))).epsilon(1e-12));
  CHECK(quasi_bures_radial_factor(0.5) == doctest::Approx(std::pow(1.0 / 3, 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(prior_value(PriorKind::jeffreys(), BlochSpherical(0.0, 1.0, 0)), DomainError);
}

TEST_CASE("classical redundancy") {
  const PriorKind j = PriorKind::jeffreys();
  const double a = classical_redundancy(100, BlochSpherical(0.3, 1.0, 0.2), j);
  const double b = classical_redundancy(100, BlochSpherical(0.9, 2.0, 4.0), j);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(a == doctest::Approx(1.5 * std::log(100 / (2 * kPi * kE)) + std::log(8 * kPi * kPi)).epsilon(1e-12));
  // Jeffreys is flat in redundancy; the uniform prior is above it somewhere and below elsewhere.
  const PriorKind u = PriorKind::uniform_ball();
  const double near_center = classical_redundancy(100, BlochSpherical(0.1, kPi / 2, 0), u);
  const double near_edge = classical_redundancy(100, BlochSpherical(0.999, kPi / 2, 0), u);
  CHECK(near_center < a);
  CHECK(near_edge > a);
}

TEST_CASE("quantum redundancy") {
  const PriorKind q = PriorKind::quasi_bures();
  for (double r = 0.01; r < 1.0; r += 0.01) {
    CHECK(0.5 * std::log(quantum_info_scalar(r)) < 0.5 * std::log(64 / (1 - r * r)));
    const double diff = quantum_redundancy(50, r, q) - quantum_redundancy(25, r, q);
    CHECK(diff == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(quantum_info_scalar(0.0), DomainError);
  CHECK_THROWS_AS(quantum_info_scalar(1.0), DomainError);
  CHECK_THROWS_AS(quantum_redundancy(0, 0.5, q), DomainError);
}

TEST_CASE("endpoint asymptotics") {
  CHECK(endpoint_asymptotics(EndpointCase::pure_jeffreys, kE * kE) ==
        doctest::Approx(3 + 0.5 * std::log(kPi) - 2 * std::log(2.0)));
  CHECK(endpoint_asymptotics(EndpointCase::pure_continuous, 10, 1.0) ==
        doctest::Approx(2 * std::log(10.0) - 3 * std::log(2.0) - std::log(kPi)));
  CHECK(endpoint_asymptotics(EndpointCase::mixed, 7, 1.0) == doctest::Approx(1.5 * std::log(7 / (2 * kPi * kE))));
  CHECK_THROWS_AS(endpoint_asymptotics(EndpointCase::mixed, 7), DomainError);
  CHECK_THROWS_AS(endpoint_asymptotics(EndpointCase::pure_continuous, 7), DomainError);
  // The mixed endpoint is the r -> 0 limit of the quantum expansion.
  const double w0 = prior_radial(PriorKind::quasi_bures(), 0.0);
  const double near0 = quantum_redundancy(40, 1e-6, PriorKind::custom([w0](double) { return w0; }));
  CHECK(near0 == doctest::Approx(endpoint_asymptotics(EndpointCase::mixed, 40, w0)).epsilon(1e-6));
}

TEST_CASE("nats to bits") {
  CHECK(nats_to_bits(1.0) == doctest::Approx(1.4427).epsilon(1e-4));
  CHECK(nats_to_bits(std::log(8.0)) == doctest::Approx(3.0).epsilon(1e-14));
}

}
