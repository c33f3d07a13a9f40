#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qig/bloch.hpp"
#include "qig/rng.hpp"

namespace qig::test {

inline constexpr double kPi = std::numbers::pi;

// Uniform points in the ball of radius rmax, away from the origin.
inline std::vector<BlochCartesian> ball_points(std::size_t n, std::uint64_t stream, double rmax = 0.95) {
  PhiloxStream rng(2718281828, stream);
  std::vector<BlochCartesian> pts;
  while (pts.size() < n) {
    const double r = rmax * std::cbrt(rng.next_double());
    const double ct = 1.0 - 2.0 * rng.next_double();
    const double ph = 2.0 * kPi * rng.next_double();
    const double st = std::sqrt(1.0 - ct * ct);
    if (r < 1e-3) continue;
    pts.emplace_back(r * st * std::cos(ph), r * st * std::sin(ph), r * ct);
  }
  return pts;
}

inline double rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace qig::test
