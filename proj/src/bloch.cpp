#include "qig/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qig {

namespace {
constexpr double kPi = std::numbers::pi;
}

BlochCartesian::BlochCartesian(double x, double y, double z) : v_(x, y, z) {
  if (!v_.allFinite() || v_.squaredNorm() > 1.0 + kBallSlack) {
    throw InvalidState("point outside the Bloch ball: r^2 = " +
                       std::to_string(v_.squaredNorm()));
  }
}

BlochSpherical::BlochSpherical(double r, double theta, double phi)
    : r_(r), theta_(theta), phi_(phi) {
  if (!(r >= 0.0 && r <= 1.0 + kBallSlack)) throw InvalidState("r must lie in [0,1]");
  if (!(theta >= 0.0 && theta <= kPi)) throw InvalidState("theta must lie in [0,pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi)) throw InvalidState("phi must lie in [0,2pi)");
}

bool BlochSpherical::degenerate() const {
  return r_ == 0.0 || theta_ == 0.0 || theta_ == kPi;
}

BlochSpherical to_spherical(const BlochCartesian& c) {
  const double r = c.r();
  if (r == 0.0) return BlochSpherical(0.0, 0.0, 0.0);
  const double theta = std::acos(std::clamp(c.x() / r, -1.0, 1.0));
  double phi = std::atan2(c.z(), c.y());
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return BlochSpherical(std::min(r, 1.0), theta, phi);
}

BlochCartesian to_cartesian(const BlochSpherical& s) {
  const double st = std::sin(s.theta());
  Vec3 v(s.r() * std::cos(s.theta()), s.r() * st * std::cos(s.phi()),
         s.r() * st * std::sin(s.phi()));
  // Rounding can push a pure state a hair past r = 1.
  const double n = v.norm();
  if (n > 1.0) v /= n;
  return BlochCartesian(v);
}

Mat3 jacobian(const BlochSpherical& s) {
  if (s.degenerate()) {
    throw DegenerateCoordinates("Jacobian undefined at r=0 or theta in {0,pi}");
  }
  const double r = s.r();
  const double ct = std::cos(s.theta()), st = std::sin(s.theta());
  const double cp = std::cos(s.phi()), sp = std::sin(s.phi());
  Mat3 j;
  j << ct, -r * st, 0.0,
       st * cp, r * ct * cp, -r * st * sp,
       st * sp, r * ct * sp, r * st * cp;
  return j;
}

const char* to_string(Coords c) {
  switch (c) {
    case Coords::cartesian: return "cartesian";
    case Coords::spherical: return "spherical";
    case Coords::pure_m2: return "pure-m2";
    case Coords::pure_m3: return "pure-m3";
  }
  return "?";
}

InfoMatrix::InfoMatrix(Storage m, Coords coords) : m_(std::move(m)), coords_(coords) {
  const Eigen::Index want = coords == Coords::pure_m2 ? 2 : coords == Coords::pure_m3 ? 4 : 3;
  if (m_.rows() != want || m_.cols() != want) {
    throw ShapeMismatch(std::string("matrix dimension does not match chart ") +
                        to_string(coords));
  }
  if (!m_.allFinite()) throw DomainError("non-finite information matrix");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw DomainError("information matrix is not symmetric");
  }
  // Store the exact symmetric part.
  m_ = 0.5 * (m_ + m_.transpose()).eval();
}

Mat3 InfoMatrix::mat3() const {
  if (dim() != 3) throw ShapeMismatch("expected a 3x3 information matrix");
  return m_.topLeftCorner<3, 3>();
}

InfoMatrix congruence_to_spherical(const InfoMatrix& m, const BlochSpherical& s) {
  if (m.coords() != Coords::cartesian) {
    throw ShapeMismatch("congruence_to_spherical expects a Cartesian matrix");
  }
  const Mat3 j = jacobian(s);
  return InfoMatrix(j.transpose() * m.mat3() * j, Coords::spherical);
}

}  // namespace qig
