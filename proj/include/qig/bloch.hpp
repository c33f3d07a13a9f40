#pragma once

// Bloch-ball states and coordinate machinery.
//
// Spherical convention: the polar axis is x, not z.
//
//   x = r cos(theta)
//   y = r sin(theta) cos(phi)
//   z = r sin(theta) sin(phi)
//
// Every spherical formula in this library (diagonal Fisher forms, monotone
// metrics, prior densities) assumes this convention.

#include <Eigen/Core>

#include "qig/error.hpp"

namespace qig {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Tolerance on r <= 1 when validating user-supplied states.
inline constexpr double kBallSlack = 1e-12;

class BlochSpherical;

class BlochCartesian {
 public:
  BlochCartesian() = default;
  // Throws InvalidState if x^2 + y^2 + z^2 > 1 (up to kBallSlack).
  BlochCartesian(double x, double y, double z);
  explicit BlochCartesian(const Vec3& v) : BlochCartesian(v.x(), v.y(), v.z()) {}

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vec3& vec() const { return v_; }
  double r2() const { return v_.squaredNorm(); }
  double r() const { return v_.norm(); }
  bool is_pure() const { return r2() >= 1.0 - kBallSlack; }

 private:
  Vec3 v_ = Vec3::Zero();
};

class BlochSpherical {
 public:
  BlochSpherical() = default;
  // Throws InvalidState unless r in [0,1], theta in [0,pi], phi in [0,2pi).
  BlochSpherical(double r, double theta, double phi);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  // r = 0 or theta in {0, pi}.
  bool degenerate() const;

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

// At r = 0 the angles are set to 0; on the polar axis phi is set to 0.
// Callers test degenerate() on the result.
BlochSpherical to_spherical(const BlochCartesian& c);
BlochCartesian to_cartesian(const BlochSpherical& s);

// d(x,y,z)/d(r,theta,phi). Throws DegenerateCoordinates at degenerate points.
Mat3 jacobian(const BlochSpherical& s);

enum class Coords { cartesian, spherical, pure_m2, pure_m3 };

const char* to_string(Coords c);

// Symmetric information matrix or metric tensor, tagged with its chart.
class InfoMatrix {
 public:
  using Storage = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

  InfoMatrix(Storage m, Coords coords);

  Coords coords() const { return coords_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Storage& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  // Only meaningful for 3x3 charts.
  Mat3 mat3() const;

 private:
  Storage m_;
  Coords coords_;
};

inline constexpr double kSymmetryTol = 1e-12;

// J^T M J for a Cartesian 3x3 matrix.
InfoMatrix congruence_to_spherical(const InfoMatrix& m, const BlochSpherical& s);

}  // namespace qig
