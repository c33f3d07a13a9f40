#include "qig/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qig {

namespace {

void require_copies(int n, int lo, int hi) {
  if (n < lo || n > hi) throw UnsupportedCopies(n);
}

template <typename S>
std::vector<S> vidal2(const S& x, const S& y, const S& z) {
  const double r2c = std::numbers::sqrt2;
  const double r3c = std::numbers::sqrt3;
  const S zm3 = z - S(3.0);
  const S r2 = x * x + y * y + z * z;
  const S common = S(9.0) + S(2.0) * x * x + S(6.0) * y * y - S(6.0) * z + z * z;
  const S cross = S(4.0 * r3c) * x * y;
  return {
      (S(1.0) - r2) / S(4.0),
      S(3.0 / 16.0) * (S(1.0) + z) * (S(1.0) + z),
      (S(8.0) * x * x - S(4.0 * r2c) * x * zm3 + zm3 * zm3) / S(48.0),
      (common + cross + S(2.0 * r2c) * (x + S(r3c) * y) * zm3) / S(48.0),
      (common - cross + S(2.0 * r2c) * (x - S(r3c) * y) * zm3) / S(48.0),
  };
}

template <typename S>
std::vector<S> vidal3(const S& x, const S& y, const S& z) {
  const S one(1.0);
  const S r2 = x * x + y * y + z * z;
  const S u = (x + y + z) / S(std::numbers::sqrt3);
  auto cube = [](const S& a) { return a * a * a / S(12.0); };
  return {cube(one + x), cube(one - x), cube(one + y), cube(one - y),
          cube(one + z), cube(one - z),
          (one + u) * (one - r2) / S(4.0), (one - u) * (one - r2) / S(4.0)};
}

Mat3 residual3(double x, double y, double z) {
  const double a = 2.0 * (1.0 - x * y - x * z - y * z);
  const double b = -1.0 + x * x + y * y + z * z;
  Mat3 m;
  m << a, b, b, b, a, b, b, b, a;
  const double s = x + y + z;
  return m / (2.0 * (s * s - 3.0));
}

Mat3 residual4(double x, double y, double z) {
  Mat3 m;
  m << -7 - 5 * y * y - 5 * z * z, 5 * x * y, 5 * x * z,
       5 * x * y, -7 - 5 * x * x - 5 * z * z, 5 * y * z,
       5 * x * z, 5 * y * z, -7 - 5 * x * x - 5 * y * y;
  return m / 12.0;
}

// (1,1) cell of the N = 5 residual numerator.
double n5_cell11(double x, double y, double z) {
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  return -2.0 * (-20 + 7 * y2 * y2 + 9 * y2 * y * z - 11 * z2 + 7 * z2 * z2 -
                 5 * x2 * x * (y + z) + 3 * y * z * (5 + 3 * z2) +
                 3 * x * (y + z) * (5 + 3 * y2 + 3 * z2) +
                 x2 * (10 + 7 * y2 - 5 * y * z + 7 * z2) + y2 * (-11 + 14 * z2));
}

// (1,2) cell of the N = 5 residual numerator.
double n5_cell12(double x, double y, double z) {
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double q = -1 + y2 + z2;
  const double yz = y + z;
  return -5 * x2 * x2 + 14 * x2 * x * y + 2 * x2 * (5 + 9 * y2 + 14 * y * z - 5 * z2) -
         5 * q * q + 14 * x * y * (-3 + yz * yz);
}

// Cells not displayed explicitly follow from relabelling axes:
//   (2,2) = (1,1)[x<->y], (3,3) = (1,1)[x<->z],
//   (1,3) = (1,2)[y<->z], (2,3) = (1,2)[x->y->z->x].
Mat3 residual5(double x, double y, double z) {
  const double d11 = n5_cell11(x, y, z);
  const double d22 = n5_cell11(y, x, z);
  const double d33 = n5_cell11(z, y, x);
  const double d12 = n5_cell12(x, y, z);
  const double d13 = n5_cell12(x, z, y);
  const double d23 = n5_cell12(y, z, x);
  Mat3 m;
  m << d11, d12, d13, d12, d22, d23, d13, d23, d33;
  const double s = x + y + z;
  return m / (16.0 * (-3.0 + s * s));
}

double n6_diag(double x, double y, double z) {
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double t = y2 + z2;
  return -125 - 146 * y2 - 146 * z2 + 31 * t * t + x2 * (47 + 31 * y2 + 31 * z2);
}

Mat3 residual6(double x, double y, double z) {
  const double a = 193.0 - 31.0 * (x * x + y * y + z * z);
  Mat3 m;
  m << n6_diag(x, y, z), a * x * y, a * x * z,
       a * x * y, n6_diag(y, x, z), a * y * z,
       a * x * z, a * y * z, n6_diag(z, y, x);
  return m / 120.0;
}

}  // namespace

FisherFamily fisher_family(int copies) {
  require_copies(copies, 2, 7);
  switch (copies) {
    case 2:
    case 3: return {copies, {Availability::probability_model, Availability::closed_form_matrix}};
    case 7: return {copies, {Availability::reference_trace_only}};
    default: return {copies, {Availability::closed_form_matrix}};
  }
}

ProbModel vidal_model(int copies) {
  require_copies(copies, 2, 3);
  if (copies == 2) {
    return ProbModel::make("vidal-n2", 5, [](const auto& x, const auto& y, const auto& z) {
      return vidal2(x, y, z);
    });
  }
  return ProbModel::make("vidal-n3", 8, [](const auto& x, const auto& y, const auto& z) {
    return vidal3(x, y, z);
  });
}

std::vector<double> vidal_probabilities(int copies, const BlochCartesian& c) {
  require_copies(copies, 2, 3);
  return copies == 2 ? vidal2(c.x(), c.y(), c.z()) : vidal3(c.x(), c.y(), c.z());
}

Mat3 residual(int copies, const BlochCartesian& c) {
  require_copies(copies, 2, 6);
  if (c.r2() >= 1.0) throw PureStateError("closed-form Fisher matrices need r < 1");
  const double x = c.x(), y = c.y(), z = c.z();
  switch (copies) {
    case 2: return Mat3::Zero();
    case 3: return residual3(x, y, z);
    case 4: return residual4(x, y, z);
    case 5: return residual5(x, y, z);
    default: return residual6(x, y, z);
  }
}

InfoMatrix fisher_closed_form(int copies, const BlochCartesian& c) {
  require_copies(copies, 2, 6);
  const Mat3 h = helstrom_cartesian(c).mat3();
  return InfoMatrix(Mat3((copies - 1) * h + residual(copies, c)), Coords::cartesian);
}

InfoMatrix fisher_spherical_diag(int copies, const BlochSpherical& s) {
  if (copies != 2 && copies != 4 && copies != 6) throw UnsupportedCopies(copies);
  if (s.degenerate()) throw DegenerateCoordinates("diagonal forms need r > 0 and theta in (0,pi)");
  const double r = s.r();
  if (r >= 1.0) throw PureStateError("Fisher matrix diverges at r = 1");
  const double r2 = r * r, r4 = r2 * r2;
  const double st2 = std::pow(std::sin(s.theta()), 2);
  double radial = 0.0, angular = 0.0;
  switch (copies) {
    case 2:
      radial = 1.0 / (1.0 - r2);
      angular = r2;
      break;
    case 4:
      radial = (29.0 + 7.0 * r2) / (12.0 * (1.0 - r2));
      angular = r2 * (29.0 - 5.0 * r2) / 12.0;
      break;
    default:
      radial = (475.0 + 172.0 * r2 - 47.0 * r4) / (120.0 * (1.0 - r2));
      angular = r2 * (475.0 - 146.0 * r2 + 31.0 * r4) / 120.0;
      break;
  }
  Mat3 m = Mat3::Zero();
  m(0, 0) = radial;
  m(1, 1) = angular;
  m(2, 2) = angular * st2;
  return InfoMatrix(m, Coords::spherical);
}

double gm_trace_reference(int copies, double r) {
  require_copies(copies, 2, 7);
  const double r2 = r * r, r4 = r2 * r2;
  switch (copies) {
    case 2: return 3.0;
    case 3: return 5.0;
    case 4: return (29.0 - r2) / 4.0;
    case 5: return (19.0 - r2) / 2.0;
    case 6: return (95.0 - 8.0 * r2 + r4) / 8.0;
    default: return (57.0 - 6.0 * r2 + r4) / 4.0;
  }
}

Vec3 odd_symmetry_axis() { return Vec3::Ones().normalized(); }

double axis_angle(const BlochCartesian& c) {
  const double r = c.r();
  if (r <= 0.0) throw DegenerateCoordinates("axis angle undefined at r = 0");
  return std::acos(std::clamp(c.vec().dot(odd_symmetry_axis()) / r, -1.0, 1.0));
}

double fully_mixed_entry11(int copies, double theta, double phi) {
  require_copies(copies, 2, 7);
  const double s2t = std::sin(2 * theta);
  const double st2 = std::pow(std::sin(theta), 2);
  switch (copies) {
    case 2: return 1.0;
    case 3:
      return (10.0 + s2t * (std::cos(phi) + std::sin(phi)) + st2 * std::sin(2 * phi)) / 6.0;
    case 4: return 29.0 / 12.0;
    case 5: return (103.0 + 5.0 * std::cos(2 * theta)) / 32.0;
    case 6: return 95.0 / 24.0;
    default:
      return (456.0 * std::pow(std::cos(theta), 2) + 7.0 * s2t * (std::cos(phi) + std::sin(phi)) +
              st2 * (456.0 + 7.0 * std::sin(2 * phi))) /
             96.0;
  }
}

PureLimitEntries pure_limit_entries(int copies) {
  require_copies(copies, 2, 7);
  return {copies / 2.0, copies / 2.0, 0.0};
}

}  // namespace qig
