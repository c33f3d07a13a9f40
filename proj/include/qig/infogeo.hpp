#pragma once

// Helstrom and monotone-metric tensors, outcome-probability models with
// exact gradients, and the Fisher-information engine.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qig/bloch.hpp"
#include "qig/dual.hpp"

namespace qig {

// Outcome distribution p(x, y, z) over the Bloch ball.
//
// A model is written once as a generic callable f(x, y, z) -> std::vector<S>
// and instantiated for first- and second-order dual numbers, so gradients
// and Hessians are exact.
class ProbModel {
 public:
  using D1 = Dual<double, 3>;
  using D2 = Dual<D1, 3>;
  using Fn1 = std::function<std::vector<D1>(const D1&, const D1&, const D1&)>;
  using Fn2 = std::function<std::vector<D2>(const D2&, const D2&, const D2&)>;

  template <typename F>
  static ProbModel make(std::string name, std::size_t n_outcomes, F f) {
    return ProbModel(std::move(name), n_outcomes, Fn1(f), Fn2(f));
  }

  const std::string& name() const { return name_; }
  std::size_t n_outcomes() const { return n_; }

  // Raw coordinates are accepted so optimizers can probe iterates; the
  // BlochCartesian overloads are the validated entry points.
  std::vector<double> probabilities(const Vec3& p) const;
  std::vector<double> probabilities(const BlochCartesian& c) const { return probabilities(c.vec()); }

  // n_outcomes x 3, row i = grad p_i.
  Eigen::MatrixX3d gradient(const Vec3& p) const;
  Eigen::MatrixX3d gradient(const BlochCartesian& c) const { return gradient(c.vec()); }

  // Values, gradients and Hessians together.
  struct Jet {
    std::vector<double> p;
    Eigen::MatrixX3d grad;
    std::vector<Mat3> hess;
  };
  Jet jet2(const Vec3& p) const;

  // Product distribution of k independent trials of this model
  // (n_outcomes^k outcomes).
  ProbModel power(unsigned k) const;

 private:
  ProbModel(std::string name, std::size_t n, Fn1 f1, Fn2 f2)
      : name_(std::move(name)), n_(n), f1_(std::move(f1)), f2_(std::move(f2)) {}

  std::vector<D1> eval1(const Vec3& p) const;

  std::string name_;
  std::size_t n_;
  Fn1 f1_;
  Fn2 f2_;
};

// The four-outcome model x^2, y^2, z^2, 1 - r^2.
ProbModel quadrinomial_model();

inline constexpr double kDefaultMinProbability = 1e-12;

// I_jk = sum_i d_j p_i d_k p_i / p_i, Cartesian chart.
// Throws ZeroProbability if any p_i <= min_probability.
InfoMatrix fisher_information(const ProbModel& m, const BlochCartesian& c,
                              double min_probability = kDefaultMinProbability);

// Helstrom (SLD) information matrix, four times the Bures metric.
// Throws PureStateError for r >= 1.
InfoMatrix helstrom_cartesian(const BlochCartesian& c);
// diag(1/(1-r^2), r^2, r^2 sin^2 theta). Throws PureStateError at r = 1.
InfoMatrix helstrom_spherical(const BlochSpherical& s);
// Closed-form inverse; finite on the whole closed ball.
InfoMatrix helstrom_inverse(const BlochCartesian& c);

enum class MetricTag { helstrom, yuen_lax, quasi_bures, fitted_n2, fitted_n4, fitted_n6, custom };

// Selects g(s) in the monotone-metric tensor
//   diag(1/(1-r^2), r^2 g(s)/(1+r), r^2 g(s) sin^2 theta/(1+r)),  s = (1-r)/(1+r).
//
// helstrom, yuen_lax and quasi_bures carry metric-level g:
//   helstrom     2/(1+s)
//   yuen_lax     (1+s)/(2s)
//   quasi_bures  e s^{s/(1-s)}
// The fitted kinds are per-copy fits obtained from the even-N Fisher
// matrices, i.e. F_N(2,2) = N r^2 g(s)/(1+r); fitted_n2 = 1/(1+s) is
// helstrom's g divided by two.
struct MetricKind {
  MetricTag tag = MetricTag::helstrom;
  std::function<double(double)> g;  // custom only

  static MetricKind helstrom() { return {MetricTag::helstrom, {}}; }
  static MetricKind yuen_lax() { return {MetricTag::yuen_lax, {}}; }
  static MetricKind quasi_bures() { return {MetricTag::quasi_bures, {}}; }
  static MetricKind fitted_n2() { return {MetricTag::fitted_n2, {}}; }
  static MetricKind fitted_n4() { return {MetricTag::fitted_n4, {}}; }
  static MetricKind fitted_n6() { return {MetricTag::fitted_n6, {}}; }
  static MetricKind custom(std::function<double(double)> g) { return {MetricTag::custom, std::move(g)}; }
};

const char* to_string(MetricTag t);

// s must lie in (0,1]; yuen_lax diverges at s = 0 (DomainError).
double g_function(const MetricKind& kind, double s);

// Spherical monotone metric. Requires 0 < r < 1 and theta in (0, pi).
InfoMatrix monotone_metric(const MetricKind& kind, const BlochSpherical& s);

// The same tensor in Cartesian form,
//   G = n n^T / (1-r^2) + g(s)/(1+r) (I - n n^T),  n = unit radial vector,
// which is regular on the polar axis. Requires 0 < r < 1.
InfoMatrix monotone_metric_cartesian(const MetricKind& kind, const BlochCartesian& c);
// Its inverse, built from the same radial/tangential split.
Mat3 monotone_metric_inverse_cartesian(const MetricKind& kind, const BlochCartesian& c);

// Pure two-level states, (theta, phi) chart: diag(1, sin^2 theta).
InfoMatrix pure_helstrom_m2(double theta);

// Pure three-level states
//   |psi> = e^{i chi1} sin(theta)cos(phi)|1> + e^{i chi2} sin(theta)sin(phi)|2> + cos(theta)|3>
// in the (theta, phi, chi1, chi2) chart. The matrix does not depend on
// chi1 or chi2, so they are not parameters.
InfoMatrix pure_helstrom_m3(double theta, double phi);

// False when N copies cannot carry the quadrinomial Fisher information
// 4 H_q under the additive quantum bound N H_q, i.e. N < 4.
bool cr_oprom_feasibility(int copies);

}  // namespace qig
