#include "qig/coding.hpp"

#include <cmath>
#include <numbers>

#include "qig/error.hpp"

namespace qig {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double log_leading(double copies) {
  if (!(copies > 0.0)) throw DomainError("number of copies must be positive");
  return 1.5 * std::log(copies / (2.0 * kPi * kE));
}

void require_open_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
}

// atanh(r)/r, accurate down to r = 0.
double atanh_over_r(double r) {
  if (r < 1e-3) {
    const double r2 = r * r;
    return 1.0 + r2 / 3.0 + r2 * r2 / 5.0 + r2 * r2 * r2 / 7.0;
  }
  return std::atanh(r) / r;
}

}  // namespace

PriorKind PriorKind::uniform_ball() {
  return custom([](double) { return 3.0 / (4.0 * kPi); });
}

const char* to_string(PriorTag t) {
  switch (t) {
    case PriorTag::jeffreys_classical: return "jeffreys";
    case PriorTag::quasi_bures: return "quasi-bures";
    case PriorTag::custom: return "custom";
  }
  return "?";
}

double quasi_bures_radial_factor(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r must lie in [0,1]");
  if (r == 1.0) return 0.0;
  // log((1-r)/(1+r)) / (2r) = -atanh(r)/r
  return std::exp(-atanh_over_r(r));
}

double prior_radial(const PriorKind& kind, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("prior density needs r in [0,1)");
  switch (kind.tag) {
    case PriorTag::jeffreys_classical: return 1.0 / (kPi * kPi * std::sqrt(1.0 - r * r));
    case PriorTag::quasi_bures:
      return kQuasiBuresConstant * kE / (1.0 - r * r) * quasi_bures_radial_factor(r);
    case PriorTag::custom:
      if (!kind.radial) throw DomainError("custom prior without a radial density");
      return kind.radial(r);
  }
  throw DomainError("unknown prior");
}

double prior_value(const PriorKind& kind, const BlochSpherical& s) {
  require_open_radius(s.r());
  if (s.degenerate()) throw DegenerateCoordinates("prior density needs theta in (0,pi)");
  return prior_radial(kind, s.r()) * s.r() * s.r() * std::sin(s.theta());
}

namespace {

// Integral over the ball of w(r) r^2 sin(theta), via r = sin(u).
double radial_ball_integral(const std::function<double(double)>& w, int order) {
  const auto q = gauss_legendre(order, 0.0, kPi / 2.0);
  std::vector<double> terms(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double r = std::sin(q.nodes[i]);
    terms[i] = q.weights[i] * w(r) * r * r * std::cos(q.nodes[i]);
  }
  return 4.0 * kPi * pairwise_sum(terms);
}

double converged_integral(const std::function<double(double)>& w, const QuadratureSpec& quad) {
  const double a = radial_ball_integral(w, quad.order);
  const double b = radial_ball_integral(w, quad.order + quad.refine_step);
  if (std::abs(a - b) > quad.rel_tol * std::abs(b)) {
    throw NonConvergence("prior integral did not converge: " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
  return b;
}

}  // namespace

double prior_integral(const PriorKind& kind, const QuadratureSpec& quad) {
  return converged_integral([&](double r) { return prior_radial(kind, r); }, quad);
}

double quasi_bures_normalization(const QuadratureSpec& quad) {
  return 1.0 / converged_integral(
                   [](double r) { return kE / (1.0 - r * r) * quasi_bures_radial_factor(r); }, quad);
}

double classical_info_determinant(const BlochSpherical& s) {
  require_open_radius(s.r());
  if (s.degenerate()) throw DegenerateCoordinates("determinant needs theta in (0,pi)");
  const double r2 = s.r() * s.r();
  const double st = std::sin(s.theta());
  return 64.0 / (1.0 - r2) * r2 * r2 * st * st;
}

double classical_redundancy(double copies, const BlochSpherical& s, const PriorKind& prior) {
  return log_leading(copies) + 0.5 * std::log(classical_info_determinant(s)) -
         std::log(prior_value(prior, s));
}

double quantum_info_scalar(double r) {
  require_open_radius(r);
  const double f = quasi_bures_radial_factor(r);
  return kE * kE / std::pow(1.0 - r * r, 2) * f * f;
}

double quantum_redundancy(double copies, double r, const PriorKind& prior) {
  require_open_radius(r);
  return log_leading(copies) + 0.5 * std::log(quantum_info_scalar(r)) -
         std::log(prior_radial(prior, r));
}

double endpoint_asymptotics(EndpointCase c, double copies, std::optional<double> prior_at_endpoint) {
  if (!(copies > 0.0)) throw DomainError("number of copies must be positive");
  const double ln_n = std::log(copies);
  auto prior = [&] {
    if (!prior_at_endpoint) throw DomainError("endpoint prior value required");
    if (!(*prior_at_endpoint > 0.0)) throw DomainError("endpoint prior value must be positive");
    return *prior_at_endpoint;
  };
  switch (c) {
    case EndpointCase::mixed: return log_leading(copies) - std::log(prior());
    case EndpointCase::pure_continuous:
      return 2.0 * ln_n - 3.0 * std::log(2.0) - std::log(kPi) - std::log(prior());
    case EndpointCase::pure_jeffreys:
      return 1.5 * ln_n + 0.5 * std::log(kPi) - 2.0 * std::log(2.0);
  }
  throw DomainError("unknown endpoint case");
}

}  // namespace qig
