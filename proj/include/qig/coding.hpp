#pragma once

// Asymptotic redundancy of universal codes for the qubit family: the
// classical (quadrinomial) expansion with Jeffreys' prior and its quantum
// counterpart with the quasi-Bures prior. All logarithms are natural.

#include <functional>
#include <optional>
#include <string>

#include "qig/bloch.hpp"
#include "qig/quadrature.hpp"

namespace qig {

// Printed normalization of the quasi-Bures prior.
inline constexpr double kQuasiBuresConstant = 0.0832258;

enum class PriorTag { jeffreys_classical, quasi_bures, custom };

// A prior density on the ball of the form W(r, theta, phi) = w(r) r^2 sin(theta).
struct PriorKind {
  PriorTag tag = PriorTag::jeffreys_classical;
  std::function<double(double)> radial;  // custom only: w(r)

  static PriorKind jeffreys() { return {PriorTag::jeffreys_classical, {}}; }
  static PriorKind quasi_bures() { return {PriorTag::quasi_bures, {}}; }
  static PriorKind custom(std::function<double(double)> w) { return {PriorTag::custom, std::move(w)}; }
  // 3/(4 pi): uniform on the ball.
  static PriorKind uniform_ball();
};

const char* to_string(PriorTag t);

// ((1-r)/(1+r))^{1/(2r)}, with its limit 1/e at r = 0.
double quasi_bures_radial_factor(double r);

// w(r) of the prior. r in [0,1); DomainError outside.
double prior_radial(const PriorKind& kind, double r);

// W(r, theta, phi). Requires 0 < r < 1, theta in (0, pi).
double prior_value(const PriorKind& kind, const BlochSpherical& s);

// Integral of W over the unit ball (r = sin u substitution, Gauss-Legendre
// in u; the angular factor integrates to 4 pi exactly).
double prior_integral(const PriorKind& kind, const QuadratureSpec& quad = {});

// 1 / integral of e/(1-r^2) ((1-r)/(1+r))^{1/(2r)} r^2 sin(theta) over the ball.
double quasi_bures_normalization(const QuadratureSpec& quad = {});

// |I_c| = 64 r^4 sin^2(theta) / (1 - r^2) for the quadrinomial family.
double classical_info_determinant(const BlochSpherical& s);

// (3/2) log(N/(2 pi e)) + (1/2) log|I_c| - log W.
double classical_redundancy(double copies, const BlochSpherical& s, const PriorKind& prior);

// I_q(r) = e^2/(1-r^2)^2 ((1-r)/(1+r))^{1/r}; r in (0,1).
double quantum_info_scalar(double r);

// (3/2) log(N/(2 pi e)) + (1/2) log I_q(r) - log w_q(r).
double quantum_redundancy(double copies, double r, const PriorKind& prior);

// Leading terms at the endpoints of the radial range.
enum class EndpointCase { mixed, pure_continuous, pure_jeffreys };

// prior_at_endpoint is w_q(0) for mixed and w_q(1) for pure_continuous
// (DomainError when missing); pure_jeffreys ignores it.
double endpoint_asymptotics(EndpointCase c, double copies,
                            std::optional<double> prior_at_endpoint = std::nullopt);

inline constexpr double nats_to_bits(double nats) { return nats * 1.4426950408889634; }

}  // namespace qig
