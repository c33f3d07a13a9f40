#pragma once

#include <span>
#include <vector>

namespace qig {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Throws DomainError for order < 1.
GaussLegendre gauss_legendre(int order);

// Nodes and weights mapped to [a, b].
GaussLegendre gauss_legendre(int order, double a, double b);

// Pairwise (cascade) summation; the result depends only on the order of
// the input, not on how it was produced.
double pairwise_sum(std::span<const double> values);

// Tensor-product rule settings for ball integrals.
struct QuadratureSpec {
  int order = 32;           // radial/polar nodes; azimuthal uses 2*order
  int refine_step = 16;     // second pass uses order + refine_step
  double rel_tol = 1e-7;    // max relative difference between the passes
};

}  // namespace qig
