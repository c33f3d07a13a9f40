#pragma once

// Optimal joint measurements on N copies of a qubit: outcome distributions
// for N = 2, 3 and closed-form Fisher information matrices for N = 2..6.
//
// For N = 3..6 the Fisher matrix is written as (N-1) H_q + residual with a
// negative semidefinite residual. N = 7 has reference traces and limits only.

#include <optional>
#include <vector>

#include "qig/bloch.hpp"
#include "qig/infogeo.hpp"

namespace qig {

enum class Availability { probability_model, closed_form_matrix, reference_trace_only };

struct FisherFamily {
  int copies;
  std::vector<Availability> availability;
};

// Throws UnsupportedCopies outside 2..7.
FisherFamily fisher_family(int copies);

// Five outcomes for N = 2, eight for N = 3.
ProbModel vidal_model(int copies);
std::vector<double> vidal_probabilities(int copies, const BlochCartesian& c);

// N = 2..6, r < 1. N = 7 throws UnsupportedCopies; r = 1 throws PureStateError.
InfoMatrix fisher_closed_form(int copies, const BlochCartesian& c);
// F_N - (N-1) H_q (zero for N = 2).
Mat3 residual(int copies, const BlochCartesian& c);

// Diagonal spherical forms for N = 2, 4, 6.
InfoMatrix fisher_spherical_diag(int copies, const BlochSpherical& s);

// Gill-Massar trace polynomials tr(H_q^{-1} F_N), N = 2..7.
double gm_trace_reference(int copies, double r);

// Unit vector (1,1,1)/sqrt(3): the symmetry axis of the N = 3 and N = 5
// closed forms.
Vec3 odd_symmetry_axis();

// Angle between the Bloch vector and odd_symmetry_axis(); r > 0.
double axis_angle(const BlochCartesian& c);

// r -> 0 limit of the spherical (1,1) entry of F_N.
//
// N = 2, 4, 6: constants. N = 3, 7: functions of (theta, phi) in the
// x-polar chart. N = 5: (103 + 5 cos 2 theta)/32 with theta measured from
// odd_symmetry_axis(); phi is unused.
double fully_mixed_entry11(int copies, double theta, double phi);

// r -> 1 limits of the spherical matrix: (2,2) -> N/2, (3,3) -> N sin^2(theta)/2,
// off-diagonals -> 0.
struct PureLimitEntries {
  double entry22;
  double entry33_coeff;
  double offdiag;
};
PureLimitEntries pure_limit_entries(int copies);

}  // namespace qig
