#pragma once

// Traces, limits, dominance scans, volume integrals and figure curves built
// on the closed-form Fisher matrices.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qig/bloch.hpp"
#include "qig/infogeo.hpp"
#include "qig/povm.hpp"
#include "qig/quadrature.hpp"

namespace qig {

// tr(G^{-1} F_N) for N = 2..6 at 0 < r < 1 (DomainError at the endpoints;
// use limit_trace there). Computed in the Cartesian chart.
double gm_trace(const MetricKind& metric, int copies, const BlochCartesian& c);

// Same trace evaluated in the spherical chart; non-degenerate points only.
double gm_trace_spherical(const MetricKind& metric, int copies, const BlochSpherical& s);

// Closed-form traces under the Yuen-Lax metric, N in {2, 4, 5, 6}.
// For N = 5, theta is the angle between the Bloch vector and
// odd_symmetry_axis() (see axis_angle) and is required.
double modified_trace_reference(int copies, double r, std::optional<double> theta = std::nullopt);

enum class Endpoint { pure, mixed };

// Endpoint value of gm_trace by evaluation at distance 1e-8 from the
// endpoint along a fixed generic direction, plus one Richardson step.
double limit_trace(const MetricKind& metric, int copies, Endpoint endpoint);

// Direction used by limit_trace.
Vec3 limit_direction();

// Absolute PSD tolerance on eigenvalues after scaling to unit Frobenius norm.
inline constexpr double kPsdTol = 1e-10;

struct DominanceResult {
  double min_eigenvalue;  // of A - B, unscaled
  bool dominates;         // A >= B within tol (on the Frobenius-scaled difference)
};

// Throws ShapeMismatch unless A and B share dimension and chart.
DominanceResult dominance_check(const InfoMatrix& a, const InfoMatrix& b, double tol = kPsdTol);

// Half-open radial interval [rmin, rmax] of the ball.
struct RadiusInterval {
  double rmin = 0.0;
  double rmax = 0.999;
};

// Deterministic sample grid for dominance scans: a Halton sequence
// (bases 2, 3, 5, starting at index halton_skip) mapped to the shell, plus
// radial lines along fixed directions clustered toward rmax.
struct DominanceGridConfig {
  std::size_t halton_points = 4096;
  std::size_t halton_skip = 20;
  std::size_t radial_directions = 64;
  std::size_t radial_samples = 64;
};

std::vector<BlochCartesian> dominance_grid(const RadiusInterval& region,
                                           const DominanceGridConfig& cfg = {});

struct DominanceReport {
  int copies = 0;
  double scalar_bound = 0.0;
  // Smallest Frobenius-scaled eigenvalue of c H_q - F_N over the grid.
  double min_eigenvalue_found = 0.0;
  std::vector<BlochCartesian> violating_points;
  RadiusInterval region;
};

// Evaluates c H_q - F_N over the grid for a fixed c.
DominanceReport dominance_scan(int copies, double scalar, const RadiusInterval& region,
                               const DominanceGridConfig& cfg = {}, double tol = kPsdTol);

// Smallest c (bisection to within tol) with c H_q - F_N >= 0 on the grid.
// N = 3..6; rmax must be < 1.
DominanceReport min_dominating_scalar(int copies, const RadiusInterval& region, double tol = 1e-6,
                                      const DominanceGridConfig& cfg = {});

// Root in (0,1) of 47 r^4 - 172 r^2 + 123.8: the radius beyond which
// 4.99 H_q no longer dominates F_6.
double dominance_boundary_radius();

// Eigenvalues of F_N(eps, 0, 0) / (N/2), ascending. Diagnostic only.
Eigen::Vector3d near_origin_ratio(int copies, double eps = 1e-4);

struct VolumeResult {
  double value;
  double previous;  // value at the lower order
  int order;
};

// Integral over the unit ball of sqrt(det F_N), N = 2..6. Tensor Gauss-
// Legendre in (u, theta, phi) with r = sin(u). Throws NonConvergence when
// the two orders of quad disagree by more than quad.rel_tol.
VolumeResult volume_integral(int copies, const QuadratureSpec& quad = {});

// Quasi-Bures traces for N = 2 and 4, each scaled by its pure-state limit,
// cross at this radius.
double scaled_curve_intersection();

struct CurveTable {
  std::string label;
  std::optional<double> scaling;
  std::vector<std::pair<double, double>> samples;  // (r or s, value)
};

enum class CurveQuantity { gm_scaled, coding_terms, g_functions, entry11_over_N, yl_scaled, qb_scaled };

const char* to_string(CurveQuantity q);

// Copies plotted per quantity when copies_list is empty.
std::vector<int> default_copies(CurveQuantity q);

// grid must be strictly increasing inside the quantity's domain:
// [0,1] for the traces, [0,1) for coding_terms and entry11_over_N,
// (0,1] (values of s) for g_functions. Throws DomainError otherwise.
std::vector<CurveTable> curve_sample(CurveQuantity q, const std::vector<int>& copies_list,
                                     const std::vector<double>& grid);

// Figure k (1..6) -> quantity and the evenly spaced grid with n intervals.
struct FigureSpec {
  CurveQuantity quantity;
  std::vector<double> grid;
};
FigureSpec figure_spec(int figure, int n_intervals);

// CSV with header "r,value,label"; values use at least 6 significant digits.
std::string to_csv(const std::vector<CurveTable>& tables, int significant_digits = 9);

nlohmann::json to_json(const DominanceReport& report);

// Locale-independent shortest-or-fixed-precision formatting.
std::string format_number(double v, int significant_digits);

}  // namespace qig
