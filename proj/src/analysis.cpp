#include "qig/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qig/coding.hpp"
#include "qig/parallel.hpp"

namespace qig {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kLimitStep = 1e-8;

void require_trace_copies(int n) {
  if (n < 2 || n > 6) throw UnsupportedCopies(n);
}

double min_eigenvalue(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Smallest eigenvalue of m / ||m||_F (0 for the zero matrix).
double scaled_min_eigenvalue(const Mat3& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return min_eigenvalue(m / norm);
}

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, v = 0.0;
  while (i > 0) {
    v += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return v;
}

Vec3 sphere_direction(double u, double w) {
  const double ct = 1.0 - 2.0 * u;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double ph = 2.0 * kPi * w;
  return {st * std::cos(ph), st * std::sin(ph), ct};
}

BlochCartesian along(const Vec3& dir, double r) { return BlochCartesian(Vec3(r * dir)); }

}  // namespace

double gm_trace(const MetricKind& metric, int copies, const BlochCartesian& c) {
  require_trace_copies(copies);
  const double r = c.r();
  if (!(r > 0.0 && r < 1.0)) throw DomainError("gm_trace needs 0 < r < 1; use limit_trace");
  const Mat3 ginv = monotone_metric_inverse_cartesian(metric, c);
  return (ginv * fisher_closed_form(copies, c).mat3()).trace();
}

double gm_trace_spherical(const MetricKind& metric, int copies, const BlochSpherical& s) {
  require_trace_copies(copies);
  const Mat3 g = monotone_metric(metric, s).mat3();
  const Mat3 f = congruence_to_spherical(fisher_closed_form(copies, to_cartesian(s)), s).mat3();
  return (g.inverse() * f).trace();
}

double modified_trace_reference(int copies, double r, std::optional<double> theta) {
  const double r2 = r * r, r4 = r2 * r2;
  switch (copies) {
    case 2: return 3.0 - 2.0 * r2;
    case 4: return (87.0 - 61.0 * r2 + 10.0 * r4) / 12.0;
    case 5: {
      if (!theta) throw DomainError("the N = 5 modified trace needs the axis angle theta");
      const double d = r2 + r2 * std::cos(2.0 * *theta) - 2.0;
      return (147.0 - 96.0 * r2 + 13.0 * r4 + 10.0 * std::pow(r2 - 1.0, 3) / d) / 16.0;
    }
    case 6: return (1425.0 - 1070.0 * r2 + 307.0 * r4 - 62.0 * r4 * r2) / 120.0;
    default: throw UnsupportedCopies(copies);
  }
}

Vec3 limit_direction() { return {0.48, 0.6, 0.64}; }

double limit_trace(const MetricKind& metric, int copies, Endpoint endpoint) {
  require_trace_copies(copies);
  const Vec3 dir = limit_direction();
  auto at = [&](double dist) {
    const double r = endpoint == Endpoint::pure ? 1.0 - dist : dist;
    return gm_trace(metric, copies, along(dir, r));
  };
  // Leading error is linear in the distance to the endpoint.
  return 2.0 * at(kLimitStep) - at(2.0 * kLimitStep);
}

DominanceResult dominance_check(const InfoMatrix& a, const InfoMatrix& b, double tol) {
  if (a.dim() != b.dim() || a.coords() != b.coords()) {
    throw ShapeMismatch("dominance_check needs matrices of the same dimension and chart");
  }
  const InfoMatrix::Storage d = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<InfoMatrix::Storage> es(d, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double norm = d.norm();
  const double scaled = norm == 0.0 ? 0.0 : lo / norm;
  return {lo, scaled >= -tol};
}

std::vector<BlochCartesian> dominance_grid(const RadiusInterval& region, const DominanceGridConfig& cfg) {
  if (!(region.rmin >= 0.0 && region.rmin <= region.rmax && region.rmax < 1.0)) {
    throw DomainError("dominance region must satisfy 0 <= rmin <= rmax < 1");
  }
  std::vector<BlochCartesian> pts;
  pts.reserve(cfg.halton_points + (cfg.radial_directions + 8) * cfg.radial_samples);
  const double a3 = std::pow(region.rmin, 3), b3 = std::pow(region.rmax, 3);
  for (std::size_t k = 0; k < cfg.halton_points; ++k) {
    const std::size_t i = k + cfg.halton_skip;
    const double r = std::cbrt(a3 + radical_inverse(i, 2) * (b3 - a3));
    pts.push_back(along(sphere_direction(radical_inverse(i, 3), radical_inverse(i, 5)), r));
  }
  std::vector<Vec3> dirs = {Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitY(),
                            Vec3::UnitZ(), -Vec3::UnitZ(), odd_symmetry_axis(), -odd_symmetry_axis()};
  for (std::size_t k = 0; k < cfg.radial_directions; ++k) {
    const std::size_t i = k + cfg.halton_skip;
    dirs.push_back(sphere_direction(radical_inverse(i, 2), radical_inverse(i, 3)));
  }
  const std::size_t m = cfg.radial_samples;
  for (const Vec3& d : dirs) {
    for (std::size_t k = 0; k < m; ++k) {
      const double t = m == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(m - 1);
      const double r = region.rmin + (region.rmax - region.rmin) * (1.0 - (1.0 - t) * (1.0 - t));
      pts.push_back(along(d, r));
    }
  }
  return pts;
}

namespace {

struct GridMatrices {
  std::vector<BlochCartesian> points;
  std::vector<Mat3> helstrom;
  std::vector<Mat3> fisher;
};

GridMatrices grid_matrices(int copies, const RadiusInterval& region, const DominanceGridConfig& cfg) {
  GridMatrices g;
  g.points = dominance_grid(region, cfg);
  g.helstrom.resize(g.points.size());
  g.fisher.resize(g.points.size());
  parallel_for(g.points.size(), [&](std::size_t i) {
    g.helstrom[i] = helstrom_cartesian(g.points[i]).mat3();
    g.fisher[i] = fisher_closed_form(copies, g.points[i]).mat3();
  });
  return g;
}

DominanceReport scan(const GridMatrices& g, int copies, double scalar, const RadiusInterval& region,
                     double tol) {
  std::vector<double> eig(g.points.size());
  parallel_for(g.points.size(), [&](std::size_t i) {
    eig[i] = scaled_min_eigenvalue(scalar * g.helstrom[i] - g.fisher[i]);
  });
  DominanceReport rep;
  rep.copies = copies;
  rep.scalar_bound = scalar;
  rep.region = region;
  rep.min_eigenvalue_found = *std::min_element(eig.begin(), eig.end());
  for (std::size_t i = 0; i < eig.size(); ++i) {
    if (eig[i] < -tol) rep.violating_points.push_back(g.points[i]);
  }
  return rep;
}

}  // namespace

DominanceReport dominance_scan(int copies, double scalar, const RadiusInterval& region,
                               const DominanceGridConfig& cfg, double tol) {
  require_trace_copies(copies);
  return scan(grid_matrices(copies, region, cfg), copies, scalar, region, tol);
}

DominanceReport min_dominating_scalar(int copies, const RadiusInterval& region, double tol,
                                      const DominanceGridConfig& cfg) {
  require_trace_copies(copies);
  if (region.rmax >= 1.0) throw DomainError("dominance region must stay inside r < 1");
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  const GridMatrices g = grid_matrices(copies, region, cfg);
  auto ok = [&](double c) { return scan(g, copies, c, region, kPsdTol).violating_points.empty(); };
  double lo = 0.0, hi = static_cast<double>(copies);
  while (!ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0 * copies) throw NonConvergence("no dominating scalar found");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return scan(g, copies, hi, region, kPsdTol);
}

double dominance_boundary_radius() {
  // 47 t^2 - 172 t + 123.8 = 0 with t = r^2; the smaller root lies in (0,1).
  const double a = 47.0, b = -172.0, c = 123.8;
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  const double t = 2.0 * c / (-b + disc);
  return std::sqrt(t);
}

Eigen::Vector3d near_origin_ratio(int copies, double eps) {
  const Mat3 f = fisher_closed_form(copies, BlochCartesian(eps, 0.0, 0.0)).mat3();
  Eigen::SelfAdjointEigenSolver<Mat3> es(f / (copies / 2.0), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

// sqrt(det F) in (r, theta, phi), i.e. including the volume Jacobian.
double volume_density(int copies, double r, double theta, double phi) {
  if (copies % 2 == 0) {
    const InfoMatrix f = fisher_spherical_diag(copies, BlochSpherical(r, theta, phi));
    return std::sqrt(f(0, 0) * f(1, 1) * f(2, 2));
  }
  const BlochCartesian c = to_cartesian(BlochSpherical(r, theta, phi));
  const double det = fisher_closed_form(copies, c).mat3().determinant();
  return std::sqrt(std::max(det, 0.0)) * r * r * std::sin(theta);
}

double volume_at_order(int copies, int order) {
  const auto qu = gauss_legendre(order, 0.0, kPi / 2.0);
  const auto qt = gauss_legendre(order, 0.0, kPi);
  const auto qp = gauss_legendre(2 * order, 0.0, 2.0 * kPi);
  std::vector<double> shells(qu.nodes.size());
  parallel_for(qu.nodes.size(), [&](std::size_t i) {
    const double r = std::sin(qu.nodes[i]);
    const double dr = std::cos(qu.nodes[i]);
    std::vector<double> terms;
    terms.reserve(qt.nodes.size() * qp.nodes.size());
    for (std::size_t j = 0; j < qt.nodes.size(); ++j) {
      for (std::size_t k = 0; k < qp.nodes.size(); ++k) {
        terms.push_back(qt.weights[j] * qp.weights[k] *
                        volume_density(copies, r, qt.nodes[j], qp.nodes[k]));
      }
    }
    shells[i] = qu.weights[i] * dr * pairwise_sum(terms);
  });
  return pairwise_sum(shells);
}

}  // namespace

VolumeResult volume_integral(int copies, const QuadratureSpec& quad) {
  require_trace_copies(copies);
  if (quad.order < 8 || quad.refine_step < 1) throw DomainError("quadrature order too low");
  const double a = volume_at_order(copies, quad.order);
  const int hi = quad.order + quad.refine_step;
  const double b = volume_at_order(copies, hi);
  if (std::abs(a - b) > quad.rel_tol * std::abs(b)) {
    throw NonConvergence("volume integral for N=" + std::to_string(copies) +
                         " did not converge: " + std::to_string(a) + " vs " + std::to_string(b));
  }
  return {b, a, hi};
}

double scaled_curve_intersection() {
  const MetricKind qb = MetricKind::quasi_bures();
  const double pure2 = limit_trace(qb, 2, Endpoint::pure);
  const double pure4 = limit_trace(qb, 4, Endpoint::pure);
  const Vec3 dir = limit_direction();
  auto diff = [&](double r) {
    const BlochCartesian c = along(dir, r);
    return gm_trace(qb, 2, c) / pure2 - gm_trace(qb, 4, c) / pure4;
  };
  double lo = 0.0, hi = 0.0;
  bool found = false;
  double prev = diff(0.01);
  for (int k = 2; k <= 99 && !found; ++k) {
    const double r = k / 100.0;
    const double cur = diff(r);
    if ((prev < 0.0) != (cur < 0.0)) {
      lo = r - 0.01;
      hi = r;
      found = true;
    }
    prev = cur;
  }
  if (!found) throw NonConvergence("scaled quasi-Bures curves do not cross on (0,1)");
  const bool lo_negative = diff(lo) < 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((diff(mid) < 0.0) == lo_negative ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const char* to_string(CurveQuantity q) {
  switch (q) {
    case CurveQuantity::gm_scaled: return "gm_scaled";
    case CurveQuantity::coding_terms: return "coding_terms";
    case CurveQuantity::g_functions: return "g_functions";
    case CurveQuantity::entry11_over_N: return "entry11_over_N";
    case CurveQuantity::yl_scaled: return "yl_scaled";
    case CurveQuantity::qb_scaled: return "qb_scaled";
  }
  return "?";
}

std::vector<int> default_copies(CurveQuantity q) {
  switch (q) {
    case CurveQuantity::gm_scaled: return {4, 5, 6, 7};
    case CurveQuantity::coding_terms: return {};
    default: return {2, 4, 6};
  }
}

namespace {

// Spherical (1,1) entry of the even-N diagonal forms, valid on [0,1).
double radial_entry(int copies, double r) {
  const double r2 = r * r;
  switch (copies) {
    case 2: return 1.0 / (1.0 - r2);
    case 4: return (29.0 + 7.0 * r2) / (12.0 * (1.0 - r2));
    case 6: return (475.0 + 172.0 * r2 - 47.0 * r2 * r2) / (120.0 * (1.0 - r2));
    default: throw UnsupportedCopies(copies);
  }
}

void check_grid(const std::vector<double>& grid, double lo, bool lo_open, double hi, bool hi_open) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i];
    const bool bad_lo = lo_open ? !(v > lo) : !(v >= lo);
    const bool bad_hi = hi_open ? !(v < hi) : !(v <= hi);
    if (bad_lo || bad_hi) throw DomainError("curve grid value outside the quantity's domain");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("curve grid must be strictly increasing");
  }
}

std::string copies_label(int n) { return "N=" + std::to_string(n); }

}  // namespace

std::vector<CurveTable> curve_sample(CurveQuantity q, const std::vector<int>& copies_list,
                                     const std::vector<double>& grid) {
  const std::vector<int> ns = copies_list.empty() ? default_copies(q) : copies_list;
  std::vector<CurveTable> out;
  switch (q) {
    case CurveQuantity::gm_scaled: {
      check_grid(grid, 0.0, false, 1.0, false);
      for (int n : ns) {
        CurveTable t{copies_label(n), 2.0 * n - 1.0, {}};
        for (double r : grid) t.samples.emplace_back(r, gm_trace_reference(n, r) / *t.scaling);
        out.push_back(std::move(t));
      }
      break;
    }
    case CurveQuantity::coding_terms: {
      check_grid(grid, 0.0, false, 1.0, true);
      CurveTable quantum{"quantum", std::nullopt, {}}, classical{"classical", std::nullopt, {}};
      for (double r : grid) {
        const double f = quasi_bures_radial_factor(r);
        const double iq = kE * kE / std::pow(1.0 - r * r, 2) * f * f;
        quantum.samples.emplace_back(r, 0.5 * std::log(iq));
        classical.samples.emplace_back(r, 0.5 * std::log(64.0 / (1.0 - r * r)));
      }
      out.push_back(std::move(quantum));
      out.push_back(std::move(classical));
      break;
    }
    case CurveQuantity::g_functions: {
      check_grid(grid, 0.0, true, 1.0, false);
      for (int n : ns) {
        MetricKind kind = n == 2   ? MetricKind::fitted_n2()
                          : n == 4 ? MetricKind::fitted_n4()
                          : n == 6 ? MetricKind::fitted_n6()
                                   : throw UnsupportedCopies(n);
        CurveTable t{copies_label(n), std::nullopt, {}};
        for (double s : grid) t.samples.emplace_back(s, g_function(kind, s));
        out.push_back(std::move(t));
      }
      break;
    }
    case CurveQuantity::entry11_over_N: {
      check_grid(grid, 0.0, false, 1.0, true);
      for (int n : ns) {
        CurveTable t{copies_label(n), static_cast<double>(n), {}};
        for (double r : grid) t.samples.emplace_back(r, radial_entry(n, r) / n);
        out.push_back(std::move(t));
      }
      break;
    }
    case CurveQuantity::yl_scaled: {
      check_grid(grid, 0.0, false, 1.0, false);
      for (int n : ns) {
        if (n == 5) throw DomainError("the N = 5 modified trace depends on direction");
        CurveTable t{copies_label(n), n - 1.0, {}};
        for (double r : grid) t.samples.emplace_back(r, modified_trace_reference(n, r) / *t.scaling);
        out.push_back(std::move(t));
      }
      break;
    }
    case CurveQuantity::qb_scaled: {
      check_grid(grid, 0.0, false, 1.0, false);
      const MetricKind qb = MetricKind::quasi_bures();
      const Vec3 dir = limit_direction();
      for (int n : ns) {
        const double pure = limit_trace(qb, n, Endpoint::pure);
        CurveTable t{copies_label(n), pure, {}};
        for (double r : grid) {
          double v;
          if (r == 0.0) {
            v = limit_trace(qb, n, Endpoint::mixed);
          } else if (r == 1.0) {
            v = pure;
          } else {
            v = gm_trace(qb, n, along(dir, r));
          }
          t.samples.emplace_back(r, v / pure);
        }
        out.push_back(std::move(t));
      }
      break;
    }
  }
  return out;
}

FigureSpec figure_spec(int figure, int n) {
  if (n < 2) throw DomainError("curve grid needs at least 2 intervals");
  auto grid = [n](int first, int last) {
    std::vector<double> g;
    for (int i = first; i <= last; ++i) g.push_back(static_cast<double>(i) / n);
    return g;
  };
  switch (figure) {
    case 1: return {CurveQuantity::gm_scaled, grid(0, n)};
    case 2: return {CurveQuantity::coding_terms, grid(0, n - 1)};
    case 3: return {CurveQuantity::g_functions, grid(1, n)};
    case 4: return {CurveQuantity::entry11_over_N, grid(0, n - 1)};
    case 5: return {CurveQuantity::yl_scaled, grid(0, n)};
    case 6: return {CurveQuantity::qb_scaled, grid(0, n)};
    default: throw DomainError("figure must be 1..6");
  }
}

std::string format_number(double v, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                 std::max(1, significant_digits));
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<CurveTable>& tables, int significant_digits) {
  const int digits = std::max(6, significant_digits);
  std::string out = "r,value,label\n";
  for (const auto& t : tables) {
    for (const auto& [r, v] : t.samples) {
      out += format_number(r, digits) + "," + format_number(v, digits) + "," + t.label + "\n";
    }
  }
  return out;
}

nlohmann::json to_json(const DominanceReport& report) {
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& p : report.violating_points) viol.push_back({p.x(), p.y(), p.z()});
  return {{"copies", report.copies},
          {"scalar_bound", report.scalar_bound},
          {"min_eigenvalue", report.min_eigenvalue_found},
          {"region", {report.region.rmin, report.region.rmax}},
          {"violations", viol}};
}

}  // namespace qig
