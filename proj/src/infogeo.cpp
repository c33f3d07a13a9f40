#include "qig/infogeo.hpp"

#include <cmath>
#include <numbers>

namespace qig {

namespace {

constexpr double kE = std::numbers::e;

template <typename S>
std::vector<S> quadrinomial(const S& x, const S& y, const S& z) {
  S x2 = x * x, y2 = y * y, z2 = z * z;
  return {x2, y2, z2, S(1.0) - x2 - y2 - z2};
}

void require_spherical_interior(const BlochSpherical& s) {
  if (s.degenerate()) throw DegenerateCoordinates("r = 0 or theta on the polar axis");
  if (s.r() >= 1.0) throw PureStateError("metric diverges at r = 1");
}

}  // namespace

std::vector<ProbModel::D1> ProbModel::eval1(const Vec3& p) const {
  return f1_(D1::variable(p.x(), 0), D1::variable(p.y(), 1), D1::variable(p.z(), 2));
}

std::vector<double> ProbModel::probabilities(const Vec3& p) const {
  const auto d = eval1(p);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].val;
  return out;
}

Eigen::MatrixX3d ProbModel::gradient(const Vec3& p) const {
  const auto d = eval1(p);
  Eigen::MatrixX3d g(d.size(), 3);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = d[i].grad[j];
  }
  return g;
}

ProbModel::Jet ProbModel::jet2(const Vec3& p) const {
  auto var = [&](int i) {
    D2 v = D2::variable(D1::variable(p[i], i), i);
    return v;
  };
  const auto d = f2_(var(0), var(1), var(2));
  Jet jet;
  jet.p.resize(d.size());
  jet.grad.resize(d.size(), 3);
  jet.hess.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    jet.p[i] = d[i].val.val;
    for (int j = 0; j < 3; ++j) {
      jet.grad(i, j) = d[i].val.grad[j];
      for (int k = 0; k < 3; ++k) jet.hess[i](j, k) = d[i].grad[j].grad[k];
    }
  }
  return jet;
}

ProbModel ProbModel::power(unsigned k) const {
  if (k == 0) throw DomainError("power of a model needs k >= 1");
  std::size_t n = 1;
  for (unsigned i = 0; i < k; ++i) n *= n_;
  auto compose = [k](auto base) {
    return [base, k](const auto& x, const auto& y, const auto& z) {
      const auto one = base(x, y, z);
      using S = typename std::decay_t<decltype(one)>::value_type;
      std::vector<S> acc = one;
      for (unsigned t = 1; t < k; ++t) {
        std::vector<S> next;
        next.reserve(acc.size() * one.size());
        for (const auto& a : acc) {
          for (const auto& b : one) next.push_back(a * b);
        }
        acc = std::move(next);
      }
      return acc;
    };
  };
  return ProbModel(name_ + "^" + std::to_string(k), n, Fn1(compose(f1_)), Fn2(compose(f2_)));
}

ProbModel quadrinomial_model() {
  return ProbModel::make("quadrinomial", 4,
                         [](const auto& x, const auto& y, const auto& z) { return quadrinomial(x, y, z); });
}

InfoMatrix fisher_information(const ProbModel& m, const BlochCartesian& c, double min_probability) {
  const auto p = m.probabilities(c);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > min_probability)) bad.push_back(i);
  }
  if (!bad.empty()) throw ZeroProbability(std::move(bad));
  const Eigen::MatrixX3d g = m.gradient(c);
  Mat3 info = Mat3::Zero();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Eigen::RowVector3d gi = g.row(i);
    info.noalias() += gi.transpose() * gi / p[i];
  }
  return InfoMatrix(info, Coords::cartesian);
}

InfoMatrix helstrom_cartesian(const BlochCartesian& c) {
  const double x = c.x(), y = c.y(), z = c.z();
  const double d = 1.0 - c.r2();
  if (d <= 0.0) throw PureStateError("Helstrom matrix blows up at the pure states");
  Mat3 h;
  h << 1 - y * y - z * z, x * y, x * z,
       x * y, 1 - x * x - z * z, y * z,
       x * z, y * z, 1 - x * x - y * y;
  return InfoMatrix(h / d, Coords::cartesian);
}

InfoMatrix helstrom_spherical(const BlochSpherical& s) {
  const double r = s.r();
  if (r >= 1.0) throw PureStateError("Helstrom matrix blows up at the pure states");
  const double st = std::sin(s.theta());
  Mat3 h = Mat3::Zero();
  h(0, 0) = 1.0 / (1.0 - r * r);
  h(1, 1) = r * r;
  h(2, 2) = r * r * st * st;
  return InfoMatrix(h, Coords::spherical);
}

InfoMatrix helstrom_inverse(const BlochCartesian& c) {
  const Vec3& v = c.vec();
  return InfoMatrix(Mat3(Mat3::Identity() - v * v.transpose()), Coords::cartesian);
}

const char* to_string(MetricTag t) {
  switch (t) {
    case MetricTag::helstrom: return "helstrom";
    case MetricTag::yuen_lax: return "yuen-lax";
    case MetricTag::quasi_bures: return "quasi-bures";
    case MetricTag::fitted_n2: return "fitted-n2";
    case MetricTag::fitted_n4: return "fitted-n4";
    case MetricTag::fitted_n6: return "fitted-n6";
    case MetricTag::custom: return "custom";
  }
  return "?";
}

namespace {

// e * s^{s/(1-s)}; tends to 1 as s -> 1.
double quasi_bures_g(double s) {
  const double t = 1.0 - s;
  double expo;  // s log(s) / (1 - s)
  if (t < 1e-6) {
    // log(1-t)/t = -(1 + t/2 + t^2/3 + ...)
    expo = -s * (1.0 + t / 2.0 + t * t / 3.0);
  } else {
    expo = s * std::log1p(-t) / t;
  }
  return kE * std::exp(expo);
}

}  // namespace

double g_function(const MetricKind& kind, double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    if (s == 0.0 && kind.tag != MetricTag::yuen_lax && kind.tag != MetricTag::custom) {
      // Finite limits at s = 0 (pure states).
      switch (kind.tag) {
        case MetricTag::helstrom: return 2.0;
        case MetricTag::quasi_bures: return kE;
        default: return 1.0;
      }
    }
    throw DomainError("g(s) requires s in (0,1]");
  }
  switch (kind.tag) {
    case MetricTag::helstrom: return 2.0 / (1.0 + s);
    case MetricTag::yuen_lax: return (1.0 + s) / (2.0 * s);
    case MetricTag::quasi_bures: return quasi_bures_g(s);
    case MetricTag::fitted_n2: return 1.0 / (1.0 + s);
    case MetricTag::fitted_n4:
      return (6.0 + 17.0 * s + 6.0 * s * s) / (6.0 * std::pow(1.0 + s, 3));
    case MetricTag::fitted_n6: {
      const double s2 = s * s;
      return (45.0 + 222.0 * s + 416.0 * s2 + 222.0 * s2 * s + 45.0 * s2 * s2) /
             (45.0 * std::pow(1.0 + s, 5));
    }
    case MetricTag::custom:
      if (!kind.g) throw DomainError("custom metric without g(s)");
      return kind.g(s);
  }
  throw DomainError("unknown metric kind");
}

namespace {

// Tangential coefficient g(s)/(1+r) of the monotone metric.
double tangential_coefficient(const MetricKind& kind, double r) {
  const double s = (1.0 - r) / (1.0 + r);
  return g_function(kind, s) / (1.0 + r);
}

}  // namespace

InfoMatrix monotone_metric(const MetricKind& kind, const BlochSpherical& s) {
  require_spherical_interior(s);
  const double r = s.r();
  const double st = std::sin(s.theta());
  const double t = tangential_coefficient(kind, r);
  Mat3 g = Mat3::Zero();
  g(0, 0) = 1.0 / (1.0 - r * r);
  g(1, 1) = r * r * t;
  g(2, 2) = r * r * t * st * st;
  return InfoMatrix(g, Coords::spherical);
}

InfoMatrix monotone_metric_cartesian(const MetricKind& kind, const BlochCartesian& c) {
  const double r = c.r();
  if (r <= 0.0) throw DegenerateCoordinates("monotone metric needs r > 0");
  if (r >= 1.0) throw PureStateError("monotone metric diverges at r = 1");
  const Vec3 n = c.vec() / r;
  const Mat3 radial = n * n.transpose();
  const Mat3 g = radial / (1.0 - r * r) + tangential_coefficient(kind, r) * (Mat3::Identity() - radial);
  return InfoMatrix(g, Coords::cartesian);
}

Mat3 monotone_metric_inverse_cartesian(const MetricKind& kind, const BlochCartesian& c) {
  const double r = c.r();
  if (r <= 0.0) throw DegenerateCoordinates("monotone metric needs r > 0");
  if (r >= 1.0) throw PureStateError("monotone metric diverges at r = 1");
  const Vec3 n = c.vec() / r;
  const Mat3 radial = n * n.transpose();
  return (1.0 - r * r) * radial + (Mat3::Identity() - radial) / tangential_coefficient(kind, r);
}

InfoMatrix pure_helstrom_m2(double theta) {
  const double st = std::sin(theta);
  Eigen::Matrix2d m;
  m << 1.0, 0.0, 0.0, st * st;
  return InfoMatrix(m, Coords::pure_m2);
}

InfoMatrix pure_helstrom_m3(double theta, double phi) {
  const double st2 = std::pow(std::sin(theta), 2);
  const double c2t = std::cos(2 * theta), c2p = std::cos(2 * phi);
  const double cm = std::cos(2 * (theta - phi)), cp = std::cos(2 * (theta + phi));
  const double a = 0.5 * (6 + 2 * c2t + cm - 2 * c2p + cp) * st2 * std::pow(std::cos(phi), 2);
  // b is a under phi -> pi/2 - phi; both are 4|c_k|^2 (1 - |c_k|^2).
  const double b = -0.5 * (-6 - 2 * c2t + cm - 2 * c2p + cp) * st2 * std::pow(std::sin(phi), 2);
  const double off = -st2 * st2 * std::pow(std::sin(2 * phi), 2);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 4.0;
  m(1, 1) = 4.0 * st2;
  m(2, 2) = a;
  m(3, 3) = b;
  m(2, 3) = m(3, 2) = off;
  return InfoMatrix(m, Coords::pure_m3);
}

bool cr_oprom_feasibility(int copies) {
  if (copies < 1) throw DomainError("number of copies must be positive");
  // 4 H_q <= N H_q holds iff N >= 4.
  return copies >= 4;
}

}  // namespace qig
