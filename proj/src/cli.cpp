#include "qig/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qig/acceptance.hpp"
#include "qig/analysis.hpp"
#include "qig/coding.hpp"
#include "qig/estimator.hpp"
#include "qig/povm.hpp"

namespace qig {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec3 parse_triple(const std::string& text) {
  Vec3 v;
  const char* p = text.data();
  const char* end = p + text.size();
  for (int i = 0; i < 3; ++i) {
    const auto res = std::from_chars(p, end, v[i]);
    if (res.ec != std::errc()) throw UsageError("expected x,y,z but got '" + text + "'");
    p = res.ptr;
    if (i < 2) {
      if (p == end || *p != ',') throw UsageError("expected x,y,z but got '" + text + "'");
      ++p;
    }
  }
  if (p != end) throw UsageError("expected x,y,z but got '" + text + "'");
  return v;
}

MetricKind parse_metric(const std::string& name) {
  if (name == "helstrom") return MetricKind::helstrom();
  if (name == "yuen-lax") return MetricKind::yuen_lax();
  if (name == "quasi-bures") return MetricKind::quasi_bures();
  throw UsageError("unknown metric '" + name + "'");
}

PriorKind parse_prior(const std::string& name) {
  if (name == "jeffreys") return PriorKind::jeffreys();
  if (name == "quasi-bures") return PriorKind::quasi_bures();
  throw UsageError("unknown prior '" + name + "'");
}

// Numbers are rounded to the requested significant digits before they
// reach the JSON writer, so output is stable across runs and locales.
struct Emitter {
  int precision = 9;

  double round(double v) const {
    if (!std::isfinite(v)) return v;
    const std::string s = format_number(v, precision);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
  }

  json walk(const json& j) const {
    if (j.is_number_float()) return round(j.get<double>());
    if (j.is_array() || j.is_object()) {
      json out = j;
      for (auto it = out.begin(); it != out.end(); ++it) *it = walk(*it);
      return out;
    }
    return j;
  }

  std::string dump(const json& j) const { return walk(j).dump(2) + "\n"; }
};

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

// Unit vector at angle theta from odd_symmetry_axis().
Vec3 direction_from_axis(double theta) {
  const Vec3 a = odd_symmetry_axis();
  const Vec3 e = Vec3(1.0, -1.0, 0.0).normalized();
  return std::cos(theta) * a + std::sin(theta) * e;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information geometry of qubit state estimation", "qig"};
  app.require_subcommand(1);
  int precision = 9;
  std::string output_path;
  app.add_option("--precision", precision, "Significant digits in numeric output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("-o,--output", output_path, "Write output to this file instead of stdout");

  std::string point;
  bool spherical = false;
  auto* helstrom = app.add_subcommand("helstrom", "Helstrom information matrix at a point");
  helstrom->add_option("--point", point, "x,y,z")->required();
  helstrom->add_flag("--spherical", spherical, "Report in (r, theta, phi)");

  int copies = 2;
  auto* fisher = app.add_subcommand("fisher", "Closed-form Fisher matrix of the N-copy measurement");
  fisher->add_option("--n", copies)->required()->check(CLI::Range(2, 6));
  fisher->add_option("--point", point, "x,y,z")->required();
  fisher->add_flag("--spherical", spherical, "Report in (r, theta, phi)");

  std::string metric = "helstrom";
  double radius = 0.5;
  std::optional<double> theta;
  auto* gm = app.add_subcommand("gm-trace", "tr(G^-1 F_N) for a monotone metric G");
  gm->add_option("--metric", metric)->check(CLI::IsMember({"helstrom", "yuen-lax", "quasi-bures"}));
  gm->add_option("--n", copies)->required()->check(CLI::Range(2, 6));
  gm->add_option("--r", radius)->required()->check(CLI::Range(0.0, 1.0));
  gm->add_option("--theta", theta, "Angle to the (1,1,1) axis; default is a fixed generic direction");

  double rmin = 0.0, rmax = 0.999;
  std::optional<double> scalar;
  auto* dom = app.add_subcommand("dominance", "Scan c H_q - F_N >= 0 over a shell of the ball");
  dom->add_option("--n", copies)->required()->check(CLI::Range(2, 6));
  dom->add_option("--rmax", rmax)->capture_default_str();
  dom->add_option("--rmin", rmin)->capture_default_str();
  dom->add_option("--scalar", scalar, "Test this c instead of searching for the smallest");

  auto* bound = app.add_subcommand("bound-radius", "Radius beyond which 4.99 H_q stops dominating F_6");

  int order = QuadratureSpec{}.order;
  auto* vol = app.add_subcommand("volume", "Integral of sqrt(det F_N) over the ball");
  vol->add_option("--n", copies)->required()->check(CLI::Range(2, 7));
  vol->add_option("--order", order, "Gauss-Legendre order")->capture_default_str();

  int figure = 1, grid = 200;
  std::vector<int> copies_list;
  auto* curves = app.add_subcommand("curves", "CSV data behind figures 1-6");
  curves->add_option("--figure", figure)->required()->check(CLI::Range(1, 6));
  curves->add_option("--grid", grid, "Number of intervals")->capture_default_str()->check(CLI::Range(2, 1000000));
  curves->add_option("--copies", copies_list, "Override the plotted N values")->delimiter(',');

  std::string prior = "jeffreys";
  double big_n = 0.0;
  std::optional<double> coding_r;
  double coding_theta = std::numbers::pi / 2;
  bool bits = false;
  auto* coding = app.add_subcommand("coding", "Asymptotic redundancy for a prior");
  coding->add_option("--prior", prior)->required()->check(CLI::IsMember({"jeffreys", "quasi-bures"}));
  coding->add_option("--N", big_n, "Number of copies")->required();
  coding->add_option("--r", coding_r);
  coding->add_option("--theta", coding_theta)->capture_default_str();
  coding->add_flag("--bits", bits, "Report bits instead of nats");

  auto* normalize = app.add_subcommand("normalize", "Integral of a prior over the ball");
  normalize->add_option("--prior", prior)->required()->check(CLI::IsMember({"jeffreys", "quasi-bures"}));

  std::string model = "2";
  std::string truth = "0.3,0.2,0.1";
  std::uint64_t trials = 100000, reps = 100, seed = 12345;
  auto* mc = app.add_subcommand("mc", "Monte Carlo maximum-likelihood efficiency");
  mc->add_option("--n", model)->check(CLI::IsMember({"2", "3", "quad"}))->capture_default_str();
  mc->add_option("--truth", truth)->capture_default_str();
  mc->add_option("--M", trials)->capture_default_str();
  mc->add_option("--R", reps)->capture_default_str();
  mc->add_option("--seed", seed)->capture_default_str();

  bool no_mc = false;
  auto* verify = app.add_subcommand("verify-all", "Run every acceptance check");
  verify->add_flag("--no-mc", no_mc, "Skip the Monte Carlo check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Emitter emit{precision};
  std::ostringstream buf;
  int status = 0;
  try {
    if (*helstrom || *fisher) {
      const BlochCartesian c(parse_triple(point));
      InfoMatrix m = *helstrom ? helstrom_cartesian(c) : fisher_closed_form(copies, c);
      if (spherical) m = congruence_to_spherical(m, to_spherical(c));
      json j = {{"point", {c.x(), c.y(), c.z()}}, {"coords", to_string(m.coords())}, {"matrix", matrix_json(m.matrix())}};
      if (*fisher) j["n"] = copies;
      buf << emit.dump(j);
    } else if (*gm) {
      const MetricKind kind = parse_metric(metric);
      double value;
      if (copies == 5 && metric == "yuen-lax" && !theta) {
        throw UsageError("the N=5 Yuen-Lax trace depends on direction; pass --theta");
      }
      if (radius == 0.0 || radius == 1.0) {
        if (theta) throw UsageError("--theta is not used at the endpoints");
        value = limit_trace(kind, copies, radius == 1.0 ? Endpoint::pure : Endpoint::mixed);
      } else {
        const Vec3 dir = theta ? direction_from_axis(*theta) : limit_direction();
        value = gm_trace(kind, copies, BlochCartesian(Vec3(radius * dir)));
      }
      json j = {{"metric", metric}, {"n", copies}, {"r", radius}, {"trace", value}};
      if (theta) j["theta"] = *theta;
      buf << emit.dump(j);
    } else if (*dom) {
      const RadiusInterval region{rmin, rmax};
      const DominanceReport rep =
          scalar ? dominance_scan(copies, *scalar, region) : min_dominating_scalar(copies, region);
      buf << emit.dump(to_json(rep));
    } else if (*bound) {
      buf << emit.dump({{"boundary_radius", dominance_boundary_radius()}});
    } else if (*vol) {
      QuadratureSpec q;
      q.order = order;
      const VolumeResult v = volume_integral(copies, q);
      buf << emit.dump({{"n", copies}, {"value", v.value}, {"previous", v.previous}, {"order", v.order}});
    } else if (*curves) {
      const FigureSpec spec = figure_spec(figure, grid);
      buf << to_csv(curve_sample(spec.quantity, copies_list, spec.grid), precision);
    } else if (*coding) {
      const PriorKind pk = parse_prior(prior);
      if (!(big_n >= 1.0)) throw UsageError("--N must be at least 1");
      double value;
      double r;
      if (pk.tag == PriorTag::jeffreys_classical) {
        r = coding_r.value_or(0.5);
        value = classical_redundancy(big_n, BlochSpherical(r, coding_theta, 0.0), pk);
      } else {
        if (!coding_r) throw UsageError("--r is required for the quasi-Bures prior");
        r = *coding_r;
        value = quantum_redundancy(big_n, r, pk);
      }
      if (bits) value = nats_to_bits(value);
      buf << emit.dump({{"prior", prior}, {"N", big_n}, {"r", r}, {"redundancy", value}, {"unit", bits ? "bits" : "nats"}});
    } else if (*normalize) {
      const PriorKind pk = parse_prior(prior);
      json j = {{"prior", prior}, {"integral", prior_integral(pk)}};
      if (pk.tag == PriorTag::quasi_bures) {
        j["constant"] = kQuasiBuresConstant;
        j["recomputed_constant"] = quasi_bures_normalization();
      }
      buf << emit.dump(j);
    } else if (*mc) {
      ProbModel pm = model == "quad" ? quadrinomial_model() : vidal_model(model == "2" ? 2 : 3);
      const EstimationRun run{std::move(pm), BlochCartesian(parse_triple(truth)), trials, reps, seed};
      buf << emit.dump(to_json(run, efficiency_report(run)));
    } else if (*verify) {
      AcceptanceOptions opts;
      opts.monte_carlo = !no_mc;
      opts.extras = true;
      const auto results = run_acceptance(opts);
      std::size_t failed = 0;
      for (const auto& r : results) {
        buf << format_result(r) << "\n";
        if (!r.pass) ++failed;
      }
      buf << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
      status = failed == 0 ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "qig: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "qig: " << e.what() << "\n";
    return 2;
  }

  if (output_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(output_path, std::ios::binary);
    if (!(f << buf.str())) {
      err << "qig: cannot write " << output_path << "\n";
      return 2;
    }
  }
  return status;
}

}  // namespace qig
