#include "qig/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "qig/parallel.hpp"
#include "qig/quadrature.hpp"
#include "qig/rng.hpp"

namespace qig {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double loglik(const ProbModel& m, const std::vector<double>& n, const Vec3& v) {
  const auto p = m.probabilities(v);
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (n[i] == 0.0) continue;
    if (!(p[i] > 0.0)) return kNegInf;
    terms.push_back(n[i] * std::log(p[i]));
  }
  return pairwise_sum(terms);
}

Vec3 project(const Vec3& v) {
  const double rmax = 1.0 - kBallMargin;
  const double r = v.norm();
  return r > rmax ? Vec3(v * (rmax / r)) : v;
}

bool on_shell(const Vec3& v) { return v.norm() >= (1.0 - kBallMargin) * (1.0 - 1e-12); }

struct Derivs {
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();     // of the log-likelihood
  Mat3 scoring = Mat3::Zero();  // total count times the expected information
};

Derivs derivatives(const ProbModel& m, const std::vector<double>& n, const Vec3& v) {
  const auto jet = m.jet2(v);
  Derivs d;
  double total = 0.0;
  for (double c : n) total += c;
  for (std::size_t i = 0; i < jet.p.size(); ++i) {
    const double p = jet.p[i];
    if (!(p > 0.0)) continue;
    const Vec3 g = jet.grad.row(i).transpose();
    d.scoring += total * g * g.transpose() / p;
    if (n[i] == 0.0) continue;
    d.grad += n[i] * g / p;
    d.hess += n[i] * (jet.hess[i] / p - g * g.transpose() / (p * p));
  }
  return d;
}

std::optional<Vec3> solve_pd(const Mat3& a, const Vec3& b) {
  Eigen::LLT<Mat3> llt(a);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Vec3 x = llt.solve(b);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

FitResult ascend(const ProbModel& m, const std::vector<double>& n, Vec3 v, double total,
                 const FitOptions& opts) {
  v = project(v);
  double ll = loglik(m, n, v);
  for (int k = 0; k < 60 && ll == kNegInf; ++k) {
    v *= 0.5;
    ll = loglik(m, n, v);
  }
  if (ll == kNegInf) return {v, ll, 0, false, false};

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Derivs d = derivatives(m, n, v);
    if (d.grad.norm() <= opts.grad_tol * total) break;
    std::vector<Vec3> dirs;
    if (auto s = solve_pd(-d.hess, d.grad)) dirs.push_back(*s);
    if (auto s = solve_pd(d.scoring, d.grad)) dirs.push_back(*s);
    dirs.push_back(d.grad / std::max(total, 1.0));
    bool moved = false;
    for (const Vec3& dir : dirs) {
      double t = 1.0;
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        const Vec3 cand = project(v + t * dir);
        const double lc = loglik(m, n, cand);
        if (lc > ll) {
          moved = (cand - v).norm() > 0.0;
          v = cand;
          ll = lc;
          break;
        }
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  const bool boundary = on_shell(v);
  const bool stationary = derivatives(m, n, v).grad.norm() <= std::sqrt(opts.grad_tol) * total;
  return {v, ll, it, stationary && !boundary, boundary};
}

}  // namespace

std::vector<std::uint64_t> sample_counts(const EstimationRun& run, std::uint64_t repetition) {
  const auto p = run.model.probabilities(run.truth);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) bad.push_back(i);
  }
  if (!bad.empty()) throw ZeroProbability(std::move(bad));
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;

  std::vector<std::uint64_t> counts(p.size(), 0);
  PhiloxStream rng(run.seed, repetition);
  for (std::uint64_t t = 0; t < run.trials; ++t) {
    const double u = rng.next_double();
    const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(k, counts.size() - 1)];
  }
  return counts;
}

FitResult mle_fit(const ProbModel& model, const std::vector<double>& counts, const Vec3& init,
                  const FitOptions& opts) {
  if (counts.size() != model.n_outcomes()) throw ShapeMismatch("count vector length != outcomes");
  double total = 0.0;
  for (double c : counts) {
    if (!(c >= 0.0)) throw DomainError("counts must be nonnegative");
    total += c;
  }
  if (!(total > 0.0)) throw DomainError("mle_fit needs a positive total count");

  std::vector<Vec3> starts{init};
  for (int s = 0; s < 8; ++s) {
    const Vec3 sign((s & 1) ? -1.0 : 1.0, (s & 2) ? -1.0 : 1.0, (s & 4) ? -1.0 : 1.0);
    starts.push_back(init + opts.perturbation * sign);
  }
  std::optional<FitResult> best;
  for (const Vec3& s : starts) {
    FitResult f = ascend(model, counts, s, total, opts);
    if (!best) {
      best = f;
      continue;
    }
    const double tie = 1e-9 * std::max(1.0, std::abs(best->loglik));
    if (f.loglik > best->loglik + tie) {
      best = f;
    } else if (f.loglik >= best->loglik - tie &&
               (f.estimate - init).norm() < (best->estimate - init).norm()) {
      best = f;
    }
  }
  return *best;
}

EfficiencyReport efficiency_report(const EstimationRun& run, const FitOptions& opts) {
  if (run.trials == 0 || run.repetitions < 2) throw DomainError("efficiency_report needs M > 0 and R >= 2");
  const std::size_t reps = run.repetitions;
  std::vector<FitResult> fits(reps);
  std::vector<Mat3> observed(reps);
  const double m = static_cast<double>(run.trials);
  parallel_for(reps, [&](std::size_t r) {
    const auto c = sample_counts(run, r);
    const std::vector<double> n(c.begin(), c.end());
    fits[r] = mle_fit(run.model, n, run.truth.vec(), opts);
    observed[r] = -derivatives(run.model, n, fits[r].estimate).hess / m;
  });

  std::vector<std::size_t> ok;
  for (std::size_t r = 0; r < reps; ++r) {
    if (fits[r].converged) ok.push_back(r);
  }
  if (ok.size() < 2) throw NonConvergence("fewer than two repetitions produced converged fits");

  EfficiencyReport rep;
  rep.failures = reps - ok.size();
  std::vector<double> buf(ok.size());
  auto mean_of = [&](auto&& f) {
    for (std::size_t i = 0; i < ok.size(); ++i) buf[i] = f(ok[i]);
    return pairwise_sum(buf) / static_cast<double>(ok.size());
  };
  for (int j = 0; j < 3; ++j) rep.mean_estimate[j] = mean_of([&](std::size_t r) { return fits[r].estimate[j]; });
  Mat3 fhat;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double cjk = mean_of([&](std::size_t r) {
        return (fits[r].estimate[j] - rep.mean_estimate[j]) * (fits[r].estimate[k] - rep.mean_estimate[k]);
      });
      rep.empirical_cov(j, k) = cjk * ok.size() / (ok.size() - 1.0);
      fhat(j, k) = mean_of([&](std::size_t r) { return observed[r](j, k); });
    }
  }
  const Mat3 f = fisher_information(run.model, run.truth).mat3();
  rep.crb = f.inverse() / m;
  for (int j = 0; j < 3; ++j) rep.ratio_diag[j] = rep.empirical_cov(j, j) / rep.crb(j, j);
  rep.gm_trace = (helstrom_inverse(run.truth).mat3() * fhat).trace();
  return rep;
}

nlohmann::json to_json(const EstimationRun& run, const EfficiencyReport& rep) {
  auto mat = [](const Mat3& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) rows.push_back({a(i, 0), a(i, 1), a(i, 2)});
    return rows;
  };
  const Vec3& t = run.truth.vec();
  return {{"model", run.model.name()},
          {"truth", {t.x(), t.y(), t.z()}},
          {"M", run.trials},
          {"R", run.repetitions},
          {"seed", run.seed},
          {"empirical_cov", mat(rep.empirical_cov)},
          {"crb", mat(rep.crb)},
          {"ratio_diag", {rep.ratio_diag.x(), rep.ratio_diag.y(), rep.ratio_diag.z()}},
          {"gm_trace", rep.gm_trace},
          {"failures", rep.failures}};
}

}  // namespace qig
