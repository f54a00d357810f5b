#include "betamodel/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betamodel/distributions.hpp"
#include "betamodel/error.hpp"

namespace betamodel {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  }
}

void require_converged(const BetaFit& fit) {
  if (!fit.converged) {
    throw Error(ErrorKind::NonConvergence, "the supplied fit did not converge");
  }
  if (fit.v_hat.size() != fit.beta_hat.size()) {
    throw Error(ErrorKind::InvalidArgument, "fit has mismatched beta_hat and v_hat lengths");
  }
}

void require_pvalues(std::span<const double> pvals) {
  if (pvals.empty()) throw Error(ErrorKind::InvalidArgument, "no p-values to combine");
  for (double p : pvals) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "p-value " + std::to_string(p) + " outside [0, 1]");
    }
  }
}

double pvalue_of(double u, PairPValueKind kind) {
  switch (kind) {
    case PairPValueKind::upper: return dist::normal_sf(u);
    case PairPValueKind::two_sided: return std::min(1.0, 2.0 * dist::normal_sf(std::fabs(u)));
    case PairPValueKind::one_sided: return dist::normal_sf(std::fabs(u));
  }
  return 1.0;
}

// P(U_1 + ... + U_K <= x) for K iid uniforms.
double irwin_hall_cdf(double x, std::size_t k) {
  if (x <= 0.0) return 0.0;
  if (x >= static_cast<double>(k)) return 1.0;
  double total = 0.0;
  double binom = 1.0;
  const auto floor_x = static_cast<std::size_t>(std::floor(x));
  for (std::size_t j = 0; j <= floor_x; ++j) {
    const double term = binom * std::pow(x - static_cast<double>(j), static_cast<double>(k));
    total += (j % 2 == 0) ? term : -term;
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  return std::clamp(total / std::tgamma(static_cast<double>(k) + 1.0), 0.0, 1.0);
}

}  // namespace

PairTestResult pair_test(const BetaFit& fit, NodeId i, NodeId j, double alpha) {
  require_converged(fit);
  require_alpha(alpha);
  const std::size_t n = fit.size();
  if (i < 1 || j < 1 || i > n || j > n) {
    throw Error(ErrorKind::InvalidArgument, "node ids must lie in 1.." + std::to_string(n));
  }
  if (i == j) throw Error(ErrorKind::InvalidArgument, "pair test needs two distinct nodes");

  const double vi = fit.v_hat[i - 1];
  const double vj = fit.v_hat[j - 1];
  PairTestResult r;
  r.i = i;
  r.j = j;
  r.u_hat = (fit.beta_hat[i - 1] - fit.beta_hat[j - 1]) / std::sqrt(1.0 / vi + 1.0 / vj);
  r.tail_p = dist::normal_sf(std::fabs(r.u_hat));
  r.p_value = std::min(1.0, 2.0 * r.tail_p);
  r.reject = std::fabs(r.u_hat) >= dist::normal_quantile(1.0 - alpha / 2.0);
  return r;
}

std::string_view to_string(PairPValueKind kind) {
  switch (kind) {
    case PairPValueKind::upper: return "upper";
    case PairPValueKind::two_sided: return "two-sided";
    case PairPValueKind::one_sided: return "one-sided";
  }
  return "unknown";
}

std::optional<PairPValueKind> parse_pvalue_kind(std::string_view name) {
  if (name == "upper" || name == "signed") return PairPValueKind::upper;
  if (name == "two-sided") return PairPValueKind::two_sided;
  if (name == "one-sided") return PairPValueKind::one_sided;
  return std::nullopt;
}

PairPValues::PairPValues(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != pair_count(n)) {
    throw Error(ErrorKind::InvalidArgument, "pair p-value storage has the wrong length");
  }
}

double PairPValues::at(NodeId i, NodeId j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) {
    throw Error(ErrorKind::InvalidArgument, "pair p-values exist only for distinct nodes in range");
  }
  const auto lo = std::min(i, j) - 1;
  const auto hi = std::max(i, j) - 1;
  return values_[triangle_index(n_, lo, hi)];
}

PairPValues all_pair_pvalues(const BetaFit& fit, PairPValueKind kind, Backend backend) {
  require_converged(fit);
  const std::size_t n = fit.size();
  std::vector<double> stats(pair_count(n));
  if (backend == Backend::serial) {
    serial::pair_statistics(fit.beta_hat.values(), fit.v_hat, stats);
  } else {
    omp::pair_statistics(fit.beta_hat.values(), fit.v_hat, stats);
  }
  const long long m = static_cast<long long>(stats.size());
#pragma omp parallel for schedule(static) if (backend == Backend::parallel) \
    num_threads(default_thread_count())
  for (long long k = 0; k < m; ++k) stats[k] = pvalue_of(stats[k], kind);
  return PairPValues(n, std::move(stats));
}

std::string_view to_string(CombineMethod method) {
  switch (method) {
    case CombineMethod::cauchy: return "cauchy";
    case CombineMethod::lrt: return "lrt";
    case CombineMethod::fisher: return "fisher";
    case CombineMethod::pearson: return "pearson";
    case CombineMethod::george: return "george";
    case CombineMethod::edgington: return "edgington";
    case CombineMethod::stouffer: return "stouffer";
    case CombineMethod::tippett: return "tippett";
  }
  return "unknown";
}

std::optional<CombineMethod> parse_combine_method(std::string_view name) {
  for (auto m : {CombineMethod::cauchy, CombineMethod::lrt, CombineMethod::fisher,
                 CombineMethod::pearson, CombineMethod::george, CombineMethod::edgington,
                 CombineMethod::stouffer, CombineMethod::tippett}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double clamp_pvalue(double p) { return std::clamp(p, kPValueClamp, 1.0 - kPValueClamp); }

double cauchy_transform(double p) {
  // 0.5 - p is exact here, so p = 1/2 maps to 0.
  if (p >= 0.25 && p <= 0.75) return std::tan((0.5 - p) * std::numbers::pi);
  if (p < 0.5) return 1.0 / std::tan(p * std::numbers::pi);
  return -1.0 / std::tan((1.0 - p) * std::numbers::pi);
}

namespace {

HomogeneityResult finish_cauchy(double statistic, double alpha) {
  HomogeneityResult r;
  r.method = CombineMethod::cauchy;
  r.statistic = statistic;
  r.p_value = dist::cauchy_two_sided_sf(statistic);
  // c_{1-alpha/2} = tan((1/2 - alpha/2) pi)
  r.reject = std::fabs(statistic) > cauchy_transform(alpha / 2.0);
  return r;
}

}  // namespace

HomogeneityResult cauchy_combine(std::span<const double> pvals, std::span<const double> weights,
                                 double alpha) {
  require_pvalues(pvals);
  require_alpha(alpha);
  if (weights.size() != pvals.size()) {
    throw Error(ErrorKind::InvalidArgument, "need one weight per p-value");
  }
  long double wsum = 0.0L;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidArgument, "weights must be nonnegative");
    wsum += w;
  }
  if (std::fabs(static_cast<double>(wsum) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "weights must sum to 1");
  }
  double t = 0.0;
  for (std::size_t k = 0; k < pvals.size(); ++k) {
    t += weights[k] * cauchy_transform(clamp_pvalue(pvals[k]));
  }
  return finish_cauchy(t, alpha);
}

HomogeneityResult cauchy_combine(std::span<const double> pvals, double alpha) {
  require_pvalues(pvals);
  require_alpha(alpha);
  double t = 0.0;
  for (double p : pvals) t += cauchy_transform(clamp_pvalue(p));
  return finish_cauchy(t / static_cast<double>(pvals.size()), alpha);
}

HomogeneityResult classic_combine(std::span<const double> pvals, CombineMethod method,
                                  double alpha) {
  require_pvalues(pvals);
  require_alpha(alpha);
  const std::size_t k = pvals.size();
  const double kd = static_cast<double>(k);

  HomogeneityResult r;
  r.method = method;
  r.independence_only = true;
  switch (method) {
    case CombineMethod::fisher: {
      double s = 0.0;
      for (double p : pvals) s += std::log(clamp_pvalue(p));
      r.statistic = s;
      r.p_value = dist::chisq_sf(-2.0 * s, 2.0 * kd);
      break;
    }
    case CombineMethod::pearson: {
      // Small p-values push -sum log(1 - p) toward 0, so the lower tail of
      // chi-square(2K) is the rejection region.
      double s = 0.0;
      for (double p : pvals) s -= std::log1p(-clamp_pvalue(p));
      r.statistic = s;
      r.p_value = dist::chisq_cdf(2.0 * s, 2.0 * kd);
      break;
    }
    case CombineMethod::george: {
      // Mudholkar-George: -T_G sqrt(3(5K+4) / (pi^2 K (5K+2))) ~ t(5K+4).
      double s = 0.0;
      for (double p : pvals) {
        const double q = clamp_pvalue(p);
        s += std::log(q) - std::log1p(-q);
      }
      r.statistic = s;
      const double scale = std::sqrt(3.0 * (5.0 * kd + 4.0) /
                                     (std::numbers::pi * std::numbers::pi * kd * (5.0 * kd + 2.0)));
      r.p_value = dist::student_t_sf(-s * scale, 5.0 * kd + 4.0);
      break;
    }
    case CombineMethod::edgington: {
      double s = 0.0;
      for (double p : pvals) s += p;
      r.statistic = s;
      // Irwin-Hall exactly up to K = 12, normal approximation beyond.
      r.p_value = k <= 12 ? irwin_hall_cdf(s, k)
                          : dist::normal_cdf((s - kd / 2.0) / std::sqrt(kd / 12.0));
      break;
    }
    case CombineMethod::stouffer: {
      double s = 0.0;
      for (double p : pvals) s += dist::normal_quantile(clamp_pvalue(p));
      r.statistic = s;
      r.p_value = std::min(1.0, 2.0 * dist::normal_sf(std::fabs(s) / std::sqrt(kd)));
      break;
    }
    case CombineMethod::tippett: {
      const double lo = *std::min_element(pvals.begin(), pvals.end());
      r.statistic = lo;
      r.p_value = -std::expm1(kd * std::log1p(-lo));
      break;
    }
    case CombineMethod::cauchy:
    case CombineMethod::lrt:
      throw Error(ErrorKind::InvalidArgument,
                  std::string(to_string(method)) + " is not a classic p-value combiner");
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  r.reject = r.p_value <= alpha;
  return r;
}

HomogeneityResult homogeneity_cauchy(const BetaFit& fit, double alpha, PairPValueKind kind) {
  if (fit.size() < 2) throw Error(ErrorKind::InvalidArgument, "homogeneity needs n >= 2");
  const auto pv = all_pair_pvalues(fit, kind);
  return cauchy_combine(pv.values(), alpha);
}

HomogeneityResult homogeneity_lrt(const DegreeSequence& d, const BetaFit& fit, double alpha) {
  require_converged(fit);
  require_alpha(alpha);
  if (d.size() != fit.size()) {
    throw Error(ErrorKind::InvalidArgument, "fit and degree sequence differ in length");
  }
  if (d.size() < 2) throw Error(ErrorKind::InvalidArgument, "homogeneity needs n >= 2");
  const auto restricted = restricted_mle_homogeneous(d);
  HomogeneityResult r;
  r.method = CombineMethod::lrt;
  r.statistic = 2.0 * (log_likelihood(fit.beta_hat, d) - restricted.loglik);
  r.p_value = dist::chisq_sf(std::max(r.statistic, 0.0), static_cast<double>(d.size() - 1));
  r.reject = r.p_value <= alpha;
  return r;
}

HomogeneityResult homogeneity_lrt(const DegreeSequence& d, double alpha, const FitConfig& cfg) {
  return homogeneity_lrt(d, mle_fit(d, cfg), alpha);
}

HomogeneityResult homogeneity_test(const DegreeSequence& d, const BetaFit& fit,
                                   CombineMethod method, double alpha, PairPValueKind kind) {
  switch (method) {
    case CombineMethod::cauchy: return homogeneity_cauchy(fit, alpha, kind);
    case CombineMethod::lrt: return homogeneity_lrt(d, fit, alpha);
    default: return classic_combine(all_pair_pvalues(fit, kind).values(), method, alpha);
  }
}

}  // namespace betamodel
