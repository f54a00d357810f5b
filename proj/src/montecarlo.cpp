#include "betamodel/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <charconv>
#include <ostream>
#include <string>

#include "betamodel/distributions.hpp"
#include "betamodel/error.hpp"
#include "betamodel/kernels.hpp"

namespace betamodel::mc {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::pair: return "pair";
    case Method::cauchy: return "cauchy";
    case Method::lrt: return "lrt";
  }
  return "unknown";
}

std::string_view to_string(BetaRule rule) {
  return rule == BetaRule::linear ? "linear" : "homogeneous_tail";
}

void validate(const ExperimentSpec& spec) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (spec.n < 2) fail("experiment needs n >= 2");
  if (spec.replications < 1) fail("experiment needs at least one replication");
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (!std::isfinite(spec.scale)) fail("L_n must be finite");
  if (spec.rule == BetaRule::homogeneous_tail && (spec.r < 1 || spec.r > spec.n)) {
    fail("r must lie in 1..n");
  }
  if (spec.methods.empty()) fail("experiment needs at least one method");
  const bool wants_pairs =
      std::find(spec.methods.begin(), spec.methods.end(), Method::pair) != spec.methods.end();
  if (wants_pairs && spec.pairs.empty()) fail("pair method needs at least one pair");
  for (const auto& [i, j] : spec.pairs) {
    if (i < 1 || j < 1 || i > spec.n || j > spec.n) {
      fail("pair (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1..n");
    }
    if (i == j) fail("pair (" + std::to_string(i) + "," + std::to_string(j) + ") repeats a node");
  }
}

double resolve_scale(std::string_view rule, std::size_t n) {
  const double logn = std::log(static_cast<double>(n));
  if (rule == "loglog") return std::log(logn);
  if (rule == "sqrt_loglog") return std::sqrt(std::log(logn));
  if (rule == "sqrt_log") return std::sqrt(logn);
  std::string_view number = rule;
  double factor = 1.0;
  if (rule.starts_with("clog:")) {
    number = rule.substr(5);
    factor = logn;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc() || ptr != number.data() + number.size()) {
    throw Error(ErrorKind::InvalidArgument, "unknown L_n rule '" + std::string(rule) + "'");
  }
  return value * factor;
}

BetaVector build_beta(const ExperimentSpec& spec) {
  const std::size_t n = spec.n;
  std::vector<double> beta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_prefix = spec.rule == BetaRule::homogeneous_tail && i < spec.r;
    beta[i] = in_prefix ? 0.0 : static_cast<double>(i) * spec.scale / static_cast<double>(n - 1);
  }
  return BetaVector(std::move(beta));
}

namespace {

struct Cell {
  Method method;
  NodeId i = 0;
  NodeId j = 0;
  std::string label;
};

std::vector<Cell> cells_for(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (Method m : spec.methods) {
    if (m == Method::pair) {
      for (const auto& [i, j] : spec.pairs) {
        cells.push_back({m, i, j, "pair_" + std::to_string(i) + "_" + std::to_string(j)});
      }
    } else {
      cells.push_back({m, 0, 0, std::string(to_string(m))});
    }
  }
  return cells;
}

struct Outcome {
  bool ok = false;
  std::vector<Draw> draws;
};

Draw evaluate(const Cell& cell, const ExperimentSpec& spec, const DegreeSequence& d,
              const BetaFit& fit, std::uint64_t rep) {
  Draw draw;
  draw.replication = rep;
  switch (cell.method) {
    case Method::pair: {
      const auto r = pair_test(fit, cell.i, cell.j, spec.alpha);
      draw.statistic = r.u_hat;
      draw.p_value = r.p_value;
      draw.reject = r.reject;
      break;
    }
    case Method::cauchy: {
      const auto r = homogeneity_cauchy(fit, spec.alpha, spec.pvalues);
      draw.statistic = r.statistic;
      draw.p_value = r.p_value;
      draw.reject = r.reject;
      break;
    }
    case Method::lrt: {
      const auto r = homogeneity_lrt(d, fit, spec.alpha);
      draw.statistic = r.statistic;
      draw.p_value = r.p_value;
      draw.reject = r.reject;
      break;
    }
  }
  return draw;
}

ExperimentReport run(const ExperimentSpec& spec, const std::vector<Cell>& cells) {
  const auto start = std::chrono::steady_clock::now();
  const BetaVector beta = build_beta(spec);
  const int threads = spec.threads > 0 ? spec.threads : default_thread_count();
  const long long reps = static_cast<long long>(spec.replications);
  std::vector<Outcome> outcomes(spec.replications);

  // One task per replication; each replication owns its RNG stream
  // (spec.seed, rep), so the outcome vector is schedule independent.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long rep = 0; rep < reps; ++rep) {
    auto& out = outcomes[rep];
    const auto index = static_cast<std::uint64_t>(rep);
    try {
      const Graph g = sample_graph(beta, Seed{spec.seed, index});
      const DegreeSequence d = degrees(g);
      const BetaFit fit = mle_fit(d, spec.fit);
      out.draws.reserve(cells.size());
      for (const auto& cell : cells) out.draws.push_back(evaluate(cell, spec, d, fit, index));
      out.ok = true;
    } catch (const Error&) {
      out.ok = false;
      out.draws.clear();
    }
  }

  ExperimentReport report;
  report.replications = spec.replications;
  report.threads = threads;
  report.cells.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) report.cells[c].label = cells[c].label;
  for (const auto& out : outcomes) {
    if (!out.ok) {
      ++report.failed;
      continue;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto& cell = report.cells[c];
      ++cell.valid;
      if (out.draws[c].reject) ++cell.rejections;
      if (spec.keep_statistics) cell.draws.push_back(out.draws[c]);
    }
  }
  for (auto& cell : report.cells) {
    cell.proportion = cell.valid == 0 ? 0.0
                                      : static_cast<double>(cell.rejections) /
                                            static_cast<double>(cell.valid);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ExperimentReport run_pair_experiment(const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  s.methods = {Method::pair};
  validate(s);
  return run(s, cells_for(s));
}

ExperimentReport run_homogeneity_experiment(const ExperimentSpec& spec) {
  ExperimentSpec s = spec;
  std::erase(s.methods, Method::pair);
  if (s.methods.empty()) {
    throw Error(ErrorKind::InvalidArgument, "homogeneity experiment needs cauchy and/or lrt");
  }
  validate(s);
  return run(s, cells_for(s));
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  return run(spec, cells_for(spec));
}

double ks_distance_normal(std::vector<double> samples, double mean) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "KS distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double f = dist::normal_cdf(samples[k] - mean);
    worst = std::max({worst, static_cast<double>(k + 1) / m - f, f - static_cast<double>(k) / m});
  }
  return worst;
}

double ks_critical_value(std::size_t m, double alpha) {
  if (m == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "KS critical value needs m > 0 and alpha in (0, 1)");
  }
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(m));
}

Histogram histogram(const std::vector<double>& samples, double lo, double hi, std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw Error(ErrorKind::InvalidArgument, "bad histogram range");
  Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (x < lo || x >= hi) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
    ++h.counts[b];
  }
  return h;
}

EmpiricalDistribution empirical_distribution(const ExperimentSpec& spec, NodeId i, NodeId j) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "U_ii is degenerate; pick two distinct nodes");
  if (spec.replications < 100) {
    throw Error(ErrorKind::InvalidArgument, "empirical distribution needs >= 100 replications");
  }
  ExperimentSpec s = spec;
  s.methods = {Method::pair};
  s.pairs = {{i, j}};
  s.keep_statistics = true;
  const auto report = run_pair_experiment(s);

  std::vector<double> samples;
  for (const auto& draw : report.cells.front().draws) samples.push_back(draw.statistic);
  const auto beta = build_beta(s);
  auto out = describe_sample(std::move(samples), beta[i - 1] == beta[j - 1]);
  out.i = i;
  out.j = j;
  out.failed = report.failed;
  return out;
}

EmpiricalDistribution describe_sample(std::vector<double> samples, bool null_pair) {
  if (samples.empty()) {
    throw Error(ErrorKind::NonConvergence, "no successful replications to describe");
  }
  EmpiricalDistribution out;
  out.samples = std::move(samples);
  const double m = static_cast<double>(out.samples.size());
  double sum = 0.0;
  for (double x : out.samples) sum += x;
  out.mean = sum / m;
  double ss = 0.0;
  for (double x : out.samples) ss += (x - out.mean) * (x - out.mean);
  out.sd = out.samples.size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
  out.reference_mean = null_pair ? 0.0 : out.mean;
  out.ks_distance = ks_distance_normal(out.samples, out.reference_mean);
  out.ks_critical_1pct = ks_critical_value(out.samples.size(), 0.01);
  out.histogram = histogram(out.samples, out.mean - 4.0, out.mean + 4.0, 64);
  return out;
}

void write_draws_csv(const ExperimentReport& report, std::ostream& out) {
  out << "replication,cell,statistic,p_value,reject\n";
  out.precision(17);
  for (const auto& cell : report.cells) {
    for (const auto& d : cell.draws) {
      out << d.replication << ',' << cell.label << ',' << d.statistic << ',' << d.p_value << ','
          << (d.reject ? 1 : 0) << '\n';
    }
  }
}

void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_lo,bin_hi,count\n";
  out.precision(10);
  const double width = (h.hi - h.lo) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << h.lo + width * static_cast<double>(b) << ',' << h.lo + width * static_cast<double>(b + 1)
        << ',' << h.counts[b] << '\n';
  }
}

}  // namespace betamodel::mc
