#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "betamodel/graph.hpp"
#include "betamodel/hypothesis.hpp"
#include "betamodel/inference.hpp"

namespace betamodel::mc {

enum class BetaRule {
  linear,            // beta_i = (i-1) L_n / (n-1)
  homogeneous_tail,  // beta_i = 0 for i <= r, (i-1) L_n / (n-1) otherwise
};

enum class Method { pair, cauchy, lrt };

std::string_view to_string(Method m);
std::string_view to_string(BetaRule rule);

struct ExperimentSpec {
  std::size_t n = 100;
  BetaRule rule = BetaRule::linear;
  double scale = 0.0;  // L_n
  std::size_t r = 0;   // homogeneous prefix length, homogeneous_tail only
  std::vector<std::pair<NodeId, NodeId>> pairs;
  double alpha = 0.05;
  std::size_t replications = 200;
  std::uint64_t seed = 1;
  std::vector<Method> methods;
  PairPValueKind pvalues = PairPValueKind::upper;  // input to the Cauchy combination
  FitConfig fit;
  bool keep_statistics = false;
  int threads = 0;  // 0: default_thread_count()
};

// Throws InvalidArgument on an inconsistent spec.
void validate(const ExperimentSpec& spec);

// Heterogeneity scale from a rule name: a number, "loglog" (log log n),
// "sqrt_loglog", "sqrt_log", or "clog:<c>" (c log n).
double resolve_scale(std::string_view rule, std::size_t n);

BetaVector build_beta(const ExperimentSpec& spec);

struct Draw {
  std::uint64_t replication = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
};

struct CellResult {
  std::string label;       // "pair_1_50", "cauchy", "lrt"
  std::size_t rejections = 0;
  std::size_t valid = 0;   // replications whose fit converged
  double proportion = 0.0; // rejections / valid
  std::vector<Draw> draws; // filled when keep_statistics
};

struct ExperimentReport {
  std::vector<CellResult> cells;
  std::size_t replications = 0;
  std::size_t failed = 0;  // dropped: boundary degrees or non-convergent fits
  int threads = 1;
  double seconds = 0.0;
};

// Size/power of the pair test for every pair in spec.pairs.
ExperimentReport run_pair_experiment(const ExperimentSpec& spec);

// Size/power of the homogeneity tests in spec.methods (cauchy and/or lrt).
ExperimentReport run_homogeneity_experiment(const ExperimentSpec& spec);

// Dispatches on spec.methods: pair-only specs run the pair experiment,
// anything else the homogeneity experiment (pair cells appended if asked).
ExperimentReport run_experiment(const ExperimentSpec& spec);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
};

struct EmpiricalDistribution {
  NodeId i = 0;
  NodeId j = 0;
  std::vector<double> samples;
  std::size_t failed = 0;
  double mean = 0.0;
  double sd = 0.0;
  double reference_mean = 0.0;  // 0 when beta_i == beta_j, otherwise the sample mean
  double ks_distance = 0.0;     // against N(reference_mean, 1)
  double ks_critical_1pct = 0.0;
  Histogram histogram;          // 64 bins over [mean - 4, mean + 4]
};

EmpiricalDistribution empirical_distribution(const ExperimentSpec& spec, NodeId i, NodeId j);

// Summary statistics, KS distance and histogram for Û draws already in hand.
// `null_pair` selects N(0,1) as the reference instead of N(mean,1).
EmpiricalDistribution describe_sample(std::vector<double> samples, bool null_pair);

// sup_x |F_m(x) - Phi(x - mean)| for the sample's empirical CDF F_m.
double ks_distance_normal(std::vector<double> samples, double mean);

// Asymptotic Kolmogorov-Smirnov critical value sqrt(-log(alpha/2)/2) / sqrt(m).
double ks_critical_value(std::size_t m, double alpha);

Histogram histogram(const std::vector<double>& samples, double lo, double hi, std::size_t bins);

// One row per (replication, cell): replication,cell,statistic,p_value,reject.
void write_draws_csv(const ExperimentReport& report, std::ostream& out);
void write_histogram_csv(const Histogram& h, std::ostream& out);

}  // namespace betamodel::mc
