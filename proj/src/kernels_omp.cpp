#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "betamodel/kernels.hpp"
#include "betamodel/numeric.hpp"

namespace betamodel {

int default_thread_count() {
  if (const char* env = std::getenv("BETAMODEL_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

namespace omp {

namespace {
// Signed loop index for OpenMP worksharing.
using index_t = long long;
}  // namespace

void fixed_point_sums(std::span<const double> beta, std::span<double> out) {
  const index_t n = static_cast<index_t>(beta.size());
  std::vector<double> neg_exp(beta.size());
  std::vector<double> pos_exp(beta.size());
  for (index_t k = 0; k < n; ++k) {
    neg_exp[k] = std::exp(-beta[k]);
    pos_exp[k] = std::exp(beta[k]);
  }
#pragma omp parallel for schedule(static) num_threads(default_thread_count())
  for (index_t i = 0; i < n; ++i) {
    const double bi = pos_exp[i];
    double s = 0.0;
    for (index_t j = 0; j < n; ++j) {
      if (j != i) s += 1.0 / (neg_exp[j] + bi);
    }
    out[i] = s;
  }
}

void fisher_diagonal(std::span<const double> beta, std::span<double> out) {
  const index_t n = static_cast<index_t>(beta.size());
#pragma omp parallel for schedule(static) num_threads(default_thread_count())
  for (index_t i = 0; i < n; ++i) {
    const double bi = beta[i];
    double s = 0.0;
    for (index_t j = 0; j < n; ++j) {
      if (j != i) s += numeric::logistic_variance(bi + beta[j]);
    }
    out[i] = s;
  }
}

double log_partition(std::span<const double> beta) {
  const index_t n = static_cast<index_t>(beta.size());
  std::vector<double> rows(beta.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(default_thread_count())
  for (index_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (index_t j = i + 1; j < n; ++j) row += numeric::log1p_exp(beta[i] + beta[j]);
    rows[i] = row;
  }
  // Fixed-order reduction keeps the result independent of the schedule.
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

void pair_statistics(std::span<const double> beta, std::span<const double> v,
                     std::span<double> out) {
  const std::size_t un = beta.size();
  const index_t n = static_cast<index_t>(un);
  std::vector<double> inv(un);
  for (std::size_t k = 0; k < un; ++k) inv[k] = 1.0 / v[k];
#pragma omp parallel for schedule(dynamic, 16) num_threads(default_thread_count())
  for (index_t i = 0; i < n; ++i) {
    std::size_t k = triangle_index(un, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    for (index_t j = i + 1; j < n; ++j, ++k) {
      out[k] = (beta[i] - beta[j]) / std::sqrt(inv[i] + inv[j]);
    }
  }
}

Graph sample_graph(std::span<const double> beta, Seed seed) {
  const std::size_t un = beta.size();
  const index_t n = static_cast<index_t>(un);
  Graph g(un);
  // Rows write disjoint (i, j>i) cells; set_adjacent also writes (j, i),
  // so collect the upper triangle first and mirror afterwards.
  std::vector<std::vector<std::size_t>> hits(un);
#pragma omp parallel for schedule(dynamic, 8) num_threads(default_thread_count())
  for (index_t i = 0; i < n; ++i) {
    auto eng = make_engine(seed, static_cast<std::uint64_t>(i));
    auto& row = hits[i];
    for (index_t j = i + 1; j < n; ++j) {
      if (uniform01(eng) < edge_probability(beta[i], beta[j])) row.push_back(static_cast<std::size_t>(j));
    }
  }
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j : hits[i]) g.set_adjacent(i, j);
  }
  return g;
}

}  // namespace omp
}  // namespace betamodel
