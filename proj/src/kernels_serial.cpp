#include <cmath>

#include "betamodel/kernels.hpp"
#include "betamodel/numeric.hpp"

namespace betamodel::serial {

void fixed_point_sums(std::span<const double> beta, std::span<double> out) {
  const std::size_t n = beta.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) s += 1.0 / (std::exp(-beta[j]) + std::exp(beta[i]));
    }
    out[i] = s;
  }
}

void fisher_diagonal(std::span<const double> beta, std::span<double> out) {
  const std::size_t n = beta.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) s += numeric::logistic_variance(beta[i] + beta[j]);
    }
    out[i] = s;
  }
}

double log_partition(std::span<const double> beta) {
  const std::size_t n = beta.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row += numeric::log1p_exp(beta[i] + beta[j]);
    total += row;
  }
  return total;
}

void pair_statistics(std::span<const double> beta, std::span<const double> v,
                     std::span<double> out) {
  const std::size_t n = beta.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out[triangle_index(n, i, j)] = (beta[i] - beta[j]) / std::sqrt(1.0 / v[i] + 1.0 / v[j]);
    }
  }
}

Graph sample_graph(std::span<const double> beta, Seed seed) {
  const std::size_t n = beta.size();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto eng = make_engine(seed, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(eng) < edge_probability(beta[i], beta[j])) g.set_adjacent(i, j);
    }
  }
  return g;
}

}  // namespace betamodel::serial
