#pragma once

// O(n^2) inner loops of the estimator and the tests. Every kernel has a
// serial reference in `betamodel::serial` and an OpenMP version in
// `betamodel::omp` with identical floating-point results: each output
// element is reduced in the same fixed order regardless of thread count.

#include <cstddef>
#include <span>

#include "betamodel/graph.hpp"

namespace betamodel {

enum class Backend { serial, parallel };

namespace serial {

// out_i = sum_{j != i} 1 / (e^{-beta_j} + e^{beta_i}).
// e^{beta_i} * out_i is the expected degree of node i, and
// log d_i - log out_i is the fixed-point update for beta_i.
void fixed_point_sums(std::span<const double> beta, std::span<double> out);

// out_i = sum_{j != i} p_ij (1 - p_ij)
void fisher_diagonal(std::span<const double> beta, std::span<double> out);

// sum_{i<j} log(1 + e^{beta_i + beta_j})
double log_partition(std::span<const double> beta);

// Studentized differences for every pair i<j, row-major upper triangle:
// out[k(i,j)] = (beta_i - beta_j) / sqrt(1/v_i + 1/v_j).
void pair_statistics(std::span<const double> beta, std::span<const double> v,
                     std::span<double> out);

Graph sample_graph(std::span<const double> beta, Seed seed);

}  // namespace serial

namespace omp {

void fixed_point_sums(std::span<const double> beta, std::span<double> out);
void fisher_diagonal(std::span<const double> beta, std::span<double> out);
double log_partition(std::span<const double> beta);
void pair_statistics(std::span<const double> beta, std::span<const double> v,
                     std::span<double> out);
Graph sample_graph(std::span<const double> beta, Seed seed);

}  // namespace omp

// Offset of pair (i, j), 0 <= i < j < n, in a row-major upper triangle.
constexpr std::size_t triangle_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

// Number of OpenMP threads the parallel backend will use. Honors the
// BETAMODEL_THREADS environment variable, then OpenMP's own default.
int default_thread_count();

}  // namespace betamodel
