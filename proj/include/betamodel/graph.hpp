#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "betamodel/rng.hpp"

namespace betamodel {

// Node ids are 1-based on every public surface; kernels work 0-based.
using NodeId = std::size_t;

// Undirected simple graph stored as a dense byte matrix. Symmetry and the
// zero diagonal are maintained by add_edge().
class Graph {
 public:
  explicit Graph(std::size_t n);

  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }

  bool has_edge(NodeId i, NodeId j) const;
  // Idempotent; throws Validation on self-loops and out-of-range ids.
  void add_edge(NodeId i, NodeId j);

  // 0-based unchecked access for kernels.
  bool adjacent(std::size_t i, std::size_t j) const noexcept {
    return adj_[i * n_ + j] != 0;
  }
  void set_adjacent(std::size_t i, std::size_t j) noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> adj_;
};

// The sufficient statistic of the beta-model. Construction validates
// 0 <= d_i <= n-1 and an even degree sum.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<int> degrees);

  std::size_t size() const noexcept { return d_.size(); }
  int operator[](std::size_t i) const noexcept { return d_[i]; }
  std::span<const int> values() const noexcept { return d_; }
  long long sum() const noexcept { return sum_; }

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<int> d_;
  long long sum_ = 0;
};

// Node parameters on the natural (log-odds) scale. All entries finite.
class BetaVector {
 public:
  BetaVector() = default;
  explicit BetaVector(std::vector<double> beta);

  std::size_t size() const noexcept { return beta_.size(); }
  double operator[](std::size_t i) const noexcept { return beta_[i]; }
  std::span<const double> values() const noexcept { return beta_; }
  auto begin() const noexcept { return beta_.begin(); }
  auto end() const noexcept { return beta_.end(); }

  // L_n = max_i |beta_i|
  double max_abs() const noexcept;

  friend bool operator==(const BetaVector&, const BetaVector&) = default;

 private:
  std::vector<double> beta_;
};

DegreeSequence degrees(const Graph& g);

// P{A_ij = 1} = e^{b_i + b_j} / (1 + e^{b_i + b_j}), evaluated stably.
double edge_probability(double beta_i, double beta_j);

// Each pair i<j is an independent Bernoulli(edge_probability). Row i draws
// from its own stream keyed by (seed, i), so the result does not depend on
// the thread count.
Graph sample_graph(const BetaVector& beta, Seed seed);

// Edge list: whitespace-separated 1-based id pairs, one edge per line; '#'
// starts a comment. Duplicates and reversed duplicates collapse. n is the
// largest id seen unless `min_nodes` is larger.
Graph parse_edge_list(std::istream& in, std::size_t min_nodes = 0);
Graph read_graph(const std::filesystem::path& path);

// Degree file: integers separated by whitespace and/or commas.
DegreeSequence parse_degrees(std::istream& in);
DegreeSequence read_degrees(const std::filesystem::path& path);

enum class InputFormat { edge_list, degrees };

// Reads either format and reduces it to the degree sequence.
DegreeSequence load_degrees(const std::filesystem::path& path, InputFormat format);

}  // namespace betamodel
