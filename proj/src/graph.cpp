#include "betamodel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betamodel/error.hpp"
#include "betamodel/kernels.hpp"
#include "betamodel/numeric.hpp"

namespace betamodel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeBoundary: return "DegreeBoundary";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "graph must have at least one node");
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  Graph g(n);
  for (const auto& [i, j] : edges) g.add_edge(i, j);
  return g;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw Error(ErrorKind::InvalidArgument, "node id out of range");
  }
  return adjacent(i - 1, j - 1);
}

void Graph::add_edge(NodeId i, NodeId j) {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw Error(ErrorKind::Validation,
                "edge " + std::to_string(i) + "-" + std::to_string(j) + " outside 1.." +
                    std::to_string(n_));
  }
  if (i == j) {
    throw Error(ErrorKind::Validation, "self-loop on node " + std::to_string(i));
  }
  set_adjacent(i - 1, j - 1);
}

void Graph::set_adjacent(std::size_t i, std::size_t j) noexcept {
  auto& cell = adj_[i * n_ + j];
  if (cell == 0) {
    cell = 1;
    adj_[j * n_ + i] = 1;
    ++edges_;
  }
}

DegreeSequence::DegreeSequence(std::vector<int> degrees) : d_(std::move(degrees)) {
  if (d_.empty()) throw Error(ErrorKind::Validation, "degree sequence is empty");
  const long long cap = static_cast<long long>(d_.size()) - 1;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 0 || d_[i] > cap) {
      throw Error(ErrorKind::Validation, "degree of node " + std::to_string(i + 1) + " is " +
                                             std::to_string(d_[i]) + ", outside 0.." +
                                             std::to_string(cap));
    }
    sum_ += d_[i];
  }
  if (sum_ % 2 != 0) {
    throw Error(ErrorKind::Validation, "degree sum " + std::to_string(sum_) + " is odd");
  }
}

BetaVector::BetaVector(std::vector<double> beta) : beta_(std::move(beta)) {
  for (std::size_t i = 0; i < beta_.size(); ++i) {
    if (!std::isfinite(beta_[i])) {
      throw Error(ErrorKind::InvalidArgument, "beta_" + std::to_string(i + 1) + " is not finite");
    }
  }
}

double BetaVector::max_abs() const noexcept {
  double m = 0.0;
  for (double b : beta_) m = std::max(m, std::fabs(b));
  return m;
}

DegreeSequence degrees(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> d(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int k = 0;
    for (std::size_t j = 0; j < n; ++j) k += g.adjacent(i, j) ? 1 : 0;
    d[i] = k;
  }
  return DegreeSequence(std::move(d));
}

double edge_probability(double beta_i, double beta_j) {
  return numeric::logistic(beta_i + beta_j);
}

Graph sample_graph(const BetaVector& beta, Seed seed) {
  return omp::sample_graph(beta.values(), seed);
}

}  // namespace betamodel
