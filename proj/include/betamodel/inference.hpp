#pragma once

#include <cstddef>
#include <vector>

#include "betamodel/graph.hpp"
#include "betamodel/kernels.hpp"

namespace betamodel {

struct FitConfig {
  double tolerance = 1e-8;          // on max_i |d_i - sum_j p_ij|
  int max_iterations = 5000;
  double divergence_bound = 50.0;   // abort once max_i |beta_i| exceeds this
  Backend backend = Backend::parallel;
};

struct BetaFit {
  BetaVector beta_hat;
  std::vector<double> v_hat;  // plug-in Fisher diagonal at beta_hat
  int iterations = 0;
  double max_residual = 0.0;
  bool converged = false;

  std::size_t size() const noexcept { return beta_hat.size(); }
};

// l(beta | d) = sum_i beta_i d_i - sum_{i<j} log(1 + e^{beta_i + beta_j})
double log_likelihood(const BetaVector& beta, const DegreeSequence& d,
                      Backend backend = Backend::parallel);

// v_ii = sum_{j != i} p_ij (1 - p_ij)
std::vector<double> fisher_diag(const BetaVector& beta, Backend backend = Backend::parallel);

// Maximum likelihood fit by the fixed-point map
//   beta_i <- log d_i - log sum_{j != i} 1 / (e^{-beta_j} + e^{beta_i}),
// started at beta = 0 and stopped once the degree residual is within
// cfg.tolerance.
//
// Throws DegreeBoundary when some d_i is 0 or n-1 and NonConvergence when
// the iteration budget runs out or the iterates leave the divergence bound
// (the MLE does not exist for that sequence).
BetaFit mle_fit(const DegreeSequence& d, const FitConfig& cfg = {});

// max_i |d_i - sum_{j != i} p_ij| at beta.
double degree_residual(const BetaVector& beta, const DegreeSequence& d,
                       Backend backend = Backend::parallel);

struct RestrictedFit {
  double beta_common = 0.0;
  double loglik = 0.0;
};

// MLE under beta_1 = ... = beta_n, which is closed form:
// beta = logit(sum d / (n (n-1))) / 2.
RestrictedFit restricted_mle_homogeneous(const DegreeSequence& d,
                                         Backend backend = Backend::parallel);

}  // namespace betamodel
