#include "betamodel/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betamodel/error.hpp"

namespace betamodel {

namespace {

void check_sizes(const BetaVector& beta, const DegreeSequence& d) {
  if (beta.size() != d.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "beta has " + std::to_string(beta.size()) + " entries but the degree sequence has " +
                    std::to_string(d.size()));
  }
}

void fixed_point_sums(Backend backend, std::span<const double> beta, std::span<double> out) {
  if (backend == Backend::serial) {
    serial::fixed_point_sums(beta, out);
  } else {
    omp::fixed_point_sums(beta, out);
  }
}

double residual_from_sums(std::span<const double> beta, std::span<const double> sums,
                          const DegreeSequence& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    worst = std::max(worst, std::fabs(d[i] - std::exp(beta[i]) * sums[i]));
  }
  return worst;
}

}  // namespace

double log_likelihood(const BetaVector& beta, const DegreeSequence& d, Backend backend) {
  check_sizes(beta, d);
  double linear = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) linear += beta[i] * d[i];
  const double partition = backend == Backend::serial ? serial::log_partition(beta.values())
                                                      : omp::log_partition(beta.values());
  return linear - partition;
}

std::vector<double> fisher_diag(const BetaVector& beta, Backend backend) {
  std::vector<double> v(beta.size());
  if (backend == Backend::serial) {
    serial::fisher_diagonal(beta.values(), v);
  } else {
    omp::fisher_diagonal(beta.values(), v);
  }
  return v;
}

double degree_residual(const BetaVector& beta, const DegreeSequence& d, Backend backend) {
  check_sizes(beta, d);
  std::vector<double> sums(beta.size());
  fixed_point_sums(backend, beta.values(), sums);
  return residual_from_sums(beta.values(), sums, d);
}

BetaFit mle_fit(const DegreeSequence& d, const FitConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1 || !(cfg.divergence_bound > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "fit config needs tolerance > 0, max_iterations >= 1, divergence_bound > 0");
  }
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0 || d[i] == static_cast<int>(n) - 1) {
      throw Error(ErrorKind::DegreeBoundary,
                  "node " + std::to_string(i + 1) + " has degree " + std::to_string(d[i]) +
                      "; the MLE is infinite when a degree is 0 or n-1 (n=" + std::to_string(n) +
                      ")");
    }
  }

  std::vector<double> log_d(n);
  for (std::size_t i = 0; i < n; ++i) log_d[i] = std::log(static_cast<double>(d[i]));

  std::vector<double> beta(n, 0.0);
  std::vector<double> sums(n);
  int iterations = 0;
  double residual = 0.0;
  for (;;) {
    fixed_point_sums(cfg.backend, beta, sums);
    residual = residual_from_sums(beta, sums, d);
    if (residual <= cfg.tolerance) break;
    if (iterations == cfg.max_iterations) {
      throw Error(ErrorKind::NonConvergence,
                  "fixed-point iteration did not converge in " + std::to_string(iterations) +
                      " iterations (max degree residual " + std::to_string(residual) + ")");
    }
    double largest = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
      beta[i] = log_d[i] - std::log(sums[i]);
      if (std::fabs(beta[i]) > largest) {
        largest = std::fabs(beta[i]);
        argmax = i;
      }
    }
    ++iterations;
    if (!(largest <= cfg.divergence_bound)) {
      throw Error(ErrorKind::NonConvergence,
                  "beta_" + std::to_string(argmax + 1) + " left the divergence bound " +
                      std::to_string(cfg.divergence_bound) + " after " +
                      std::to_string(iterations) +
                      " iterations; the MLE does not exist for this degree sequence");
    }
  }

  BetaFit fit;
  fit.beta_hat = BetaVector(std::move(beta));
  fit.v_hat = fisher_diag(fit.beta_hat, cfg.backend);
  fit.iterations = iterations;
  fit.max_residual = residual;
  fit.converged = true;
  return fit;
}

RestrictedFit restricted_mle_homogeneous(const DegreeSequence& d, Backend backend) {
  const std::size_t n = d.size();
  const long long total = d.sum();
  const long long cap = static_cast<long long>(n) * static_cast<long long>(n - 1);
  if (total == 0 || total == cap) {
    throw Error(ErrorKind::DegreeBoundary,
                "degree sum " + std::to_string(total) +
                    " is at the boundary; the homogeneous MLE is infinite");
  }
  RestrictedFit out;
  out.beta_common = 0.5 * std::log(static_cast<double>(total) / static_cast<double>(cap - total));
  out.loglik = log_likelihood(BetaVector(std::vector<double>(n, out.beta_common)), d, backend);
  return out;
}

}  // namespace betamodel
