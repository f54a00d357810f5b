#pragma once

// Randomized property checks shared by the unit tests (small counts) and the
// acceptance suite (>= 1000 cases each). Each check returns how many cases
// ran and the first counterexample, if any.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "betamodel/error.hpp"
#include "betamodel/graph.hpp"
#include "betamodel/hypothesis.hpp"
#include "betamodel/inference.hpp"

namespace props {

using namespace betamodel;

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Degree sequence of a graph drawn from a random heterogeneous beta-model,
// redrawn until every degree is interior and the MLE exists.
struct Instance {
  DegreeSequence d;
  BetaFit fit;
};

inline Instance random_instance(std::mt19937_64& eng, std::size_t min_n = 5, std::size_t max_n = 60) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t n = size(eng);
    const double spread = 2.0 * unit(eng);
    const double offset = unit(eng) - 0.5;
    std::vector<double> b(n);
    for (auto& x : b) x = offset + spread * (unit(eng) - 0.5);
    const auto g = sample_graph(BetaVector(b), {eng(), 0});
    auto d = degrees(g);
    try {
      FitConfig cfg;
      cfg.backend = Backend::serial;
      auto fit = mle_fit(d, cfg);
      return {std::move(d), std::move(fit)};
    } catch (const Error&) {
      // boundary degree or no finite MLE: draw again
    }
  }
}

inline std::string show(std::span<const int> d) {
  std::ostringstream s;
  for (std::size_t k = 0; k < d.size(); ++k) s << (k ? "," : "") << d[k];
  return s.str();
}

inline Outcome residual_contract(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    const double tol = FitConfig{}.tolerance;
    // Recomputed independently of the solver's own bookkeeping.
    double worst = 0.0;
    for (std::size_t i = 0; i < inst.d.size(); ++i) {
      double expected = 0.0;
      for (std::size_t j = 0; j < inst.d.size(); ++j)
        if (j != i) expected += edge_probability(inst.fit.beta_hat[i], inst.fit.beta_hat[j]);
      worst = std::max(worst, std::fabs(inst.d[i] - expected));
    }
    if (!inst.fit.converged || inst.fit.max_residual > tol || worst > tol + 1e-12)
      out.fail("residual " + std::to_string(worst) + " for d=" + show(inst.d.values()));
  }
  return out;
}

inline Outcome permutation_equivariance(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    const std::size_t n = inst.d.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);
    std::vector<int> permuted(n);
    for (std::size_t k = 0; k < n; ++k) permuted[k] = inst.d[perm[k]];
    const auto fit = mle_fit(DegreeSequence(permuted));
    for (std::size_t k = 0; k < n; ++k) {
      if (std::fabs(fit.beta_hat[k] - inst.fit.beta_hat[perm[k]]) > 1e-7) {
        out.fail("permuted fit differs for d=" + show(inst.d.values()));
        break;
      }
    }
  }
  return out;
}

// Equal degrees give equal estimates; larger degrees give larger estimates.
inline Outcome equal_degree_collapse(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    const std::size_t n = inst.d.size();
    bool bad = false;
    for (std::size_t i = 0; i < n && !bad; ++i) {
      for (std::size_t j = i + 1; j < n && !bad; ++j) {
        const double gap = inst.fit.beta_hat[i] - inst.fit.beta_hat[j];
        if (inst.d[i] == inst.d[j]) bad = std::fabs(gap) > 1e-10;
        else bad = (inst.d[i] > inst.d[j]) != (gap > 0.0);
      }
    }
    if (bad) out.fail("ordering of beta_hat does not follow d=" + show(inst.d.values()));
  }
  return out;
}

inline Outcome likelihood_dominance(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    const double full = log_likelihood(inst.fit.beta_hat, inst.d);
    const double restricted = restricted_mle_homogeneous(inst.d).loglik;
    if (full < restricted - 1e-9) out.fail("restricted beats unrestricted for d=" + show(inst.d.values()));
  }
  return out;
}

inline Outcome u_antisymmetry(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    std::uniform_int_distribution<NodeId> node(1, inst.d.size());
    const NodeId i = node(eng);
    NodeId j = node(eng);
    if (j == i) j = i % inst.d.size() + 1;
    const auto a = pair_test(inst.fit, i, j);
    const auto b = pair_test(inst.fit, j, i);
    if (a.u_hat != -b.u_hat || a.p_value != b.p_value)
      out.fail("U(i,j) != -U(j,i) for d=" + show(inst.d.values()));
  }
  return out;
}

inline Outcome cauchy_monotonicity(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 200);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    std::vector<double> p(static_cast<std::size_t>(count(eng)));
    for (auto& x : p) x = std::clamp(unit(eng), 1e-6, 1 - 1e-6);
    const double before = cauchy_combine(p).statistic;
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    const std::size_t k = pick(eng);
    p[k] *= 0.1 + 0.8 * unit(eng);
    const double after = cauchy_combine(p).statistic;
    if (!(after > before)) out.fail("statistic did not increase at K=" + std::to_string(p.size()));
  }
  return out;
}

inline Outcome lrt_nonnegativity(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    const auto inst = random_instance(eng);
    const auto r = homogeneity_lrt(inst.d, inst.fit);
    if (r.statistic < -1e-9 || !(r.p_value >= 0.0 && r.p_value <= 1.0))
      out.fail("LRT statistic " + std::to_string(r.statistic) + " for d=" + show(inst.d.values()));
  }
  return out;
}

// p-values at and beyond the ends of [0, 1] never produce NaN or infinity.
inline Outcome clamped_input_safety(int cases, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 50);
  const double edge[] = {0.0, 1.0, 5e-324, 1e-300, 1e-16, 1e-15, 1 - 1e-16, 1 - 1e-15, 0.5};
  const CombineMethod methods[] = {CombineMethod::fisher,    CombineMethod::pearson,
                                   CombineMethod::george,    CombineMethod::edgington,
                                   CombineMethod::stouffer,  CombineMethod::tippett};
  Outcome out;
  for (; out.cases < cases; ++out.cases) {
    std::vector<double> p(static_cast<std::size_t>(count(eng)));
    for (auto& x : p) x = unit(eng) < 0.5 ? edge[eng() % std::size(edge)] : unit(eng);
    auto sane = [](const HomogeneityResult& r) {
      return std::isfinite(r.statistic) && r.p_value >= 0.0 && r.p_value <= 1.0;
    };
    bool ok = sane(cauchy_combine(p));
    for (auto m : methods) ok = ok && sane(classic_combine(p, m));
    if (!ok) out.fail("non-finite combination at K=" + std::to_string(p.size()));
  }
  return out;
}

}  // namespace props
