#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "betamodel/graph.hpp"
#include "betamodel/inference.hpp"

namespace betamodel {

// Result of testing H0: beta_i = beta_j.
struct PairTestResult {
  NodeId i = 0;
  NodeId j = 0;
  double u_hat = 0.0;    // (b_i - b_j) / sqrt(1/v_ii + 1/v_jj)
  double p_value = 1.0;  // two-sided, 2 (1 - Phi(|u_hat|))
  double tail_p = 0.5;   // one-sided, 1 - Phi(|u_hat|); the scale of the food-web table
  bool reject = false;   // |u_hat| >= u_{1 - alpha/2}
};

PairTestResult pair_test(const BetaFit& fit, NodeId i, NodeId j, double alpha = 0.05);

// Which per-pair p-value feeds a combination test.
enum class PairPValueKind {
  upper,      // 1 - Phi(U_ij) for i < j; uniform under the null, ties give 1/2
  two_sided,  // 2 (1 - Phi(|U_ij|)); ties give exactly 1
  one_sided,  // 1 - Phi(|U_ij|)
};

std::string_view to_string(PairPValueKind kind);
std::optional<PairPValueKind> parse_pvalue_kind(std::string_view name);

// p-values for every pair i<j, stored as a row-major upper triangle.
class PairPValues {
 public:
  PairPValues(std::size_t n, std::vector<double> values);

  std::size_t nodes() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  // 1-based ids, either order. For the `upper` kind the value is oriented
  // as p for (min, max).
  double at(NodeId i, NodeId j) const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

PairPValues all_pair_pvalues(const BetaFit& fit, PairPValueKind kind = PairPValueKind::two_sided,
                             Backend backend = Backend::parallel);

enum class CombineMethod { cauchy, lrt, fisher, pearson, george, edgington, stouffer, tippett };

std::string_view to_string(CombineMethod method);
std::optional<CombineMethod> parse_combine_method(std::string_view name);

struct HomogeneityResult {
  CombineMethod method = CombineMethod::cauchy;
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  // Set for the classic combiners: their null distribution assumes
  // independent p-values, which pairwise statistics are not.
  bool independence_only = false;
};

// p-values are clamped into [1e-15, 1 - 1e-15] before any tan/log/quantile.
inline constexpr double kPValueClamp = 1e-15;
double clamp_pvalue(double p);

// tan((1/2 - p) pi) for p in (0, 1), evaluated as a cotangent near the ends.
double cauchy_transform(double p);

// T = sum_k w_k tan((1/2 - p_k) pi); p-value 1 - 2 arctan(|T|)/pi; rejects
// when |T| exceeds the upper alpha/2 Cauchy quantile.
HomogeneityResult cauchy_combine(std::span<const double> pvals, std::span<const double> weights,
                                 double alpha = 0.05);
// Uniform weights 1/K.
HomogeneityResult cauchy_combine(std::span<const double> pvals, double alpha = 0.05);

// Fisher, Pearson, George, Edgington, Stouffer or Tippett, with p-values
// from the independence null.
HomogeneityResult classic_combine(std::span<const double> pvals, CombineMethod method,
                                  double alpha = 0.05);

// Cauchy combination over all n(n-1)/2 pair p-values with w_ij = 2/(n(n-1)).
HomogeneityResult homogeneity_cauchy(const BetaFit& fit, double alpha = 0.05,
                                     PairPValueKind kind = PairPValueKind::upper);

// 2 (l(b_hat) - l(b_res 1)) against chi-square with n-1 degrees of freedom.
HomogeneityResult homogeneity_lrt(const DegreeSequence& d, const BetaFit& fit,
                                  double alpha = 0.05);
HomogeneityResult homogeneity_lrt(const DegreeSequence& d, double alpha = 0.05,
                                  const FitConfig& cfg = {});

// Dispatches on method; classic combiners run over the pair p-values.
HomogeneityResult homogeneity_test(const DegreeSequence& d, const BetaFit& fit,
                                   CombineMethod method, double alpha = 0.05,
                                   PairPValueKind kind = PairPValueKind::upper);

}  // namespace betamodel
