#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "betamodel/datasets.hpp"
#include "betamodel/error.hpp"
#include "betamodel/inference.hpp"
#include "support/newton_oracle.hpp"
#include "support/properties.hpp"

using namespace betamodel;
using doctest::Approx;

namespace {

ErrorKind fit_error(std::vector<int> d, FitConfig cfg = {}) {
  try {
    mle_fit(DegreeSequence(std::move(d)), cfg);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("fit succeeded");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("log_likelihood") {
  const DegreeSequence d2({1, 1});
  CHECK(log_likelihood(BetaVector({0.0, 0.0}), d2) == Approx(-std::numbers::ln2).epsilon(1e-15));

  const auto food_web = datasets::chesapeake();
  const BetaVector zero(std::vector<double>(33, 0.0));
  CHECK(log_likelihood(zero, food_web) == Approx(-528 * std::numbers::ln2).epsilon(1e-14));

  const DegreeSequence d4({2, 2, 2, 2});
  const double h = 0.5 * std::numbers::ln2;
  const double ll4 = log_likelihood(BetaVector({h, h, h, h}), d4);
  CHECK(ll4 == Approx(4 * std::numbers::ln2 - 6 * std::log(3.0)).epsilon(1e-14));
  CHECK(ll4 == Approx(-3.819085009768877).epsilon(1e-14));

  // Both backends and a large argument.
  const BetaVector wide({-30.0, 35.0, 0.5, 1.0});
  const DegreeSequence dw({1, 3, 2, 2});
  CHECK(std::isfinite(log_likelihood(wide, dw)));
  CHECK(log_likelihood(wide, dw, Backend::serial) ==
        Approx(log_likelihood(wide, dw, Backend::parallel)).epsilon(1e-14));
}

TEST_CASE("fisher_diag") {
  for (double v : fisher_diag(BetaVector(std::vector<double>(33, 0.0)))) CHECK(v == 8.0);
  const auto v = fisher_diag(BetaVector({1.0, -1.0, 0.0}));
  CHECK(v[0] == Approx(0.4466119332414819).epsilon(1e-14));
  CHECK(v[1] == Approx(0.4466119332414819).epsilon(1e-14));

  SUBCASE("bounds in terms of L_n") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      const std::size_t n = 10 + rep;
      const double scale = 3.0 * (rep % 5) / 4.0;
      std::vector<double> b(n);
      for (auto& x : b) x = scale * u(eng);
      const BetaVector beta(b);
      const double top = (n - 1) / 4.0;
      const double bottom = top * std::exp(-2.0 * beta.max_abs());
      for (double vi : fisher_diag(beta)) {
        CHECK(vi > 0.0);
        CHECK(vi <= top);
        CHECK(vi >= bottom * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("mle_fit worked examples") {
  SUBCASE("regular sequence has the symmetric solution") {
    const auto fit = mle_fit(DegreeSequence({2, 2, 2, 2}));
    CHECK(fit.converged);
    for (double b : fit.beta_hat) CHECK(std::fabs(b - 0.5 * std::numbers::ln2) <= 1e-8);
    CHECK(fit.max_residual <= 1e-8);
  }

  SUBCASE("matches the Newton oracle on (1,2,2,2,1)") {
    const std::vector<int> d{1, 2, 2, 2, 1};
    // A 1e-8 degree residual moves beta by up to ~1.5e-8 here, so the
    // componentwise comparison needs a tighter stopping rule.
    FitConfig tight;
    tight.tolerance = 1e-10;
    const auto fit = mle_fit(DegreeSequence(d), tight);
    const auto ref = oracle::newton_mle(d);
    REQUIRE(ref.has_value());
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::fabs(fit.beta_hat[i] - (*ref)[i]) <= 1e-8);
  }

  SUBCASE("food web converges within tolerance") {
    const auto fit = mle_fit(datasets::chesapeake());
    CHECK(fit.converged);
    CHECK(fit.max_residual <= 1e-8);
    CHECK(fit.size() == 33);
    CHECK(degree_residual(fit.beta_hat, datasets::chesapeake()) == Approx(fit.max_residual).epsilon(1e-6));
    for (double v : fit.v_hat) {
      CHECK(v > 0.0);
      CHECK(v <= 8.0);
    }
  }

  SUBCASE("backends agree") {
    FitConfig serial_cfg;
    serial_cfg.backend = Backend::serial;
    const auto a = mle_fit(datasets::chesapeake(), serial_cfg);
    const auto b = mle_fit(datasets::chesapeake());
    CHECK(a.iterations == b.iterations);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.beta_hat[i] == Approx(b.beta_hat[i]).epsilon(1e-12));
  }
}

TEST_CASE("mle_fit failure signals") {
  CHECK(fit_error({0, 1, 1}) == ErrorKind::DegreeBoundary);
  CHECK(fit_error({3, 1, 1, 1}) == ErrorKind::DegreeBoundary);
  // Interior degrees but no finite MLE: the iterates run off to infinity.
  CHECK(fit_error({1, 1, 2, 2}) == ErrorKind::NonConvergence);
  FitConfig one_step;
  one_step.max_iterations = 1;
  CHECK(fit_error({1, 2, 2, 2, 1}, one_step) == ErrorKind::NonConvergence);
  FitConfig bad;
  bad.tolerance = 0.0;
  CHECK(fit_error({2, 2, 2, 2}, bad) == ErrorKind::InvalidArgument);
}

TEST_CASE("oracle equivalence on small enumerations") {
  for (int n : {4, 5}) {
    int finite = 0;
    for (const auto& d : oracle::interior_graphical_sequences(n)) {
      CAPTURE(props::show(d));
      const auto ref = oracle::newton_mle(d);
      bool fitted = true;
      BetaFit fit;
      try {
        fit = mle_fit(DegreeSequence(d));
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonConvergence);
        fitted = false;
      }
      CHECK(fitted == ref.has_value());
      if (fitted && ref) {
        ++finite;
        for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::fabs(fit.beta_hat[i] - (*ref)[i]) <= 1e-6);
      }
    }
    CHECK(finite > 0);
  }
}

TEST_CASE("restricted_mle_homogeneous") {
  const auto reg = restricted_mle_homogeneous(DegreeSequence({2, 2, 2, 2}));
  CHECK(reg.beta_common == Approx(0.5 * std::numbers::ln2).epsilon(1e-15));
  CHECK(reg.loglik == Approx(-3.819085009768877).epsilon(1e-14));

  const auto food_web = restricted_mle_homogeneous(datasets::chesapeake());
  CHECK(food_web.beta_common == Approx(-0.9310017569264446).epsilon(1e-14));
  CHECK(food_web.beta_common == Approx(0.5 * std::log(142.0 / 914.0)).epsilon(1e-14));

  CHECK_THROWS_AS(restricted_mle_homogeneous(DegreeSequence({0, 0, 0})), Error);
  CHECK_THROWS_AS(restricted_mle_homogeneous(DegreeSequence({2, 2, 2})), Error);
}

TEST_CASE("inference properties on random sequences") {
  for (const auto& [name, outcome] :
       {std::pair{"residual contract", props::residual_contract(100, 1)},
        std::pair{"permutation equivariance", props::permutation_equivariance(100, 2)},
        std::pair{"equal-degree collapse", props::equal_degree_collapse(100, 3)},
        std::pair{"likelihood dominance", props::likelihood_dominance(100, 4)}}) {
    CAPTURE(name);
    CAPTURE(outcome.first_failure);
    CHECK(outcome.cases == 100);
    CHECK(outcome.ok());
  }
}

TEST_CASE("consistency at beta = 0") {
  // sd(b_hat_i) ~ 2/sqrt(n), so the maximum over n nodes is about
  // 2 sqrt(2) sqrt(log n / n).
  for (std::size_t n : {100u, 200u, 400u}) {
    const BetaVector zero(std::vector<double>(n, 0.0));
    double worst = 0.0;
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      const auto fit = mle_fit(degrees(sample_graph(zero, {31, rep})));
      worst = std::max(worst, fit.beta_hat.max_abs());
    }
    CAPTURE(n);
    CHECK(worst / std::sqrt(std::log(double(n)) / n) < 5.0);
  }
}
