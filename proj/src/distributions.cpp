#include "betamodel/distributions.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "betamodel/error.hpp"

namespace betamodel::dist {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": argument is not finite");
  }
}

void require_df(double df, const char* what) {
  if (!(df > 0.0) || !std::isfinite(df)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": degrees of freedom must be positive");
  }
}

}  // namespace

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x) {
  require_finite(x, "normal_sf");
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "normal_quantile: p must lie in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double cauchy_cdf(double x) {
  require_finite(x, "cauchy_cdf");
  return 0.5 + std::atan(x) / std::numbers::pi;
}

double cauchy_two_sided_sf(double t) {
  if (std::isnan(t)) throw Error(ErrorKind::InvalidArgument, "cauchy_two_sided_sf: NaN");
  t = std::fabs(t);
  // 1 - 2 atan(t)/pi == 2 atan(1/t)/pi; the second form keeps precision in the tail.
  if (t > 1.0) return 2.0 * std::atan(1.0 / t) / std::numbers::pi;
  return 1.0 - 2.0 * std::atan(t) / std::numbers::pi;
}

double chisq_cdf(double x, double df) {
  require_df(df, "chisq_cdf");
  if (std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "chisq_cdf: NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * df, 0.5 * x);
}

double chisq_sf(double x, double df) {
  require_df(df, "chisq_sf");
  if (std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "chisq_sf: NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double student_t_sf(double x, double df) {
  require_df(df, "student_t_sf");
  require_finite(x, "student_t_sf");
  return boost::math::cdf(boost::math::complement(boost::math::students_t(df), x));
}

}  // namespace betamodel::dist
