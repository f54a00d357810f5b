#pragma once

// Scalar null distributions used by the tests. Domain violations throw
// Error(InvalidArgument).
namespace betamodel::dist {

double normal_cdf(double x);
// 1 - normal_cdf(x) without cancellation for large x.
double normal_sf(double x);
// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

// 1/2 + arctan(x)/pi
double cauchy_cdf(double x);
// P(|C| >= t) for a standard Cauchy C, t >= 0.
double cauchy_two_sided_sf(double t);

// Regularized lower incomplete gamma P(df/2, x/2); x >= 0, df > 0.
double chisq_cdf(double x, double df);
double chisq_sf(double x, double df);

// Student t upper tail P(T > x).
double student_t_sf(double x, double df);

}  // namespace betamodel::dist
