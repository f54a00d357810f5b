#pragma once

#include <cmath>

// Scalar logistic helpers shared by the kernels. None of them evaluates
// exp() of a large positive argument.
namespace betamodel::numeric {

// 1 / (1 + e^{-x})
inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + e^x)
inline double log1p_exp(double x) {
  if (x > 0.0) {
    return x + std::log1p(std::exp(-x));
  }
  return std::log1p(std::exp(x));
}

// p (1 - p) with p = logistic(x); symmetric in x.
inline double logistic_variance(double x) {
  const double e = std::exp(-std::fabs(x));
  const double s = 1.0 + e;
  return e / (s * s);
}

}  // namespace betamodel::numeric
