#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

namespace chaoscipher {

// Regularized upper incomplete gamma function Q(a, x), the "igamc" of the
// statistical-test literature.
inline double igamc(double a, double x) { return boost::math::gamma_q(a, x); }

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace chaoscipher
