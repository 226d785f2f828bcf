#ifndef MJP_MATHUTIL_HPP
#define MJP_MATHUTIL_HPP

#include <cmath>
#include <numbers>

namespace mjp {

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

inline double log_normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) -
         0.5 * std::log(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// log Phi(z), stable deep in the lower tail where erfc underflows.
inline double log_normal_cdf(double z) {
  if (z > -37.0) return std::log(normal_cdf(z));
  const double z2 = z * z;
  // Asymptotic expansion of the Mills ratio.
  return -0.5 * z2 - std::log(-z) -
         0.5 * std::log(2.0 * std::numbers::pi) + std::log1p(-1.0 / z2);
}

}  // namespace mjp

#endif
