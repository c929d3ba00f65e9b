#pragma once

#include <cmath>

namespace urnmise {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)

// Natural-log exponent below which kernel evaluations return exactly 0
// instead of descending into subnormals.
inline constexpr double kExpClamp = -745.0;

// ln N(y; mean, sd^2); may be arbitrarily negative.
inline double normal_log_pdf(double y, double mean, double sd) {
  const double z = (y - mean) / sd;
  return -0.5 * z * z - std::log(sd) - kLogSqrt2Pi;
}

// N(y; mean, sd^2) with the underflow clamp.
inline double normal_pdf(double y, double mean, double sd) {
  const double lp = normal_log_pdf(y, mean, sd);
  return lp < kExpClamp ? 0.0 : std::exp(lp);
}

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

inline double normal_cdf(double x, double mean, double sd) {
  return std_normal_cdf((x - mean) / sd);
}

}  // namespace urnmise
