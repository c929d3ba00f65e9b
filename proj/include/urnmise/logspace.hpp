#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>

namespace urnmise {

// Underflow sentinel for log10 quantities. Terms whose inner exponential is
// not representable in double report this instead of NaN.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double canon_log10(double x) { return std::isnan(x) ? kNegInf : x; }

// log10(sum 10^x_i), NEG_INF-aware.
inline double log10_sum(std::span<const double> terms) {
  double m = kNegInf;
  for (double x : terms) m = std::max(m, canon_log10(x));
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : terms) {
    x = canon_log10(x);
    if (x != kNegInf) acc += std::exp2(std::log2(10.0) * (x - m));
  }
  return m + std::log10(acc);
}

inline double log10_sum(std::initializer_list<double> terms) {
  return log10_sum(std::span<const double>(terms.begin(), terms.size()));
}

// log10(1 + n^e), stable for any sign and size of e*ln(n).
inline double log10_1p_pow(double n, double e) {
  const double x = e * std::log(n);  // ln(n^e)
  if (x > 36.0) return x / M_LN10 + std::log1p(std::exp(-x)) / M_LN10;
  return std::log1p(std::exp(x)) / M_LN10;
}

}  // namespace urnmise
