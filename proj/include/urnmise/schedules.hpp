#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace urnmise {

// Exponent/constant schedule driving alpha(n), M(n), sigma_n, eps_n and b_n.
//   alpha      = n^omega
//   M          = n^b            (continuous in the rate calculator,
//                                max(2, ceil(n^b)) when a sampler needs a count)
//   sigma_n^2  = c^2 / (4 e^{n^t})
//   eps*_n     = n^{-r}         (the calibrated tail-bound target)
//   b_n        = bn_ratio * sigma_n
struct ParamSchedules {
  double omega = 0.05;
  double b = 0.2;
  double t = 2.0;
  double r = 3.0;
  double c1 = 0.1;
  double k = 1.0;
  double a = 1.0;
  double c = 0.5;
  double bn_ratio = 0.5;

  void validate() const {
    if (!std::isfinite(omega) || !std::isfinite(b) || !std::isfinite(t) || !std::isfinite(r))
      throw std::invalid_argument("ParamSchedules: exponents must be finite");
    if (!(t > 0.0)) throw std::invalid_argument("ParamSchedules: t must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("ParamSchedules: r must be positive");
    if (!(bn_ratio > 0.0 && bn_ratio < 1.0))
      throw std::invalid_argument("ParamSchedules: bn_ratio must lie in (0,1)");
    if (!(c1 > 0.0 && c1 < a)) throw std::invalid_argument("ParamSchedules: need 0 < c1 < a");
    if (!(a > 0.0 && c > 0.0 && k > 0.0))
      throw std::invalid_argument("ParamSchedules: a, c, k must be positive");
  }

  double alpha(double n) const { return std::pow(n, omega); }
  double m_real(double n) const { return std::pow(n, b); }

  std::size_t m_components(double n) const {
    const double m = std::ceil(m_real(n));
    return m < 2.0 ? 2 : static_cast<std::size_t>(m);
  }

  // c^2/4 * exp(-n^t); underflows to 0 for n^t beyond ~745, which is why the
  // rate calculator works in log10 instead of calling this.
  double sigma_n_sq(double n) const { return 0.25 * c * c * std::exp(-std::pow(n, t)); }
  double sigma_n(double n) const { return std::sqrt(sigma_n_sq(n)); }
  double b_n(double n) const { return bn_ratio * sigma_n(n); }
  double eps_star_target(double n) const { return std::pow(n, -r); }
};

}  // namespace urnmise
