#pragma once

#include <cstddef>
#include <vector>

#include "urnmise/rng.hpp"

namespace urnmise {

// Kernel-scale prior with the exact tail split P(sigma > sigma_n) = eps_n:
// with probability 1-eps_n, sigma ~ Uniform(0, sigma_n]; with probability
// eps_n, sigma = sigma_n * (1 + E), E ~ Exp(1). The griddy-Gibbs update
// evaluates prior x likelihood on `grid`.
struct SigmaPrior {
  double sigma_n = 1.0;
  double eps_n = 1e-3;
  // Natural log of the tail mass, which the calibrated schedules push far
  // below what exp() can represent; log_pdf works from this directly.
  double log_eps_n = -6.907755278982137;
  double b_n = 0.5;
  std::vector<double> grid;

  double pdf(double s) const;
  double log_pdf(double s) const;
  double cdf(double s) const;
  double sample(Rng& rng) const;
};

SigmaPrior make_sigma_prior(double sigma_n, double eps_n, double bn_ratio,
                            std::size_t grid_size = 200);

// Tail mass solving eps*_n = n^{-r}, i.e.
//   ln eps_n ~= -r ln n - n (a+c1)^2 / (2 b_n^2) - n ln((alpha+n)/alpha) + n ln H0.
// eps_n itself usually underflows to 0; the log tail keeps the griddy update
// honest about P(sigma > sigma_n).
SigmaPrior make_calibrated_sigma_prior(double n, double sigma_n, double bn_ratio, double r,
                                       double alpha, double log_h0, double a, double c1,
                                       std::size_t grid_size = 200);

}  // namespace urnmise
