#include "urnmise/sigma_prior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace urnmise {

double SigmaPrior::pdf(double s) const {
  if (s <= 0.0) return 0.0;
  if (s <= sigma_n) return (1.0 - eps_n) / sigma_n;
  return eps_n / sigma_n * std::exp(-(s - sigma_n) / sigma_n);
}

double SigmaPrior::log_pdf(double s) const {
  if (s <= 0.0) return -std::numeric_limits<double>::infinity();
  if (s <= sigma_n) return std::log1p(-eps_n) - std::log(sigma_n);
  return log_eps_n - std::log(sigma_n) - (s - sigma_n) / sigma_n;
}

double SigmaPrior::cdf(double s) const {
  if (s <= 0.0) return 0.0;
  if (s <= sigma_n) return (1.0 - eps_n) * s / sigma_n;
  return (1.0 - eps_n) + eps_n * (1.0 - std::exp(-(s - sigma_n) / sigma_n));
}

double SigmaPrior::sample(Rng& rng) const {
  if (rng.uniform01() < eps_n) return sigma_n * (1.0 + rng.exponential());
  return sigma_n * rng.uniform_pos();
}

SigmaPrior make_sigma_prior(double sigma_n, double eps_n, double bn_ratio,
                            std::size_t grid_size) {
  if (!(eps_n > 0.0 && eps_n < 1.0))
    throw std::invalid_argument("make_sigma_prior: eps_n must lie in (0,1)");
  if (!(sigma_n > 0.0))
    throw std::invalid_argument("make_sigma_prior: sigma_n must be positive");
  if (!(bn_ratio > 0.0 && bn_ratio < 1.0))
    throw std::invalid_argument("make_sigma_prior: bn_ratio must lie in (0,1)");
  if (grid_size < 2) throw std::invalid_argument("make_sigma_prior: grid_size must be >= 2");

  SigmaPrior sp;
  sp.sigma_n = sigma_n;
  sp.eps_n = eps_n;
  sp.log_eps_n = std::log(eps_n);
  sp.b_n = bn_ratio * sigma_n;

  // log-spaced griddy support over (b_n/10, 20*sigma_n]
  const double lo = std::log(sp.b_n / 10.0);
  const double hi = std::log(20.0 * sigma_n);
  sp.grid.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    sp.grid[i] = std::exp(lo + f * (hi - lo));
  }
  return sp;
}

SigmaPrior make_calibrated_sigma_prior(double n, double sigma_n, double bn_ratio, double r,
                                       double alpha, double log_h0, double a, double c1,
                                       std::size_t grid_size) {
  SigmaPrior sp = make_sigma_prior(sigma_n, 0.5, bn_ratio, grid_size);
  const double b_n = sp.b_n;
  const double half_width = a + c1;
  const double log_eps = -r * std::log(n) - n * half_width * half_width / (2.0 * b_n * b_n) -
                         n * std::log((alpha + n) / alpha) + n * log_h0;
  sp.log_eps_n = std::min(log_eps, std::log(0.5));
  sp.eps_n = std::exp(sp.log_eps_n);  // 0 on underflow; the cdf/sampler agree
  return sp;
}

}  // namespace urnmise
