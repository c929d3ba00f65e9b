#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urnmise/rng.hpp"

namespace urnmise {

struct Atom {
  double location = 0.0;
  double weight = 1.0;
};

// Data-generating convolution: F0 (finite atom mixture on [-a-c, a+c])
// smoothed by a N(0, k^2) kernel.
struct TrueDensity {
  double k = 1.0;
  double a = 1.0;
  double c = 0.5;
  std::vector<Atom> f0 = {{0.0, 1.0}};

  void validate() const;  // throws std::invalid_argument
};

// G0 = N(mu0, sigma0^2).
struct BasePrior {
  double mu0 = 2.0;
  double sigma0 = 1.0;

  void validate() const;
};

double f0_eval(const TrueDensity& td, double y);

std::vector<double> f0_sample(const TrueDensity& td, std::size_t n, Rng& rng);
std::vector<double> f0_sample(const TrueDensity& td, std::size_t n, std::uint64_t seed);

// int (1/scale) phi((y-theta)/scale) dG0(theta) = N(y; mu0, scale^2 + sigma0^2).
double base_convolution(const BasePrior& bp, double scale, double y);

// alpha/(alpha+n) * A_n + 1/(alpha+n) * sum_i kernel(y; theta_i, sigma+k).
double ew_density_eval(std::span<const double> theta, double sigma, double alpha,
                       const BasePrior& bp, double k, double y);

// sum_i pi_i * kernel(y; theta_i, sigma+k); empty weights means uniform 1/M.
double sb_density_eval(std::span<const double> theta, std::span<const double> weights,
                       double sigma, double k, double y);

// (1/M) sum_i prod_l kernel(y_l; theta_il, sigma+k) for p-variate data.
double mv_product_density_eval(const std::vector<std::vector<double>>& theta,
                               double sigma, double k, std::span<const double> y);

// Sequential Polya urn: theta_1 ~ G0; theta_{j+1} copies a uniformly chosen
// previous atom with probability j/(alpha+j), else draws fresh from G0.
std::vector<double> polya_urn_sample(double alpha, const BasePrior& bp, std::size_t m, Rng& rng);
std::vector<double> polya_urn_sample(double alpha, const BasePrior& bp, std::size_t m,
                                     std::uint64_t seed);

std::size_t count_distinct(std::span<const double> values);

}  // namespace urnmise
