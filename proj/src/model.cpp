#include "urnmise/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "urnmise/normal.hpp"

namespace urnmise {

void TrueDensity::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("TrueDensity: k must be positive");
  if (!(a > 0.0) || !(c > 0.0))
    throw std::invalid_argument("TrueDensity: a and c must be positive");
  if (f0.empty()) throw std::invalid_argument("TrueDensity: F0 needs at least one atom");
  double total = 0.0;
  for (const Atom& atom : f0) {
    if (atom.weight < 0.0) throw std::invalid_argument("TrueDensity: negative atom weight");
    if (std::abs(atom.location) > a + c)
      throw std::invalid_argument("TrueDensity: atom location outside [-a-c, a+c]");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("TrueDensity: atom weights must sum to 1");
}

void BasePrior::validate() const {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("BasePrior: sigma0 must be positive");
}

double f0_eval(const TrueDensity& td, double y) {
  double acc = 0.0;
  for (const Atom& atom : td.f0) acc += atom.weight * normal_pdf(y, atom.location, td.k);
  return acc;
}

std::vector<double> f0_sample(const TrueDensity& td, std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("f0_sample: requested an empty sample");
  std::vector<double> weights;
  weights.reserve(td.f0.size());
  for (const Atom& atom : td.f0) weights.push_back(atom.weight);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = rng.categorical(weights);
    out[i] = td.f0[j].location + td.k * rng.normal();
  }
  return out;
}

std::vector<double> f0_sample(const TrueDensity& td, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return f0_sample(td, n, rng);
}

double base_convolution(const BasePrior& bp, double scale, double y) {
  if (!(scale > 0.0)) throw std::invalid_argument("base_convolution: scale must be positive");
  const double sd = std::sqrt(scale * scale + bp.sigma0 * bp.sigma0);
  return normal_pdf(y, bp.mu0, sd);
}

double ew_density_eval(std::span<const double> theta, double sigma, double alpha,
                       const BasePrior& bp, double k, double y) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ew_density_eval: alpha must be positive");
  if (sigma < 0.0) throw std::invalid_argument("ew_density_eval: sigma must be nonnegative");
  const double scale = sigma + k;
  const double n = static_cast<double>(theta.size());
  double acc = alpha / (alpha + n) * base_convolution(bp, scale, y);
  // hot loop of the chain summaries; hoist the normalization term
  const double lognorm = std::log(scale) + kLogSqrt2Pi;
  double kernels = 0.0;
  for (double th : theta) {
    const double z = (y - th) / scale;
    const double lp = -0.5 * z * z - lognorm;
    if (lp >= kExpClamp) kernels += std::exp(lp);
  }
  return acc + kernels / (alpha + n);
}

double sb_density_eval(std::span<const double> theta, std::span<const double> weights,
                       double sigma, double k, double y) {
  if (theta.empty()) throw std::invalid_argument("sb_density_eval: empty atom vector");
  if (!weights.empty() && weights.size() != theta.size())
    throw std::invalid_argument("sb_density_eval: weights/atoms length mismatch");
  const double scale = sigma + k;
  const double uniform = 1.0 / static_cast<double>(theta.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double w = weights.empty() ? uniform : weights[i];
    acc += w * normal_pdf(y, theta[i], scale);
  }
  return acc;
}

double mv_product_density_eval(const std::vector<std::vector<double>>& theta,
                               double sigma, double k, std::span<const double> y) {
  if (theta.empty()) throw std::invalid_argument("mv_product_density_eval: empty atom matrix");
  const std::size_t p = y.size();
  if (p == 0) throw std::invalid_argument("mv_product_density_eval: empty evaluation point");
  const double scale = sigma + k;
  // weight applied inside the loop so the p = 1 case reduces to
  // sb_density_eval with uniform weights bit for bit
  const double uniform = 1.0 / static_cast<double>(theta.size());
  double acc = 0.0;
  for (const std::vector<double>& row : theta) {
    if (row.size() != p)
      throw std::invalid_argument("mv_product_density_eval: atom/point dimension mismatch");
    double prod = normal_pdf(y[0], row[0], scale);
    for (std::size_t l = 1; l < p; ++l) prod *= normal_pdf(y[l], row[l], scale);
    acc += uniform * prod;
  }
  return acc;
}

std::vector<double> polya_urn_sample(double alpha, const BasePrior& bp, std::size_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("polya_urn_sample: need m >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("polya_urn_sample: alpha must be positive");
  std::vector<double> atoms;
  atoms.reserve(m);
  atoms.push_back(bp.mu0 + bp.sigma0 * rng.normal());
  for (std::size_t j = 1; j < m; ++j) {
    const double p_copy = static_cast<double>(j) / (alpha + static_cast<double>(j));
    if (rng.uniform01() < p_copy) {
      const std::size_t pick = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(j));
      atoms.push_back(atoms[pick < j ? pick : j - 1]);
    } else {
      atoms.push_back(bp.mu0 + bp.sigma0 * rng.normal());
    }
  }
  return atoms;
}

std::vector<double> polya_urn_sample(double alpha, const BasePrior& bp, std::size_t m,
                                     std::uint64_t seed) {
  Rng rng(seed);
  return polya_urn_sample(alpha, bp, m, rng);
}

std::size_t count_distinct(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t distinct = sorted.empty() ? 0 : 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] != sorted[i - 1]) ++distinct;
  return distinct;
}

}  // namespace urnmise
