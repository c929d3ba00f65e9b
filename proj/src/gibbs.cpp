#include "urnmise/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "urnmise/normal.hpp"

namespace urnmise {

namespace {

struct ClusterStats {
  std::size_t count = 0;
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations from the cluster mean
};

ClusterStats cluster_stats(std::span<const double> data, std::span<const std::size_t> z,
                           std::size_t j) {
  ClusterStats cs;
  double sum = 0.0;
  for (std::size_t t = 0; t < data.size(); ++t)
    if (z[t] == j) {
      ++cs.count;
      sum += data[t];
    }
  if (cs.count == 0) return cs;
  cs.mean = sum / static_cast<double>(cs.count);
  for (std::size_t t = 0; t < data.size(); ++t)
    if (z[t] == j) {
      const double d = data[t] - cs.mean;
      cs.ss += d * d;
    }
  return cs;
}

// log integral of prod_{t in cluster} N(y_t; theta, sigma^2) dG0(theta).
double log_marginal_likelihood(const ClusterStats& cs, double sigma, const BasePrior& bp) {
  if (cs.count == 0) return 0.0;
  const double nj = static_cast<double>(cs.count);
  const double s2 = sigma * sigma;
  const double pred_sd = std::sqrt(s2 / nj + bp.sigma0 * bp.sigma0);
  return -nj * (std::log(sigma) + kLogSqrt2Pi) - cs.ss / (2.0 * s2) +
         0.5 * std::log(2.0 * M_PI * s2 / nj) + normal_log_pdf(cs.mean, bp.mu0, pred_sd);
}

// Conjugate posterior N(mean, var) for theta given a cluster summary.
std::pair<double, double> conjugate_posterior(const ClusterStats& cs, double sigma,
                                              const BasePrior& bp) {
  const double prior_prec = 1.0 / (bp.sigma0 * bp.sigma0);
  if (cs.count == 0) return {bp.mu0, 1.0 / prior_prec};
  const double data_prec = static_cast<double>(cs.count) / (sigma * sigma);
  const double var = 1.0 / (prior_prec + data_prec);
  return {var * (bp.mu0 * prior_prec + cs.mean * data_prec), var};
}

void check_finite(const std::vector<double>& log_weights, std::size_t index) {
  for (double lw : log_weights)
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity())
      throw NumericError("non-finite conditional weight", index);
}

// Griddy-Gibbs draw of sigma given pooled squared residuals.
double griddy_sigma(double residual_ss, std::size_t n, const SigmaPrior& sp, Rng& rng,
                    bool flat_likelihood) {
  std::vector<double> logw(sp.grid.size());
  for (std::size_t g = 0; g < sp.grid.size(); ++g) {
    const double s = sp.grid[g];
    double lw = sp.log_pdf(s);
    if (!flat_likelihood)
      lw += -static_cast<double>(n) * std::log(s) - residual_ss / (2.0 * s * s);
    logw[g] = lw;
  }
  check_finite(logw, 0);
  return sp.grid[rng.categorical_from_log(logw)];
}

}  // namespace

std::vector<double> ew_site_log_weights(const EwState& state, std::span<const double> data,
                                        std::size_t i, double alpha, const BasePrior& bp) {
  const std::size_t n = data.size();
  std::vector<double> logw;
  logw.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (l == i) continue;
    logw.push_back(normal_log_pdf(data[i], state.theta[l], state.sigma));
  }
  const double marg_sd =
      std::sqrt(state.sigma * state.sigma + bp.sigma0 * bp.sigma0);
  logw.push_back(std::log(alpha) + normal_log_pdf(data[i], bp.mu0, marg_sd));
  return logw;
}

void ew_gibbs_step(EwState& state, std::span<const double> data, double alpha,
                   const BasePrior& bp, const SigmaPrior& sp, Rng& rng,
                   const GibbsOptions& opts) {
  const std::size_t n = data.size();
  if (state.theta.size() != n)
    throw std::invalid_argument("ew_gibbs_step: data/theta length mismatch");

  // constants of the theta sweep (sigma is only updated afterwards)
  const double s2 = state.sigma * state.sigma;
  const double inv2s2 = 1.0 / (2.0 * s2);
  const double atom_const = -std::log(state.sigma) - kLogSqrt2Pi;
  const double marg_sd = std::sqrt(s2 + bp.sigma0 * bp.sigma0);
  const double log_alpha = std::log(alpha);

  std::vector<double> logw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (opts.flat_likelihood) {
      logw.assign(n, 0.0);
      logw.back() = log_alpha;
    } else {
      std::size_t idx = 0;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        const double d = data[i] - state.theta[l];
        logw[idx++] = atom_const - d * d * inv2s2;
      }
      logw[idx] = log_alpha + normal_log_pdf(data[i], bp.mu0, marg_sd);
    }
    check_finite(logw, i);
    const std::size_t pick = rng.categorical_from_log(logw);
    if (pick + 1 < logw.size()) {
      state.theta[i] = state.theta[pick < i ? pick : pick + 1];
    } else if (opts.flat_likelihood) {
      state.theta[i] = bp.mu0 + bp.sigma0 * rng.normal();
    } else {
      ClusterStats cs{1, data[i], 0.0};
      const auto [mean, var] = conjugate_posterior(cs, state.sigma, bp);
      state.theta[i] = mean + std::sqrt(var) * rng.normal();
    }
  }

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = data[i] - state.theta[i];
    ss += d * d;
  }
  state.sigma = griddy_sigma(ss, n, sp, rng, opts.flat_likelihood);
}

std::vector<double> sb_atom_log_weights(const SbState& state, std::span<const double> data,
                                        std::size_t j, double alpha, const BasePrior& bp) {
  const std::size_t m = state.theta.size();
  const ClusterStats cs = cluster_stats(data, state.z, j);
  std::vector<double> logw;
  logw.reserve(m);
  for (std::size_t l = 0; l < m; ++l) {
    if (l == j) continue;
    double lw = 0.0;
    if (cs.count > 0) {
      // likelihood of the cluster data at the point-mass candidate theta_l
      const double d = cs.mean - state.theta[l];
      lw = -static_cast<double>(cs.count) * (std::log(state.sigma) + kLogSqrt2Pi) -
           (cs.ss + static_cast<double>(cs.count) * d * d) /
               (2.0 * state.sigma * state.sigma);
    }
    logw.push_back(lw);
  }
  logw.push_back(std::log(alpha) + log_marginal_likelihood(cs, state.sigma, bp));
  return logw;
}

void sb_gibbs_step(SbState& state, std::span<const double> data, double alpha,
                   const BasePrior& bp, const SigmaPrior& sp, Rng& rng,
                   const std::vector<double>* dirichlet_beta) {
  const std::size_t n = data.size();
  const std::size_t m = state.theta.size();
  if (m == 0) throw std::invalid_argument("sb_gibbs_step: need at least one component");
  if (state.z.size() != n) throw std::invalid_argument("sb_gibbs_step: data/z length mismatch");
  if (!state.weights.empty() && state.weights.size() != m)
    throw std::invalid_argument("sb_gibbs_step: weights/theta length mismatch");

  // allocations
  std::vector<double> logw(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double lw = normal_log_pdf(data[i], state.theta[j], state.sigma);
      if (!state.weights.empty()) lw += std::log(state.weights[j]);
      logw[j] = lw;
    }
    check_finite(logw, i);
    state.z[i] = rng.categorical_from_log(logw);
  }

  // atoms: point-mass urn candidates vs a fresh conjugate draw
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> atom_logw = sb_atom_log_weights(state, data, j, alpha, bp);
    check_finite(atom_logw, j);
    const std::size_t pick = rng.categorical_from_log(atom_logw);
    if (pick + 1 < atom_logw.size()) {
      state.theta[j] = state.theta[pick < j ? pick : pick + 1];
    } else {
      const ClusterStats cs = cluster_stats(data, state.z, j);
      const auto [mean, var] = conjugate_posterior(cs, state.sigma, bp);
      state.theta[j] = mean + std::sqrt(var) * rng.normal();
    }
  }

  // mixture weights (modified model only)
  if (dirichlet_beta != nullptr) {
    if (dirichlet_beta->size() != m)
      throw std::invalid_argument("sb_gibbs_step: dirichlet_beta length mismatch");
    const std::vector<std::size_t> counts = component_counts(state, m);
    std::vector<double> g(m);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      g[j] = rng.gamma((*dirichlet_beta)[j] + static_cast<double>(counts[j]));
      total += g[j];
    }
    state.weights.resize(m);
    for (std::size_t j = 0; j < m; ++j) state.weights[j] = g[j] / total;
  }

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = data[i] - state.theta[state.z[i]];
    ss += d * d;
  }
  state.sigma = griddy_sigma(ss, n, sp, rng, false);
}

std::vector<std::size_t> component_counts(const SbState& state, std::size_t m) {
  std::vector<std::size_t> counts(m, 0);
  for (std::size_t zi : state.z) {
    if (zi >= m) throw std::invalid_argument("component_counts: allocation out of range");
    ++counts[zi];
  }
  return counts;
}

bool has_empty_component(const SbState& state, std::size_t m) {
  const std::vector<std::size_t> counts = component_counts(state, m);
  return std::any_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; });
}

VarianceSplit pooled_within_variance(std::span<const double> data,
                                     std::span<const std::size_t> z) {
  if (data.empty()) throw std::invalid_argument("pooled_within_variance: empty data");
  if (data.size() != z.size())
    throw std::invalid_argument("pooled_within_variance: data/z length mismatch");

  std::size_t groups = 0;
  for (std::size_t zi : z) groups = std::max(groups, zi + 1);
  std::vector<double> sums(groups, 0.0);
  std::vector<std::size_t> counts(groups, 0);
  double total_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    sums[z[i]] += data[i];
    ++counts[z[i]];
    total_sum += data[i];
  }
  const double n = static_cast<double>(data.size());
  const double grand_mean = total_sum / n;

  VarianceSplit vs;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = data[i] - sums[z[i]] / static_cast<double>(counts[z[i]]);
    vs.within += d * d;
  }
  for (std::size_t j = 0; j < groups; ++j) {
    if (counts[j] == 0) continue;
    const double d = sums[j] / static_cast<double>(counts[j]) - grand_mean;
    vs.between += static_cast<double>(counts[j]) * d * d;
  }
  vs.within /= n;
  vs.between /= n;
  return vs;
}

double empty_component_frequency(const std::vector<SbState>& chain, std::size_t m) {
  if (chain.empty()) throw std::invalid_argument("empty_component_frequency: empty chain");
  std::size_t hits = 0;
  for (const SbState& s : chain)
    if (has_empty_component(s, m)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(chain.size());
}

PosteriorSummary posterior_density_summary(const std::vector<std::vector<double>>& draws,
                                           std::span<const double> grid,
                                           const TrueDensity& f0) {
  if (draws.size() < 2)
    throw std::invalid_argument("posterior_density_summary: need at least 2 draws");
  const std::size_t g = grid.size();
  for (const auto& d : draws)
    if (d.size() != g)
      throw std::invalid_argument("posterior_density_summary: draw/grid length mismatch");
  for (std::size_t i = 1; i < g; ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("posterior_density_summary: grid must be increasing");

  const double r = static_cast<double>(draws.size());
  PosteriorSummary out;
  out.grid.assign(grid.begin(), grid.end());
  out.mean_density.assign(g, 0.0);
  out.var_density.assign(g, 0.0);
  for (const auto& d : draws)
    for (std::size_t i = 0; i < g; ++i) out.mean_density[i] += d[i];
  for (double& v : out.mean_density) v /= r;
  for (const auto& d : draws)
    for (std::size_t i = 0; i < g; ++i) {
      const double dev = d[i] - out.mean_density[i];
      out.var_density[i] += dev * dev;
    }
  for (double& v : out.var_density) v /= r;

  double mise2 = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double f0y = f0_eval(f0, grid[i]);
    const double bias = out.mean_density[i] - f0y;
    const double integrand = (out.var_density[i] + bias * bias) * f0y;
    double w = 0.0;
    if (i > 0) w += 0.5 * (grid[i] - grid[i - 1]);
    if (i + 1 < g) w += 0.5 * (grid[i + 1] - grid[i]);
    mise2 += integrand * w;
  }
  out.mise2 = mise2;
  return out;
}

namespace {

template <typename Step, typename Eval, typename Track>
ChainResult run_chain(const ChainConfig& cfg, std::span<const double> grid, Step step,
                      Eval eval, Track track) {
  if (cfg.retained < 2) throw std::invalid_argument("run_chain: need retained >= 2");
  const std::size_t thin = std::max<std::size_t>(1, cfg.thin);
  ChainResult res;
  res.density_draws.reserve(cfg.retained);
  for (std::size_t s = 0; s < cfg.burn_in; ++s) step();
  for (std::size_t d = 0; d < cfg.retained; ++d) {
    for (std::size_t s = 0; s < thin; ++s) step();
    std::vector<double> dens(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) dens[i] = eval(grid[i]);
    res.density_draws.push_back(std::move(dens));
    track(res);
  }
  return res;
}

}  // namespace

ChainResult run_ew_chain(std::span<const double> data, double alpha, const BasePrior& bp,
                         const SigmaPrior& sp, double k, const ChainConfig& cfg,
                         std::span<const double> grid, Rng& rng) {
  EwState state;
  state.theta.assign(data.begin(), data.end());
  state.sigma = 0.5 * sp.sigma_n;
  auto step = [&] { ew_gibbs_step(state, data, alpha, bp, sp, rng); };
  auto eval = [&](double y) { return ew_density_eval(state.theta, state.sigma, alpha, bp, k, y); };
  auto track = [&](ChainResult& res) {
    res.sigma_trace.push_back(state.sigma);
    res.theta_mean_trace.push_back(
        std::accumulate(state.theta.begin(), state.theta.end(), 0.0) /
        static_cast<double>(state.theta.size()));
  };
  return run_chain(cfg, grid, step, eval, track);
}

ChainResult run_sb_chain(std::span<const double> data, std::size_t m, double alpha,
                         const BasePrior& bp, const SigmaPrior& sp, double k,
                         const ChainConfig& cfg, std::span<const double> grid, Rng& rng,
                         const std::vector<double>* dirichlet_beta) {
  SbState state;
  state.z.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) state.z[i] = i % m;
  state.theta.resize(m);
  for (double& th : state.theta) th = bp.mu0 + bp.sigma0 * rng.normal();
  state.sigma = 0.5 * sp.sigma_n;
  auto step = [&] { sb_gibbs_step(state, data, alpha, bp, sp, rng, dirichlet_beta); };
  auto eval = [&](double y) {
    return sb_density_eval(state.theta, state.weights, state.sigma, k, y);
  };
  auto track = [&](ChainResult& res) {
    res.sigma_trace.push_back(state.sigma);
    res.theta_mean_trace.push_back(
        std::accumulate(state.theta.begin(), state.theta.end(), 0.0) /
        static_cast<double>(state.theta.size()));
    res.any_empty.push_back(has_empty_component(state, m) ? 1 : 0);
  };
  return run_chain(cfg, grid, step, eval, track);
}

}  // namespace urnmise
