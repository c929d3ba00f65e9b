#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "urnmise/model.hpp"
#include "urnmise/rng.hpp"
#include "urnmise/sigma_prior.hpp"

namespace urnmise {

// Raised when a conditional weight turns non-finite; carries the offending index.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_ = 0;
};

struct EwState {
  std::vector<double> theta;
  double sigma = 1.0;
};

struct SbState {
  std::vector<std::size_t> z;     // allocations in {0..M-1}
  std::vector<double> theta;      // M atoms
  double sigma = 1.0;
  std::vector<double> weights;    // empty => uniform 1/M (plain SB)
};

struct GibbsOptions {
  // Prior-only sweeps (data weight flat); used by the urn-marginal check.
  bool flat_likelihood = false;
};

// Conditional log weights for resampling theta_i in the EW model: one entry
// per atom l != i (point-mass candidates, in index order), final entry is the
// fresh conjugate draw weighted by alpha * m(Y_i).
std::vector<double> ew_site_log_weights(const EwState& state, std::span<const double> data,
                                        std::size_t i, double alpha, const BasePrior& bp);

// Same for atom theta_j of the SB model, tilted by the data allocated to j.
std::vector<double> sb_atom_log_weights(const SbState& state, std::span<const double> data,
                                        std::size_t j, double alpha, const BasePrior& bp);

void ew_gibbs_step(EwState& state, std::span<const double> data, double alpha,
                   const BasePrior& bp, const SigmaPrior& sp, Rng& rng,
                   const GibbsOptions& opts = {});

// dirichlet_beta non-null switches on the modified model: weights are then
// resampled from Dirichlet(beta + counts) each sweep.
void sb_gibbs_step(SbState& state, std::span<const double> data, double alpha,
                   const BasePrior& bp, const SigmaPrior& sp, Rng& rng,
                   const std::vector<double>* dirichlet_beta = nullptr);

std::vector<std::size_t> component_counts(const SbState& state, std::size_t m);
bool has_empty_component(const SbState& state, std::size_t m);

// within = (1/n) sum_j sum_{t: z_t=j} (Y_t - Ybar_j)^2,
// between = (1/n) sum_j n_j (Ybar_j - Ybar)^2; within + between is the MLE
// sample variance.
struct VarianceSplit {
  double within = 0.0;
  double between = 0.0;
};
VarianceSplit pooled_within_variance(std::span<const double> data,
                                     std::span<const std::size_t> z);

double empty_component_frequency(const std::vector<SbState>& chain, std::size_t m);

struct PosteriorSummary {
  std::vector<double> grid;
  std::vector<double> mean_density;
  std::vector<double> var_density;
  double mise2 = 0.0;
  double empty_component_freq = 0.0;
};

// draws: one density evaluation per retained sweep on `grid` (>= 2 draws).
// mise2 integrates [var + (mean - f0)^2] * f0 by the trapezoid rule.
PosteriorSummary posterior_density_summary(const std::vector<std::vector<double>>& draws,
                                           std::span<const double> grid,
                                           const TrueDensity& f0);

struct ChainConfig {
  std::size_t burn_in = 1000;
  std::size_t retained = 4000;
  std::size_t thin = 1;
};

struct ChainResult {
  std::vector<std::vector<double>> density_draws;  // retained x grid
  std::vector<char> any_empty;                     // SB only, per retained draw
  std::vector<double> sigma_trace;
  std::vector<double> theta_mean_trace;
};

ChainResult run_ew_chain(std::span<const double> data, double alpha, const BasePrior& bp,
                         const SigmaPrior& sp, double k, const ChainConfig& cfg,
                         std::span<const double> grid, Rng& rng);

ChainResult run_sb_chain(std::span<const double> data, std::size_t m, double alpha,
                         const BasePrior& bp, const SigmaPrior& sp, double k,
                         const ChainConfig& cfg, std::span<const double> grid, Rng& rng,
                         const std::vector<double>* dirichlet_beta = nullptr);

}  // namespace urnmise
