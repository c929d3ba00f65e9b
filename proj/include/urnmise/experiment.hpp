#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urnmise/config.hpp"
#include "urnmise/curves.hpp"
#include "urnmise/gibbs.hpp"

namespace urnmise {

struct RateRunResult {
  CurveSet curves;
  std::string csv_path;
  std::string svg_path;
};

// RATES mode: evaluates every bound term, the posterior orders, the prior
// orders at h_opt and the reference rates over n_list; writes
// <prefix>_rates.csv and <prefix>_rates.svg.
RateRunResult run_rate_curves(const ExperimentConfig& cfg);

struct ReplicateRow {
  double n = 0.0;
  std::size_t rep = 0;
  std::string model;  // "ew" or "sb"
  double mise2 = 0.0;
  double empty_freq = 0.0;
  std::string status = "ok";
};

struct SimulateResult {
  std::vector<ReplicateRow> rows;
  std::string csv_path;
  std::string agg_path;
  std::optional<std::string> wrong_model_path;
};

// SIMULATE mode: per (n, rep) draws data from f0 and runs both chains,
// writing <prefix>_simulate.csv, aggregated means/standard errors to
// <prefix>_simulate_agg.csv, and (for omega > 1) the wrong-model comparison
// curve to <prefix>_wrongmodel.csv.
SimulateResult run_posterior_experiment(const ExperimentConfig& cfg);

// Posterior mean of the EW density on the config grid, averaged over
// replicates at the largest n; paired with the misled-model target.
struct WrongModelCurve {
  std::vector<double> grid;
  std::vector<double> ew_mean_density;
  std::vector<double> target_density;
  double sup_distance = 0.0;
};

WrongModelCurve wrong_model_curve(const ExperimentConfig& cfg);

}  // namespace urnmise
