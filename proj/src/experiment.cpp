#include "urnmise/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <thread>

#include "urnmise/logspace.hpp"
#include "urnmise/rates.hpp"
#include "urnmise/svg.hpp"

namespace urnmise {

namespace {

std::string sanitize_status(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

SigmaPrior replicate_sigma_prior(const ExperimentConfig& cfg, double n) {
  const double sigma_n = cfg.sched.sigma_n(n);
  if (!(sigma_n > 0.0) || !std::isfinite(sigma_n))
    throw NumericError("sigma_n underflowed; use a smaller t for simulation", 0);
  const double log_h0 = std::log(h0_mass(cfg.sched, cfg.bp));
  return make_calibrated_sigma_prior(n, sigma_n, cfg.sched.bn_ratio, cfg.sched.r,
                                     cfg.sched.alpha(n), log_h0, cfg.sched.a, cfg.sched.c1,
                                     cfg.chain.sigma_grid_size);
}

struct ReplicateOutput {
  ReplicateRow ew;
  ReplicateRow sb;
  std::vector<double> ew_mean_density;  // kept for the wrong-model curve
};

ReplicateOutput run_replicate(const ExperimentConfig& cfg, double n, std::size_t rep,
                              std::uint64_t child_seed, const std::vector<double>& grid) {
  ReplicateOutput out;
  out.ew = {n, rep, "ew", std::nan(""), 0.0, "ok"};
  out.sb = {n, rep, "sb", std::nan(""), 0.0, "ok"};

  Rng rng(child_seed);
  const ChainConfig cc{cfg.chain.burn_in, cfg.chain.retained, 1};
  const double alpha = cfg.sched.alpha(n);

  std::vector<double> data;
  SigmaPrior sp;
  try {
    data = f0_sample(cfg.td, static_cast<std::size_t>(n), rng);
    sp = replicate_sigma_prior(cfg, n);
  } catch (const std::exception& e) {
    out.ew.status = out.sb.status = sanitize_status(e.what());
    return out;
  }

  try {
    Rng ew_rng(derive_seed(child_seed, 1));
    const ChainResult cr = run_ew_chain(data, alpha, cfg.bp, sp, cfg.sched.k, cc, grid, ew_rng);
    const PosteriorSummary ps = posterior_density_summary(cr.density_draws, grid, cfg.td);
    out.ew.mise2 = ps.mise2;
    out.ew_mean_density = ps.mean_density;
  } catch (const std::exception& e) {
    out.ew.status = sanitize_status(e.what());
  }

  try {
    Rng sb_rng(derive_seed(child_seed, 2));
    const std::size_t m = cfg.sched.m_components(n);
    const ChainResult cr =
        run_sb_chain(data, m, alpha, cfg.bp, sp, cfg.sched.k, cc, grid, sb_rng);
    PosteriorSummary ps = posterior_density_summary(cr.density_draws, grid, cfg.td);
    std::size_t hits = 0;
    for (char flag : cr.any_empty) hits += flag != 0;
    ps.empty_component_freq =
        cr.any_empty.empty() ? 0.0
                             : static_cast<double>(hits) / static_cast<double>(cr.any_empty.size());
    out.sb.mise2 = ps.mise2;
    out.sb.empty_freq = ps.empty_component_freq;
  } catch (const std::exception& e) {
    out.sb.status = sanitize_status(e.what());
  }
  return out;
}

}  // namespace

RateRunResult run_rate_curves(const ExperimentConfig& cfg) {
  RateRunResult res;
  CurveSet& cs = res.curves;
  std::vector<std::string> names = {
      "log10_alpha_frac_sq", "log10_B_n",      "log10_eps_star_n", "log10_sigma_n_sq",
      "log10_empty",         "log10_M_B_M",    "log10_eps_star_M", "log10_mise_ew",
      "log10_mise_sb",       "log10_prior_ew", "log10_prior_sb",   "log10_fmise",
      "log10_br_gvv"};
  // large-p terms are appended, never reordered
  if (cfg.p)
    names.insert(names.end(), {"log10_p_B_n", "log10_M_p_B_M", "log10_eps_L_n",
                               "log10_eps_L_M", "log10_mise_ew_largep",
                               "log10_mise_sb_largep"});
  cs.series.resize(names.size());
  for (std::size_t i = 0; i < cs.series.size(); ++i) cs.series[i].name = names[i];

  for (double n : cfg.n_list) {
    RateInputs ri{n, cfg.sched, cfg.bp, cfg.p};
    const RateTerms rt = rate_terms(ri);
    const double alpha = cfg.sched.alpha(n);
    const double prior_ew = prior_mise(Model::kEw, n, alpha, h_opt_prior(alpha + n));
    const double prior_sb = prior_mise(Model::kSb, rt.m_real, alpha, h_opt_prior(rt.m_real));
    const double fmise = -0.4 * std::log10(n);
    const double br_gvv = fmise + 0.8 * std::log10(std::log(n));

    cs.x.push_back(n);
    std::vector<double> row = {rt.alpha_frac_sq, rt.b_n,          rt.eps_star_n, rt.sigma_n_sq,
                               rt.empty_term,    rt.m_b_m,        rt.eps_star_m, mise_order_ew(rt),
                               mise_order_sb(rt), prior_ew,       prior_sb,      fmise,
                               br_gvv};
    if (cfg.p) {
      row.insert(row.end(), {rt.p_b_n, rt.m_p_b_m, rt.eps_l_n, rt.eps_l_m,
                             mise_order_largep(rt, Model::kEw),
                             mise_order_largep(rt, Model::kSb)});
    }
    for (std::size_t i = 0; i < cs.series.size(); ++i) cs.series[i].values.push_back(row[i]);
  }

  res.csv_path = cfg.out_prefix + "_rates.csv";
  res.svg_path = cfg.out_prefix + "_rates.svg";
  std::string header = "n";
  for (const std::string& name : names) {
    header += ',';
    header += name;
  }
  write_text_file(res.csv_path, curves_to_csv(cs, header));

  CurveSet plot;
  plot.x = cs.x;
  plot.series = {{"EW", cs.series[7].values},      {"SB", cs.series[8].values},
                 {"prior EW", cs.series[9].values}, {"prior SB", cs.series[10].values},
                 {"FMISE", cs.series[11].values},   {"BR_GVV", cs.series[12].values}};
  emit_plot(plot, res.svg_path);
  return res;
}

WrongModelCurve wrong_model_curve(const ExperimentConfig& cfg) {
  WrongModelCurve wc;
  wc.grid = cfg.grid_points();
  wc.ew_mean_density.assign(wc.grid.size(), 0.0);
  wc.target_density.resize(wc.grid.size());
  for (std::size_t i = 0; i < wc.grid.size(); ++i)
    wc.target_density[i] = wrong_model_target(cfg.bp, cfg.sched.k, wc.grid[i]);

  const double n = cfg.n_list.back();
  const std::size_t ni = cfg.n_list.size() - 1;
  std::size_t ok = 0;
  for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
    const std::uint64_t child = derive_seed(cfg.seed, ni * cfg.reps + rep);
    const ReplicateOutput ro = run_replicate(cfg, n, rep, child, wc.grid);
    if (ro.ew.status != "ok" || ro.ew_mean_density.empty()) continue;
    ++ok;
    for (std::size_t i = 0; i < wc.grid.size(); ++i)
      wc.ew_mean_density[i] += ro.ew_mean_density[i];
  }
  if (ok == 0) throw NumericError("wrong_model_curve: no successful replicate", 0);
  for (double& v : wc.ew_mean_density) v /= static_cast<double>(ok);
  for (std::size_t i = 0; i < wc.grid.size(); ++i)
    wc.sup_distance =
        std::max(wc.sup_distance, std::abs(wc.ew_mean_density[i] - wc.target_density[i]));
  return wc;
}

SimulateResult run_posterior_experiment(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.grid_points();

  struct Job {
    std::size_t ni;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni)
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) jobs.push_back({ni, rep});

  std::vector<ReplicateOutput> outputs(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      const double n = cfg.n_list[job.ni];
      const std::uint64_t child = derive_seed(cfg.seed, job.ni * cfg.reps + job.rep);
      outputs[j] = run_replicate(cfg, n, job.rep, child, grid);
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();

  SimulateResult res;
  std::string csv{kSimulateCsvHeader};
  csv += '\n';
  for (const ReplicateOutput& out : outputs) {
    for (const ReplicateRow* row : {&out.ew, &out.sb}) {
      res.rows.push_back(*row);
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%.17g,%zu,%s,%.17g,%.17g,%s\n", row->n, row->rep,
                    row->model.c_str(), row->mise2, row->empty_freq, row->status.c_str());
      csv += buf;
    }
  }
  res.csv_path = cfg.out_prefix + "_simulate.csv";
  write_text_file(res.csv_path, csv);

  std::string agg = "n,model,mean_mise2,se_mise2,reps_ok\n";
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    for (const char* model : {"ew", "sb"}) {
      double sum = 0.0, sumsq = 0.0;
      std::size_t ok = 0;
      for (const ReplicateRow& row : res.rows)
        if (row.n == cfg.n_list[ni] && row.model == model && row.status == "ok") {
          sum += row.mise2;
          sumsq += row.mise2 * row.mise2;
          ++ok;
        }
      const double mean = ok ? sum / static_cast<double>(ok) : std::nan("");
      double se = 0.0;
      if (ok >= 2) {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(ok)) /
                              static_cast<double>(ok - 1));
        se = std::sqrt(var / static_cast<double>(ok));
      }
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%.17g,%zu\n", cfg.n_list[ni], model, mean,
                    se, ok);
      agg += buf;
    }
  }
  res.agg_path = cfg.out_prefix + "_simulate_agg.csv";
  write_text_file(res.agg_path, agg);

  if (cfg.sched.omega > 1.0) {
    const WrongModelCurve wc = wrong_model_curve(cfg);
    std::string wcsv = "y,ew_mean_density,target_density\n";
    for (std::size_t i = 0; i < wc.grid.size(); ++i) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", wc.grid[i], wc.ew_mean_density[i],
                    wc.target_density[i]);
      wcsv += buf;
    }
    res.wrong_model_path = cfg.out_prefix + "_wrongmodel.csv";
    write_text_file(*res.wrong_model_path, wcsv);
  }
  return res;
}

}  // namespace urnmise
