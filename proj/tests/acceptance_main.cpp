// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "urnmise/config.hpp"
#include "urnmise/curves.hpp"
#include "urnmise/experiment.hpp"
#include "urnmise/gibbs.hpp"
#include "urnmise/logspace.hpp"
#include "urnmise/model.hpp"
#include "urnmise/rates.hpp"
#include "urnmise/svg.hpp"

using namespace urnmise;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string out_path(const std::string& stem) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "urnmise_accept";
  std::filesystem::create_directories(dir);
  return (dir / stem).string();
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(points - 1));
  return g;
}

// 1. S-10 figure reproduction: posterior SB < EW and prior EW < prior SB
//    for omega in {0.05, 0.1}, t in {2, 5}, at every grid point; < 1 s.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const BasePrior bp{2.0, 1.0};
  bool ok = true;
  for (double omega : {0.05, 0.1}) {
    for (double t : {2.0, 5.0}) {
      ParamSchedules s;
      s.omega = omega;
      s.b = 0.2;
      s.t = t;
      s.r = 3.0;
      for (double n : log_grid(10.0, 1e6, 25)) {
        const RateTerms rt = rate_terms({n, s, bp, std::nullopt});
        ok = ok && mise_order_sb(rt) < mise_order_ew(rt);
        const double alpha = s.alpha(n);
        const double prior_ew = prior_mise(Model::kEw, n, alpha, h_opt_prior(alpha + n));
        const double prior_sb = prior_mise(Model::kSb, rt.m_real, alpha, h_opt_prior(rt.m_real));
        ok = ok && prior_ew < prior_sb;
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, ok && dt < 1.0, "rate-figure reproduction (posterior SB < EW, prior EW < SB)",
         "runtime " + fmt(dt) + " s");
}

// 2. Anchor values at n = 10 against the long-double oracle.
void criterion_2() {
  ParamSchedules s;  // omega=0.05, b=0.2, t=2, r=3, a=1, c=0.5, c1=0.1
  const BasePrior bp{2.0, 1.0};
  const oracle::RateOracle ro{10.0L, s.omega, s.b, s.t, s.r, s.a, s.c, bp.mu0, bp.sigma0};
  const RateTerms rt = rate_terms({10.0, s, bp, std::nullopt});

  struct Anchor {
    const char* name;
    double impl;
    double oracle_value;
    double target;
    double tol;
  };
  const Anchor anchors[] = {
      {"log10 H0", rt.h0_log10, static_cast<double>(ro.log10_h0()), -0.511, 0.001},
      {"log10 empty", rt.empty_term, static_cast<double>(ro.empty_log10()), -3.72, 0.05},
      {"log10 mise_ew", mise_order_ew(rt), static_cast<double>(ro.mise_ew_log10()), -1.95, 0.05},
      {"log10 mise_sb", mise_order_sb(rt), static_cast<double>(ro.mise_sb_log10()), -3.72, 0.05},
  };
  bool ok = true;
  std::string detail;
  for (const Anchor& a : anchors) {
    const bool impl_ok = std::abs(a.impl - a.target) <= a.tol;
    const bool oracle_ok = std::abs(a.oracle_value - a.target) <= a.tol;
    const bool agree = std::abs(a.impl - a.oracle_value) <= 1e-9;
    ok = ok && impl_ok && oracle_ok && agree;
    detail += std::string(a.name) + "=" + fmt(a.impl) + " ";
  }
  report(2, ok, "anchor values at n=10 vs independent log-space oracle", detail);
}

// 3. Comparison ratios on n in {1e2..1e8}: monotone and cond2 for
//    (0.1, 0.2); monotonicity of ratio3 fails for b = 0.6. < 1 s.
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const BasePrior bp{2.0, 1.0};
  ParamSchedules s;
  s.omega = 0.1;
  s.b = 0.2;
  bool ok = true;
  double prev1 = 1e300, prev3 = 1e300;
  for (double e = 2.0; e <= 8.01; e += 1.0) {
    const ComparisonRatios cr = comparison_ratios(std::pow(10.0, e), s, bp);
    ok = ok && cr.ratio1 < prev1 && cr.ratio3 < prev3 && cr.cond2_holds;
    prev1 = cr.ratio1;
    prev3 = cr.ratio3;
  }
  s.b = 0.6;
  bool increased = false;
  double prev = comparison_ratios(1e2, s, bp).ratio3;
  for (double e = 3.0; e <= 8.01; e += 1.0) {
    const double cur = comparison_ratios(std::pow(10.0, e), s, bp).ratio3;
    increased = increased || cur > prev;
    prev = cur;
  }
  const double dt = seconds_since(t0);
  report(3, ok && increased && dt < 1.0,
         "comparison ratios decrease and cond2 holds; b=0.6 breaks ratio3",
         "runtime " + fmt(dt) + " s");
}

// 4. h_opt slope -0.2 and grid-search agreement within 1e-4 relative.
void criterion_4() {
  std::vector<double> xs, ys;
  for (double e = 2.0; e <= 6.01; e += 1.0) {
    xs.push_back(e);
    ys.push_back(std::log10(h_opt_prior(std::pow(10.0, e))));
  }
  const double slope = oracle::ls_slope(xs, ys);
  bool grid_ok = true;
  for (double m : {100.0, 1000.0, 31623.0, 1e6}) {
    const double hg = oracle::log_grid_argmin(
        [&](double h) { return prior_mise(Model::kSb, m, 1.0, h); }, 0.01, 1.0, 200000);
    grid_ok = grid_ok && std::abs(hg - h_opt_prior(m)) / h_opt_prior(m) < 1e-4;
  }
  report(4, std::abs(slope + 0.2) <= 0.005 && grid_ok,
         "optimal prior bandwidth: slope -0.200 and grid-search match",
         "slope " + fmt(slope));
}

// 5. alpha* vs 1e4-point log-grid minimizer on 20 random tuples, and the
//    n^{-2/5} slope of the optimized order.
void criterion_5() {
  Rng rng(31415);
  int tested = 0;
  bool grid_ok = true;
  while (tested < 20) {
    const double n = std::pow(10.0, rng.uniform(1.0, 4.0));
    const double t = rng.uniform(0.15, 0.5);
    const double c = rng.uniform(0.4, 2.2);
    const double astar = optimal_alpha_ew(n, t, c).alpha_star;
    if (astar < 1e-14 || astar > 1e3) continue;
    ++tested;
    // alpha-dependent part of the order; the additive n^{-r} + n^{-t} terms
    // cannot move the minimizer but would bury it below double resolution
    const double decay = -0.25 * c * c * std::pow(n, t) / M_LN10;
    auto objective = [&](double a) {
      const double lfrac = std::log10((a + n) / a);
      const double t1 = -2.0 * lfrac, t2 = lfrac + decay;
      const double mx = std::max(t1, t2);
      return mx + std::log10(std::pow(10.0, t1 - mx) + std::pow(10.0, t2 - mx));
    };
    const double agrid = oracle::log_grid_argmin(objective, 1e-16, 1e4, 10000);
    const double step = 20.0 / 9999.0;
    grid_ok = grid_ok && std::abs(std::log10(agrid) - std::log10(astar)) <= step + 1e-9;
  }

  std::vector<double> xs, ys;
  for (double e = 3.0; e <= 6.01; e += 1.0) {
    const double n = std::pow(10.0, e);
    const double astar = optimal_alpha_ew(n, 0.4, 2.0).alpha_star;
    xs.push_back(e);
    ys.push_back(ew_order_at_alpha(n, 0.4, 3.0, 2.0, astar));
  }
  const double slope = oracle::ls_slope(xs, ys);
  report(5, grid_ok && std::abs(slope + 0.4) <= 0.02,
         "optimal alpha: grid minimizer match and -2/5 slope", "slope " + fmt(slope));
}

// 6. Rate ordering SB < EW < FMISE < BR_GVV at n = 1e6 with the stated
//    r = t = 0.3, omega = 0.3, b = 0.35.
void criterion_6() {
  ParamSchedules s;
  s.omega = 0.3;
  s.b = 0.35;
  s.t = 0.3;
  s.r = 0.3;
  const RateOrdering ro = rate_ordering(1e6, s, BasePrior{2.0, 1.0});
  report(6, ro.ordering_holds, "rate ordering SB < EW < FMISE < BR_GVV at n=1e6 (r=t=0.3)",
         "SB=" + fmt(ro.sb) + " EW=" + fmt(ro.ew) + " FMISE=" + fmt(ro.fmise) +
             " BR_GVV=" + fmt(ro.br_gvv) +
             "; eps*_n = n^-0.3 exceeds n^-2/5, so EW < FMISE cannot hold (r=t=0.5 does order)");
}

// 7. Oracle equivalence: convolution quadrature 1e-10 on 100 random tuples,
//    normalization 1e-8, variance split identity 1e-12 on 1000 pairs.
void criterion_7() {
  Rng rng(1234);
  bool conv_ok = true;
  for (int i = 0; i < 100; ++i) {
    const BasePrior bp{rng.uniform(-3.0, 3.0), rng.uniform(0.2, 2.5)};
    const double scale = rng.uniform(0.1, 3.0);
    const double y = rng.uniform(-5.0, 5.0);
    const double lo = std::min(y - 13.0 * scale, bp.mu0 - 13.0 * bp.sigma0);
    const double hi = std::max(y + 13.0 * scale, bp.mu0 + 13.0 * bp.sigma0);
    const double conv = oracle::integrate(
        [&](double th) {
          return oracle::normal_density(y, th, scale) *
                 oracle::normal_density(th, bp.mu0, bp.sigma0);
        },
        lo, hi);
    conv_ok = conv_ok && std::abs(base_convolution(bp, scale, y) - conv) < 1e-10;
    const double k = scale;  // reuse the tuple for the misled-model target
    const double wm = oracle::integrate(
        [&](double th) {
          return oracle::normal_density(y, th, k) * oracle::normal_density(th, bp.mu0, bp.sigma0);
        },
        lo, hi);
    conv_ok = conv_ok && std::abs(wrong_model_target(bp, k, y) - wm) < 1e-10;
  }

  bool norm_ok = true;
  const BasePrior bp{2.0, 1.0};
  const TrueDensity td{1.0, 1.0, 0.5, {{-1.0, 0.5}, {1.0, 0.5}}};
  norm_ok = norm_ok && std::abs(oracle::simpson_fixed([&](double y) { return f0_eval(td, y); },
                                                      -32.0, 32.0) -
                                1.0) < 1e-8;
  const std::vector<double> atoms{-1.2, 0.3, 1.7};
  norm_ok = norm_ok &&
            std::abs(oracle::simpson_fixed(
                         [&](double y) { return ew_density_eval(atoms, 0.4, 2.0, bp, 1.0, y); },
                         -40.0, 44.0) -
                     1.0) < 1e-8;
  norm_ok = norm_ok &&
            std::abs(oracle::simpson_fixed(
                         [&](double y) { return sb_density_eval(atoms, {}, 0.4, 1.0, y); },
                         -40.0, 40.0) -
                     1.0) < 1e-8;
  const std::vector<double> weights{0.2, 0.5, 0.3};
  norm_ok = norm_ok &&
            std::abs(oracle::simpson_fixed(
                         [&](double y) { return sb_density_eval(atoms, weights, 0.4, 1.0, y); },
                         -40.0, 40.0) -
                     1.0) < 1e-8;
  // p = 2 product kernel over a tensor Simpson grid
  const std::vector<std::vector<double>> rows{{0.0, 0.5}, {-1.0, 1.0}};
  double mass2 = 0.0;
  {
    const std::size_t pts = 801;
    const double lo = -14.0, hi = 14.0;
    const double h = (hi - lo) / static_cast<double>(pts - 1);
    std::vector<double> w(pts, 2.0);
    w.front() = w.back() = 1.0;
    for (std::size_t i = 1; i + 1 < pts; i += 2) w[i] = 4.0;
    for (std::size_t i = 0; i < pts; ++i)
      for (std::size_t j = 0; j < pts; ++j) {
        const double y1 = lo + h * static_cast<double>(i);
        const double y2 = lo + h * static_cast<double>(j);
        mass2 += w[i] * w[j] *
                 mv_product_density_eval(rows, 0.3, 1.0, std::vector<double>{y1, y2});
      }
    mass2 *= h * h / 9.0;
  }
  norm_ok = norm_ok && std::abs(mass2 - 1.0) < 1e-8;

  bool split_ok = true;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 40);
    std::vector<double> data(n);
    std::vector<std::size_t> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      data[i] = rng.normal(0.0, 2.0);
      z[i] = static_cast<std::size_t>(rng.uniform01() * 6);
    }
    const VarianceSplit vs = pooled_within_variance(data, z);
    double mean = 0.0;
    for (double v : data) mean += v;
    mean /= static_cast<double>(n);
    double total = 0.0;
    for (double v : data) total += (v - mean) * (v - mean);
    total /= static_cast<double>(n);
    split_ok = split_ok && std::abs(vs.within + vs.between - total) < 1e-12;
  }
  report(7, conv_ok && norm_ok && split_ok,
         "oracle equivalence: quadrature, normalization, variance split");
}

// 8. Sampler properties: conjugate check, urn limits, cluster purity. < 30 s.
void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();

  SigmaPrior unit;
  unit.sigma_n = 1.0;
  unit.eps_n = 1e-12;
  unit.b_n = 0.5;
  unit.grid = {1.0};

  bool conj_ok;
  {
    const std::vector<double> data{5.0};
    const BasePrior bp{0.0, 1.0};
    EwState state{{0.0}, 1.0};
    Rng rng(34);
    for (int s = 0; s < 500; ++s) ew_gibbs_step(state, data, 1e12, bp, unit, rng);
    double sum = 0.0;
    const int sweeps = 10000;
    for (int s = 0; s < sweeps; ++s) {
      ew_gibbs_step(state, data, 1e12, bp, unit, rng);
      sum += state.theta[0];
    }
    conj_ok = std::abs(sum / sweeps - 2.5) < 0.05;
  }

  bool lock_ok;
  {
    EwState state{{5.0, -5.0}, 1.0};
    const std::vector<double> data{-0.4, 0.9};
    Rng rng(12);
    ew_gibbs_step(state, data, 1e-12, BasePrior{0.0, 1.0}, unit, rng);
    lock_ok = state.theta[0] == state.theta[1];
  }
  const bool fresh_ok = count_distinct(polya_urn_sample(1e12, BasePrior{2.0, 1.0}, 100, 5)) >= 99;

  bool purity_ok;
  {
    std::vector<double> data;
    Rng gen(2024);
    for (int i = 0; i < 20; ++i) data.push_back(-5.0 + 0.2 * gen.normal());
    for (int i = 0; i < 20; ++i) data.push_back(5.0 + 0.2 * gen.normal());
    const BasePrior bp{0.0, 5.0};
    const SigmaPrior sp = make_sigma_prior(0.5, 1e-3, 0.5);
    SbState state{std::vector<std::size_t>(40, 0), {0.0, 0.0}, 0.3, {}};
    for (std::size_t i = 0; i < 40; ++i) state.z[i] = i % 2;
    Rng rng(91);
    for (int s = 0; s < 600; ++s) sb_gibbs_step(state, data, 1.0, bp, sp, rng);
    std::size_t pure = 0, total = 0;
    for (int s = 0; s < 2000; ++s) {
      sb_gibbs_step(state, data, 1.0, bp, sp, rng);
      std::size_t left = 0, right = 0;
      for (int i = 0; i < 20; ++i) left += state.z[i] == state.z[0];
      for (int i = 20; i < 40; ++i) right += state.z[i] != state.z[0];
      pure += left + right;
      total += 40;
    }
    purity_ok = static_cast<double>(pure) / static_cast<double>(total) >= 0.95;
  }

  const double dt = seconds_since(t0);
  report(8, conj_ok && lock_ok && fresh_ok && purity_ok && dt < 30.0,
         "sampler properties: conjugate mean, urn limits, allocation purity",
         "runtime " + fmt(dt) + " s");
}

// 9. Desk-scale posterior trend: mean MISE2 strictly decreasing in n for both
//    models, finite standard errors. < 10 min.
void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  // t is pinned at 0.1; the free knobs are set so the decreasing trend is
  // resolvable with 8 replicates: c = 3 steepens the sigma_n decline across
  // the pinned n grid, b = 0.1 holds the component count at M = 2 so the
  // equal-weight bias floor cannot shift between n points, and omega = 0.6
  // lets the EW urn resolution grow with n.
  ExperimentConfig cfg = parse_config(
      "mode = simulate\n"
      "t = 0.1\n"
      "b = 0.1\n"
      "omega = 0.6\n"
      "c = 3\n"
      "n_list = 50,200,800\n"
      "reps = 8\n"
      "burn_in = 400\n"
      "retained = 1200\n"
      "seed = 424242\n");
  cfg.out_prefix = out_path("trend");
  const SimulateResult res = run_posterior_experiment(cfg);

  bool ok = true;
  std::string detail;
  for (const char* model : {"ew", "sb"}) {
    double prev = 1e300;
    detail += std::string(model) + ":";
    for (double n : cfg.n_list) {
      double sum = 0.0, sumsq = 0.0;
      std::size_t cnt = 0;
      for (const ReplicateRow& row : res.rows)
        if (row.model == model && row.n == n && row.status == "ok") {
          sum += row.mise2;
          sumsq += row.mise2 * row.mise2;
          ++cnt;
        }
      ok = ok && cnt == cfg.reps;
      const double mean = sum / static_cast<double>(cnt);
      const double var = (sumsq - sum * sum / static_cast<double>(cnt)) /
                         static_cast<double>(cnt - 1);
      const double se = std::sqrt(var / static_cast<double>(cnt));
      ok = ok && std::isfinite(se) && mean < prev;
      prev = mean;
      detail += " " + fmt(mean);
    }
    detail += ";";
  }
  const double dt = seconds_since(t0);
  report(9, ok && dt < 600.0, "posterior MISE trend decreases in n for EW and SB",
         detail + " runtime " + fmt(dt) + " s");
}

// 10. Wrong-model convergence: alpha = n^2 at n = 500 drives the EW posterior
//     mean to the G0 convolution within 0.02 sup-distance; classifier exact.
void criterion_10() {
  ExperimentConfig cfg = parse_config(
      "mode = simulate\n"
      "omega = 2\n"
      "t = 0.1\n"
      "n_list = 500\n"
      "reps = 2\n"
      "burn_in = 300\n"
      "retained = 800\n"
      "seed = 9090\n");
  cfg.out_prefix = out_path("wrong");
  const WrongModelCurve wc = wrong_model_curve(cfg);
  const bool classify_ok =
      wrong_model_check(0.5, 0.2, 3.0, true) == WrongModelRegime::kBothConsistent &&
      wrong_model_check(2.0, 0.3, 3.0, true) == WrongModelRegime::kEwWrongSbOk &&
      wrong_model_check(3.0, 1.2, 3.0, true) == WrongModelRegime::kBothCanBeWrong;
  report(10, wc.sup_distance < 0.02 && classify_ok,
         "wrong-model convergence: EW posterior mean near the G0 convolution",
         "sup distance " + fmt(wc.sup_distance));
}

// 11. Empty-component limit quantity within 0.01 of 0 at n = 1e6 for
//     omega = 3, b = 1.2.
void criterion_11() {
  const double n = 1e6;
  const double alpha = std::pow(n, 3.0);
  const double m = std::pow(n, 1.2);
  const double v = m * std::log10(alpha / (alpha + m)) + n * std::log10(1.0 - 1.0 / m);
  report(11, std::abs(v) < 0.01, "empty-component limit |log10| < 0.01 at n=1e6 (omega=3, b=1.2)",
         "|log10| = " + fmt(std::abs(v)) +
             "; (1-1/M)^n = e^{-n^-0.2} needs n >~ 1e8.4 to pass 0.01");
}

// 12. Determinism: identical (config, seed) give byte-identical CSV and SVG.
void criterion_12() {
  const std::string text =
      "mode = compare\n"
      "t = 0.1\n"
      "n_list = 20,40\n"
      "reps = 2\n"
      "burn_in = 20\n"
      "retained = 40\n"
      "seed = 5150\n";
  ExperimentConfig cfg1 = parse_config(text);
  cfg1.out_prefix = out_path("det1");
  ExperimentConfig cfg2 = parse_config(text);
  cfg2.out_prefix = out_path("det2");

  const RateRunResult ra = run_rate_curves(cfg1);
  const RateRunResult rb = run_rate_curves(cfg2);
  const SimulateResult sa = run_posterior_experiment(cfg1);
  const SimulateResult sb = run_posterior_experiment(cfg2);

  const bool ok = read_text_file(ra.csv_path) == read_text_file(rb.csv_path) &&
                  read_text_file(ra.svg_path) == read_text_file(rb.svg_path) &&
                  read_text_file(sa.csv_path) == read_text_file(sb.csv_path) &&
                  read_text_file(sa.agg_path) == read_text_file(sb.agg_path);
  report(12, ok, "byte-identical CSV and SVG for identical (config, seed)");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
