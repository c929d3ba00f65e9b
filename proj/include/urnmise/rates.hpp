#pragma once

#include <optional>

#include "urnmise/model.hpp"
#include "urnmise/schedules.hpp"

namespace urnmise {

// Everything in this module is a pure log10-space computation. Bound terms
// whose inner exponential e^{n^t} is not representable report the NEG_INF
// sentinel (see logspace.hpp), never NaN.

struct RateInputs {
  double n = 10.0;
  ParamSchedules sched;
  BasePrior bp;
  std::optional<double> p;  // data dimension; engages the large-p variants
};

// log10 values of every bound term at one n. M enters as the continuous
// n^b here; integer component counts are a sampler concern.
struct RateTerms {
  double n = 0.0;
  double m_real = 0.0;
  double log10_alpha = 0.0;
  double log10_frac_n = 0.0;      // log10((alpha+n)/alpha)
  double log10_frac_m = 0.0;      // log10((alpha+M)/alpha)
  double h0_log10 = 0.0;          // log10 of the G0 mass of [-a-c, a+c]

  double alpha_frac_sq = 0.0;     // log10 (alpha/(alpha+n))^2
  double b_n = 0.0;               // log10 B_n
  double eps_star_n = 0.0;        // log10 eps*_n = -r (calibrated)
  double sigma_n_sq = 0.0;        // log10 sigma_n^2
  double empty_term = 0.0;        // log10 (1-1/M)^n ((alpha+M)/alpha)^M
  double m_b_m = 0.0;             // log10 M*B_M
  double eps_star_m = 0.0;        // log10 eps*_M

  bool has_p = false;
  double p = 1.0;
  double p_b_n = 0.0;             // log10 p*B_n
  double m_p_b_m = 0.0;           // log10 M*p*B_M
  double eps_l_n = 0.0;           // log10 eps^L_n
  double eps_l_m = 0.0;           // log10 eps^L_M
};

// G0 mass of the true-density support [-a-c, a+c].
double h0_mass(const ParamSchedules& sched, const BasePrior& bp);

RateTerms rate_terms(const RateInputs& ri);

enum class Model { kEw, kSb };

double mise_order_ew(const RateTerms& rt);
double mise_order_sb(const RateTerms& rt);
double mise_order_largep(const RateTerms& rt, Model which);  // throws if p absent

struct ComparisonRatios {
  double ratio1 = 0.0;   // log10(eps*_M / eps*_n)
  bool cond2_holds = false;  // M(alpha+M) < alpha+n, i.e. B_n > M B_M
  double ratio3 = 0.0;   // log10 of (1-1/M)^n ((alpha+M)/alpha)^M / (alpha/(alpha+n))^2
};

// Uses the integer component count M = ceil(n^b).
ComparisonRatios comparison_ratios(double n, const ParamSchedules& sched, const BasePrior& bp);

// log10 of ((alpha+n)/alpha) e^{-c^2 nt / 4} given log10((alpha+n)/alpha);
// the exponent scales exactly with c^2 (power-law sigma_n mode).
double log10_b_term_power(double log10_frac, double c, double nt);

// Order of MISE(EW) for sigma_n^2 = n^{-t} and eps*_n = n^{-r}, as a function
// of a free alpha:
//   (alpha/(alpha+n))^2 + ((alpha+n)/alpha) e^{-c^2 n^t / 4} + n^{-r} + n^{-t}
double ew_order_at_alpha(double n, double t, double r, double c, double alpha);

struct OptimalAlpha {
  double alpha_star = 0.0;    // 0 signals underflow of the inner exponential
  double mise_opt_log10 = 0.0;
};

// alpha* = n (1/(1 - e^{-c^2 n^t /12} / 2^{1/3}) - 1); mise_opt_log10 is the
// log-sum of the closed-form optimum terms (the r-free ones).
OptimalAlpha optimal_alpha_ew(double n, double t, double c);

struct RateOrdering {
  double sb = 0.0;
  double ew = 0.0;
  double fmise = 0.0;    // log10 n^{-2/5}
  double br_gvv = 0.0;   // log10 n^{-2/5} (log n)^{4/5}
  bool regime_holds = false;     // r < 2/5, t < 2/5, omega < 4/5, omega < b < 1/2
  bool ordering_holds = false;   // SB < EW < FMISE < BR_GVV at this n
};

// Power-law mode: sigma_n^2 = n^{-t}, eps*_n = n^{-r}.
RateOrdering rate_ordering(double n, const ParamSchedules& sched, const BasePrior& bp);

// Prior-predictive orders: SB = 1/(Mh) + 1/(alpha+1) + h^4 with n_or_m = M;
// EW = 1/((alpha+n)h) + 1/(alpha+1) + h^4 with n_or_m = n.
double prior_mise(Model which, double n_or_m, double alpha, double h);

// Exact stationary point of the h-dependent part: (4M)^{-1/5}.
double h_opt_prior(double m);

enum class WrongModelRegime { kBothConsistent, kEwWrongSbOk, kBothCanBeWrong };

// EW goes wrong iff alpha grows faster than n (omega > 1); SB additionally
// needs b > 1 and omega - b > b, with the side condition recorded by s > 2.
WrongModelRegime wrong_model_check(double omega, double b, double s, bool uses_cn_condition);

// Limit density of a misled EW model: N(y; mu0, k^2 + sigma0^2).
double wrong_model_target(const BasePrior& bp, double k, double y);

}  // namespace urnmise
