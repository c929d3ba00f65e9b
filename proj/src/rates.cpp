#include "urnmise/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "urnmise/logspace.hpp"
#include "urnmise/normal.hpp"

namespace urnmise {

namespace {

// log10 of e^{-c^2/(4 sigma_n^2)} when sigma_n^2 = c^2/(4 e^{n^t}), i.e. the
// exponent is e^{n^t} itself; NEG_INF once that is not representable.
double log10_double_exp_decay(double nt) {
  if (!(nt < 700.0 * M_LN10)) return kNegInf;
  const double v = std::exp(nt);  // may still be inf past ~709.8
  return canon_log10(-v / M_LN10);
}

}  // namespace

double h0_mass(const ParamSchedules& sched, const BasePrior& bp) {
  const double half = sched.a + sched.c;
  return normal_cdf(half, bp.mu0, bp.sigma0) - normal_cdf(-half, bp.mu0, bp.sigma0);
}

RateTerms rate_terms(const RateInputs& ri) {
  ri.sched.validate();
  ri.bp.validate();
  if (!(ri.n >= 2.0)) throw std::invalid_argument("rate_terms: need n >= 2");
  if (ri.p && !(*ri.p >= 1.0)) throw std::invalid_argument("rate_terms: need p >= 1");
  const ParamSchedules& s = ri.sched;
  const double n = ri.n;

  RateTerms rt;
  rt.n = n;
  rt.m_real = s.m_real(n);
  rt.log10_alpha = s.omega * std::log10(n);
  rt.log10_frac_n = log10_1p_pow(n, 1.0 - s.omega);       // log10(1 + n/alpha)
  rt.log10_frac_m = log10_1p_pow(n, s.b - s.omega);       // log10(1 + M/alpha)
  rt.h0_log10 = std::log10(h0_mass(s, ri.bp));

  rt.alpha_frac_sq = -2.0 * rt.log10_frac_n;

  const double nt = std::pow(n, s.t);                     // inner exponent of e^{n^t}
  const double decay = log10_double_exp_decay(nt);        // log10 e^{-c^2/(4 sigma_n^2)}
  rt.b_n = canon_log10(rt.log10_frac_n + decay);
  rt.sigma_n_sq = std::log10(0.25 * s.c * s.c) - nt / M_LN10;

  rt.eps_star_n = -s.r;
  rt.eps_star_m = -s.r - n * rt.log10_frac_n + rt.m_real * rt.log10_frac_m +
                  (n - rt.m_real) * rt.h0_log10;

  if (rt.m_real > 1.0) {
    rt.empty_term = n * std::log10(1.0 - 1.0 / rt.m_real) + rt.m_real * rt.log10_frac_m;
  } else {
    rt.empty_term = kNegInf;  // (1 - 1/M)^n vanishes at M = 1
  }
  rt.m_b_m = canon_log10(std::log10(rt.m_real) + rt.log10_frac_m + decay);

  rt.has_p = ri.p.has_value();
  rt.p = ri.p.value_or(1.0);
  const double log10_p = std::log10(rt.p);
  rt.p_b_n = canon_log10(rt.b_n + log10_p);
  rt.m_p_b_m = canon_log10(rt.m_b_m + log10_p);
  rt.eps_l_n = -s.r;
  rt.eps_l_m = -s.r - n * rt.log10_frac_n + rt.m_real * rt.log10_frac_m +
               (n - rt.m_real) * rt.p * rt.h0_log10;
  return rt;
}

double mise_order_ew(const RateTerms& rt) {
  return log10_sum({rt.alpha_frac_sq, rt.b_n, rt.eps_star_n, rt.sigma_n_sq});
}

double mise_order_sb(const RateTerms& rt) {
  return log10_sum({rt.empty_term, rt.m_b_m, rt.eps_star_m, rt.sigma_n_sq});
}

double mise_order_largep(const RateTerms& rt, Model which) {
  if (!rt.has_p)
    throw std::invalid_argument("mise_order_largep: data dimension p was not configured");
  if (which == Model::kEw)
    return log10_sum({rt.alpha_frac_sq, rt.p_b_n, rt.eps_l_n, rt.sigma_n_sq});
  return log10_sum({rt.empty_term, rt.m_p_b_m, rt.eps_l_m, rt.sigma_n_sq});
}

ComparisonRatios comparison_ratios(double n, const ParamSchedules& sched, const BasePrior& bp) {
  if (!(n >= 2.0)) throw std::invalid_argument("comparison_ratios: need n >= 2");
  const double m = std::ceil(std::pow(n, sched.b));
  const double alpha = sched.alpha(n);
  const double log10_frac_n = log10_1p_pow(n, 1.0 - sched.omega);
  const double log10_frac_m = std::log10((alpha + m) / alpha);
  const double h0 = std::log10(h0_mass(sched, bp));

  ComparisonRatios cr;
  cr.ratio1 = -n * log10_frac_n + m * log10_frac_m + (n - m) * h0;
  cr.cond2_holds = m * (alpha + m) < alpha + n;
  cr.ratio3 = n * std::log10(1.0 - 1.0 / m) + m * log10_frac_m + 2.0 * log10_frac_n;
  return cr;
}

double log10_b_term_power(double log10_frac, double c, double nt) {
  return canon_log10(log10_frac - 0.25 * c * c * nt / M_LN10);
}

double ew_order_at_alpha(double n, double t, double r, double c, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ew_order_at_alpha: alpha must be positive");
  const double log10_frac = std::log10((alpha + n) / alpha);
  const double log10_n = std::log10(n);
  // power-law mode: sigma_n^2 = n^{-t}, so c^2/(4 sigma_n^2) = c^2 n^t / 4
  const double b_term = log10_b_term_power(log10_frac, c, std::pow(n, t));
  return log10_sum({-2.0 * log10_frac, b_term, -r * log10_n, -t * log10_n});
}

OptimalAlpha optimal_alpha_ew(double n, double t, double c) {
  if (!(n >= 2.0) || !(t > 0.0) || !(c > 0.0))
    throw std::invalid_argument("optimal_alpha_ew: need n >= 2, t > 0, c > 0");
  const double x = c * c * std::pow(n, t) / 12.0;
  const double u = std::exp(-x) / std::cbrt(2.0);  // underflows to 0 for huge x
  OptimalAlpha out;
  out.alpha_star = u > 0.0 ? n * u / (1.0 - u) : 0.0;

  const double log10_n = std::log10(n);
  const double log10_cbrt2 = std::log10(2.0) / 3.0;
  const double first = 2.0 * (-log10_cbrt2 - x / M_LN10);
  const double second = log10_cbrt2 + c * c / M_LN10;
  out.mise_opt_log10 = log10_sum({first, second, -t * log10_n});
  return out;
}

RateOrdering rate_ordering(double n, const ParamSchedules& sched, const BasePrior& bp) {
  if (!(n >= 2.0)) throw std::invalid_argument("rate_ordering: need n >= 2");
  const ParamSchedules& s = sched;
  const double log10_n = std::log10(n);
  const double m = std::pow(n, s.b);
  const double log10_frac_n = log10_1p_pow(n, 1.0 - s.omega);
  const double log10_frac_m = log10_1p_pow(n, s.b - s.omega);
  const double h0 = std::log10(h0_mass(s, bp));
  // power-law mode throughout: sigma_n^2 = n^{-t}
  const double nt = std::pow(n, s.t);
  const double sigma_sq = -s.t * log10_n;
  const double eps_n = -s.r * log10_n;

  RateOrdering ro;
  ro.ew = log10_sum({-2.0 * log10_frac_n, log10_b_term_power(log10_frac_n, s.c, nt), eps_n,
                     sigma_sq});
  const double empty =
      m > 1.0 ? n * std::log10(1.0 - 1.0 / m) + m * log10_frac_m : kNegInf;
  const double m_b_m =
      canon_log10(std::log10(m) + log10_b_term_power(log10_frac_m, s.c, nt));
  const double eps_m = eps_n - n * log10_frac_n + m * log10_frac_m + (n - m) * h0;
  ro.sb = log10_sum({empty, m_b_m, eps_m, sigma_sq});
  ro.fmise = -0.4 * log10_n;
  ro.br_gvv = ro.fmise + 0.8 * std::log10(std::log(n));
  ro.regime_holds =
      s.r < 0.4 && s.t < 0.4 && s.omega < 0.8 && s.omega < s.b && s.b < 0.5;
  ro.ordering_holds = ro.sb < ro.ew && ro.ew < ro.fmise && ro.fmise < ro.br_gvv;
  return ro;
}

double prior_mise(Model which, double n_or_m, double alpha, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("prior_mise: h must be positive");
  if (!(n_or_m >= 1.0) || !(alpha > 0.0))
    throw std::invalid_argument("prior_mise: need n_or_m >= 1 and alpha > 0");
  const double denom = which == Model::kEw ? alpha + n_or_m : n_or_m;
  return std::log10(1.0 / (denom * h) + 1.0 / (alpha + 1.0) + h * h * h * h);
}

double h_opt_prior(double m) {
  if (!(m >= 1.0)) throw std::invalid_argument("h_opt_prior: need m >= 1");
  return std::pow(4.0 * m, -0.2);
}

WrongModelRegime wrong_model_check(double omega, double b, double s, bool uses_cn_condition) {
  (void)uses_cn_condition;  // side-condition bookkeeping; not asserted numerically
  if (omega > 1.0 && b > 1.0 && omega - b > b && s > 2.0)
    return WrongModelRegime::kBothCanBeWrong;
  if (omega > 1.0) return WrongModelRegime::kEwWrongSbOk;
  return WrongModelRegime::kBothConsistent;
}

double wrong_model_target(const BasePrior& bp, double k, double y) {
  if (!(k > 0.0)) throw std::invalid_argument("wrong_model_target: k must be positive");
  return normal_pdf(y, bp.mu0, std::sqrt(k * k + bp.sigma0 * bp.sigma0));
}

}  // namespace urnmise
