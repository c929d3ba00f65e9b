#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace urnmise {

struct Series {
  std::string name;
  std::vector<double> values;
};

struct CurveSet {
  std::vector<double> x;  // n values
  std::vector<Series> series;
};

// Fixed RATES schema; -inf renders the NEG_INF sentinel. Columns follow the
// series order produced by run_rate_curves and never get reordered.
inline constexpr const char* kRatesCsvHeader =
    "n,log10_alpha_frac_sq,log10_B_n,log10_eps_star_n,log10_sigma_n_sq,log10_empty,"
    "log10_M_B_M,log10_eps_star_M,log10_mise_ew,log10_mise_sb,log10_prior_ew,"
    "log10_prior_sb,log10_fmise,log10_br_gvv";

inline constexpr const char* kSimulateCsvHeader = "n,rep,model,mise2,empty_freq,status";

std::string format_csv_value(double v);
double parse_csv_value(std::string_view v);

std::string curves_to_csv(const CurveSet& curves, std::string_view header);
CurveSet curves_from_csv(std::string_view csv);

void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace urnmise
