#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "urnmise/model.hpp"
#include "urnmise/schedules.hpp"

namespace urnmise {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { kRates, kSimulate, kCompare };

struct ChainSettings {
  std::size_t burn_in = 1000;
  std::size_t retained = 4000;
  std::size_t sigma_grid_size = 200;
};

struct GridSpec {
  double min = 0.0;   // defaults to -a-c-6k / a+c+6k once a, c, k are known
  double max = 0.0;
  std::size_t points = 401;
  bool min_set = false;
  bool max_set = false;
};

struct ExperimentConfig {
  Mode mode = Mode::kRates;
  ParamSchedules sched;
  BasePrior bp{2.0, 1.0};
  TrueDensity td{1.0, 1.0, 0.5, {{-1.0, 0.5}, {1.0, 0.5}}};
  std::vector<double> n_list = {10,    32,     100,    316,    1000,   3162,
                                10000, 31623,  100000, 316228, 1000000};
  std::size_t reps = 8;
  ChainSettings chain;
  std::uint64_t seed = 20120301;
  std::string out_prefix = "out";
  GridSpec grid;
  std::optional<double> p;

  std::vector<double> grid_points() const;
};

// Flat `key = value` text, '#' comments. Unknown keys, unparsable values and
// violated invariants raise ConfigError naming the key and line.
ExperimentConfig parse_config(std::string_view text);

std::string mode_name(Mode mode);

}  // namespace urnmise
