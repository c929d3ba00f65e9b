#include "urnmise/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace urnmise {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& key, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ", key '" + key + "': " + what);
}

double parse_double(std::string_view v, std::size_t line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(std::string(v), &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    fail(line, key, "cannot parse '" + std::string(v) + "' as a number");
  }
}

std::uint64_t parse_u64(std::string_view v, std::size_t line, const std::string& key) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    fail(line, key, "cannot parse '" + std::string(v) + "' as an unsigned integer");
  return x;
}

std::vector<std::string_view> split(std::string_view v, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t pos = v.find(sep);
    parts.push_back(trim(v.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    v.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

std::vector<double> ExperimentConfig::grid_points() const {
  std::vector<double> pts(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(grid.points - 1);
    pts[i] = grid.min + f * (grid.max - grid.min);
  }
  return pts;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::kRates: return "rates";
    case Mode::kSimulate: return "simulate";
    case Mode::kCompare: return "compare";
  }
  return "?";
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool mode_seen = false;
  bool atoms_seen = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + std::string(line) + "'");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) fail(line_no, key, "empty value");

    if (key == "mode") {
      std::string v(value);
      std::transform(v.begin(), v.end(), v.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      if (v == "rates") cfg.mode = Mode::kRates;
      else if (v == "simulate") cfg.mode = Mode::kSimulate;
      else if (v == "compare") cfg.mode = Mode::kCompare;
      else fail(line_no, key, "expected rates, simulate or compare");
      mode_seen = true;
    } else if (key == "omega") { cfg.sched.omega = parse_double(value, line_no, key);
    } else if (key == "b") { cfg.sched.b = parse_double(value, line_no, key);
    } else if (key == "t") { cfg.sched.t = parse_double(value, line_no, key);
    } else if (key == "r") { cfg.sched.r = parse_double(value, line_no, key);
    } else if (key == "a") { cfg.sched.a = parse_double(value, line_no, key);
    } else if (key == "c") { cfg.sched.c = parse_double(value, line_no, key);
    } else if (key == "c1") { cfg.sched.c1 = parse_double(value, line_no, key);
    } else if (key == "k") { cfg.sched.k = parse_double(value, line_no, key);
    } else if (key == "mu0") { cfg.bp.mu0 = parse_double(value, line_no, key);
    } else if (key == "sigma0") { cfg.bp.sigma0 = parse_double(value, line_no, key);
    } else if (key == "bn_ratio") { cfg.sched.bn_ratio = parse_double(value, line_no, key);
    } else if (key == "n_list") {
      cfg.n_list.clear();
      for (std::string_view part : split(value, ','))
        cfg.n_list.push_back(parse_double(part, line_no, key));
    } else if (key == "reps") {
      cfg.reps = static_cast<std::size_t>(parse_u64(value, line_no, key));
    } else if (key == "burn_in") {
      cfg.chain.burn_in = static_cast<std::size_t>(parse_u64(value, line_no, key));
    } else if (key == "retained") {
      cfg.chain.retained = static_cast<std::size_t>(parse_u64(value, line_no, key));
    } else if (key == "sigma_grid_size") {
      cfg.chain.sigma_grid_size = static_cast<std::size_t>(parse_u64(value, line_no, key));
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line_no, key);
    } else if (key == "grid_min") {
      cfg.grid.min = parse_double(value, line_no, key);
      cfg.grid.min_set = true;
    } else if (key == "grid_max") {
      cfg.grid.max = parse_double(value, line_no, key);
      cfg.grid.max_set = true;
    } else if (key == "grid_points") {
      cfg.grid.points = static_cast<std::size_t>(parse_u64(value, line_no, key));
    } else if (key == "out_prefix") {
      cfg.out_prefix = std::string(value);
    } else if (key == "p") {
      cfg.p = parse_double(value, line_no, key);
    } else if (key == "f0_atoms") {
      cfg.td.f0.clear();
      for (std::string_view pair : split(value, ';')) {
        const std::size_t colon = pair.find(':');
        if (colon == std::string_view::npos)
          fail(line_no, key, "expected 'loc:weight' pairs separated by ';'");
        Atom atom;
        atom.location = parse_double(trim(pair.substr(0, colon)), line_no, key);
        atom.weight = parse_double(trim(pair.substr(colon + 1)), line_no, key);
        cfg.td.f0.push_back(atom);
      }
      atoms_seen = true;
    } else {
      fail(line_no, key, "unknown key");
    }
  }

  if (!mode_seen) throw ConfigError("config: mandatory key 'mode' is missing");

  cfg.td.k = cfg.sched.k;
  cfg.td.a = cfg.sched.a;
  cfg.td.c = cfg.sched.c;
  if (!cfg.grid.min_set) cfg.grid.min = -cfg.sched.a - cfg.sched.c - 6.0 * cfg.sched.k;
  if (!cfg.grid.max_set) cfg.grid.max = cfg.sched.a + cfg.sched.c + 6.0 * cfg.sched.k;

  // cross-field validation; errors name the offending key
  try {
    cfg.sched.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: schedule invariant violated: ") + e.what());
  }
  try {
    cfg.bp.validate();
    cfg.td.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config, key '") + (atoms_seen ? "f0_atoms" : "mu0/sigma0") +
                      "': " + e.what());
  }
  if (cfg.n_list.empty()) throw ConfigError("config, key 'n_list': must be nonempty");
  for (double n : cfg.n_list)
    if (!(n >= 2.0)) throw ConfigError("config, key 'n_list': entries must be >= 2");
  if (!std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()) ||
      std::adjacent_find(cfg.n_list.begin(), cfg.n_list.end()) != cfg.n_list.end())
    throw ConfigError("config, key 'n_list': entries must be strictly increasing");
  if (cfg.reps < 1) throw ConfigError("config, key 'reps': must be >= 1");
  if (cfg.chain.retained < 2) throw ConfigError("config, key 'retained': must be >= 2");
  if (cfg.chain.sigma_grid_size < 2)
    throw ConfigError("config, key 'sigma_grid_size': must be >= 2");
  if (!(cfg.grid.max > cfg.grid.min))
    throw ConfigError("config, key 'grid_max': must exceed grid_min");
  if (cfg.grid.points < 2) throw ConfigError("config, key 'grid_points': must be >= 2");
  if (cfg.p && !(*cfg.p >= 1.0)) throw ConfigError("config, key 'p': must be >= 1");
  return cfg;
}

}  // namespace urnmise
