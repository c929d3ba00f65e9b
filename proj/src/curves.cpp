#include "urnmise/curves.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "urnmise/logspace.hpp"

namespace urnmise {

std::string format_csv_value(double v) {
  if (v == kNegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_csv_value(std::string_view v) {
  if (v == "-inf") return kNegInf;
  return std::stod(std::string(v));
}

std::string curves_to_csv(const CurveSet& curves, std::string_view header) {
  std::string out{header};
  out += '\n';
  for (std::size_t row = 0; row < curves.x.size(); ++row) {
    out += format_csv_value(curves.x[row]);
    for (const Series& s : curves.series) {
      out += ',';
      out += format_csv_value(s.values[row]);
    }
    out += '\n';
  }
  return out;
}

CurveSet curves_from_csv(std::string_view csv) {
  CurveSet curves;
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");

  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) names.push_back(cell);
  }
  if (names.size() < 2) throw std::runtime_error("csv: header needs an x column and a series");
  curves.series.resize(names.size() - 1);
  for (std::size_t i = 1; i < names.size(); ++i) curves.series[i - 1].name = names[i];

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ls, cell, ',')) {
      if (col == 0) curves.x.push_back(parse_csv_value(cell));
      else if (col <= curves.series.size()) curves.series[col - 1].values.push_back(parse_csv_value(cell));
      else throw std::runtime_error("csv: row wider than header");
      ++col;
    }
    if (col != names.size()) throw std::runtime_error("csv: row/header width mismatch");
  }
  return curves;
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace urnmise
