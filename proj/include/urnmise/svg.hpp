#pragma once

#include <string>

#include "urnmise/curves.hpp"

namespace urnmise {

// Plain SVG 1.1 line chart, 800x600: log-spaced x (n), log10-unit y, one
// polyline per series, legend with series names. Byte-deterministic for
// identical inputs. Non-finite points are dropped from their polyline.
std::string render_plot(const CurveSet& curves);

void emit_plot(const CurveSet& curves, const std::string& path);

}  // namespace urnmise
