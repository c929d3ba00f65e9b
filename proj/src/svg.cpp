#include "urnmise/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace urnmise {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;

const char* kPalette[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void append(std::string& out, const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  out += buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_plot(const CurveSet& curves) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool have_x = false, have_y = false;
  for (double x : curves.x) {
    const double lx = std::log10(x);
    if (!std::isfinite(lx)) continue;
    xmin = have_x ? std::min(xmin, lx) : lx;
    xmax = have_x ? std::max(xmax, lx) : lx;
    have_x = true;
  }
  for (const Series& s : curves.series)
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      ymin = have_y ? std::min(ymin, v) : v;
      ymax = have_y ? std::max(ymax, v) : v;
      have_y = true;
    }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  append(svg, "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"none\" "
              "stroke=\"#333333\" stroke-width=\"1\"/>\n",
         fmt(kLeft).c_str(), fmt(kTop).c_str(), fmt(pw).c_str(), fmt(ph).c_str());

  // x ticks at integer decades
  for (double d = std::ceil(xmin); d <= std::floor(xmax) + 1e-9; d += 1.0) {
    const double px = sx(d);
    append(svg, "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333333\" "
                "stroke-width=\"1\"/>\n",
           fmt(px).c_str(), fmt(kTop + ph).c_str(), fmt(px).c_str(), fmt(kTop + ph + 6).c_str());
    append(svg, "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"12\" "
                "text-anchor=\"middle\">1e%s</text>\n",
           fmt(px).c_str(), fmt(kTop + ph + 20).c_str(), fmt(d).c_str());
  }
  // y ticks, six of them
  for (int i = 0; i <= 5; ++i) {
    const double v = ymin + (ymax - ymin) * i / 5.0;
    const double py = sy(v);
    append(svg, "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333333\" "
                "stroke-width=\"1\"/>\n",
           fmt(kLeft - 6).c_str(), fmt(py).c_str(), fmt(kLeft).c_str(), fmt(py).c_str());
    append(svg, "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"12\" "
                "text-anchor=\"end\">%s</text>\n",
           fmt(kLeft - 9).c_str(), fmt(py + 4).c_str(), fmt(v).c_str());
  }
  append(svg, "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"13\" "
              "text-anchor=\"middle\">n</text>\n",
         fmt(kLeft + pw / 2).c_str(), fmt(kHeight - 12).c_str());
  append(svg, "<text x=\"18\" y=\"%s\" font-family=\"sans-serif\" font-size=\"13\" "
              "text-anchor=\"middle\" transform=\"rotate(-90 18 %s)\">log10</text>\n",
         fmt(kTop + ph / 2).c_str(), fmt(kTop + ph / 2).c_str());

  for (std::size_t si = 0; si < curves.series.size(); ++si) {
    const Series& s = curves.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < curves.x.size() && i < s.values.size(); ++i) {
      const double lx = std::log10(curves.x[i]);
      if (!std::isfinite(lx) || !std::isfinite(s.values[i])) continue;
      if (!pts.empty()) pts += ' ';
      pts += fmt(sx(lx)) + "," + fmt(sy(s.values[i]));
    }
    append(svg, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"%s\"/>\n",
           color, pts.c_str());
  }

  // legend, top right of the plot area
  const double lx0 = kLeft + pw - 150.0;
  double ly = kTop + 16.0;
  for (std::size_t si = 0; si < curves.series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    append(svg, "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"%s\" "
                "stroke-width=\"1.5\"/>\n",
           fmt(lx0).c_str(), fmt(ly - 4).c_str(), fmt(lx0 + 24).c_str(), fmt(ly - 4).c_str(),
           color);
    append(svg, "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
           fmt(lx0 + 30).c_str(), fmt(ly).c_str(), xml_escape(curves.series[si].name).c_str());
    ly += 16.0;
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const CurveSet& curves, const std::string& path) {
  write_text_file(path, render_plot(curves));
}

}  // namespace urnmise
