#include "vpreval/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vpreval/error.hpp"

namespace vpreval {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const int ml = 60, mr = 20, mt = 40, mb = 50;  // margins
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  // A little headroom; keep 0 in view when the data starts near it.
  if (ymin > 0 && ymin < 0.25 * ymax) ymin = 0;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" font-family=\"monospace\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
      << "</text>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    double xv = xmin + (xmax - xmin) * i / ticks;
    double yv = ymin + (ymax - ymin) * i / ticks;
    svg << "<line x1=\"" << fmt(X(xv)) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(X(xv)) << "\" y2=\"" << mt + ph + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(X(xv)) << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">" << fmt(xv)
        << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(Y(yv)) << "\" x2=\"" << ml << "\" y2=\"" << fmt(Y(yv))
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(Y(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 10 << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
  svg << "<text x=\"15\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << mt + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  for (size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
    if (s.bars) {
      double bw = s.points.size() > 0 ? std::max(2.0, pw / (2.0 * s.points.size())) : 2.0;
      for (const auto& [x, y] : s.points) {
        svg << "<rect x=\"" << fmt(X(x) - bw / 2) << "\" y=\"" << fmt(Y(y)) << "\" width=\"" << fmt(bw)
            << "\" height=\"" << fmt(Y(ymin) - Y(y)) << "\" fill=\"" << color << "\"/>\n";
      }
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) svg << fmt(X(x)) << "," << fmt(Y(y)) << " ";
      svg << "\"/>\n";
    }
    // legend
    const int ly = mt + 8 + static_cast<int>(si) * 16;
    svg << "<rect x=\"" << ml + pw - 150 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\" fill=\"" << color
        << "\"/>\n";
    svg << "<text x=\"" << ml + pw - 133 << "\" y=\"" << ly + 2 << "\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw EvalError("cannot write " + path);
  f << content;
}

}  // namespace vpreval
