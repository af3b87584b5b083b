#include "stsb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace stsb {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

Frame make_frame(double x0, double x1, double y0, double y1) {
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  return {x0, x1, y0, y1};
}

void axes(std::ostringstream& o, const Frame& f, const PlotLabels& labels) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(labels.title) << "</text>\n";
  const double bx = kLeft, by = kHeight - kBottom;
  o << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << kWidth - kRight << "\" y2=\""
    << by << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << bx << "\" y2=\"" << kTop
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 5.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 5.0;
    o << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << by + 18
      << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    o << "<text x=\"" << bx - 6 << "\" y=\"" << num(f.py(yv) + 4)
      << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
    << escape(labels.x_axis) << "</text>\n";
  o << "<text transform=\"translate(18," << kHeight / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(labels.y_axis) << "</text>\n";
}

}  // namespace

std::string svg_scatter(std::span<const std::pair<double, double>> points,
                        const PlotLabels& labels) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -x0;
    for (const auto& [x, y] : points) {
      x0 = std::min(x0, x); x1 = std::max(x1, x);
      y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
  }
  const Frame f = make_frame(x0, x1, y0, y1);
  std::ostringstream o;
  axes(o, f, labels);
  o << "<g fill=\"#1f77b4\" fill-opacity=\"0.35\">\n";
  for (const auto& [x, y] : points) {
    o << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\"2\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string svg_lines(std::span<const PlotSeries> series, const PlotLabels& labels) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = 0.0, y1 = 0.0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]); x1 = std::max(x1, s.x[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) { x0 = 0; x1 = 1; }
  const Frame f = make_frame(x0, x1, y0, y1 * 1.05);
  std::ostringstream o;
  axes(o, f, labels);
  double legend_y = kTop + 10;
  for (const auto& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      o << (i ? " " : "") << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i]));
    }
    o << "\"/>\n";
    o << "<text x=\"" << kWidth - kRight - 110 << "\" y=\"" << legend_y << "\" fill=\""
      << s.color << "\">" << escape(s.name) << "</text>\n";
    legend_y += 16;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace stsb
