#pragma once

// Small self-contained SVG charts for the analysis outputs.

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stsb {

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
};

struct PlotLabels {
  std::string title, x_axis, y_axis;
};

std::string svg_scatter(std::span<const std::pair<double, double>> points,
                        const PlotLabels& labels);

std::string svg_lines(std::span<const PlotSeries> series, const PlotLabels& labels);

}  // namespace stsb
