#pragma once

#include <string>
#include <vector>

namespace panelprec::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "black";
  bool dashed = false;
  bool points_only = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  double y_min = 0.0;
  double y_max = 1.05;
};

/// Polyline plot of already-computed series; no styling beyond colour and dashes.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace panelprec::cli
