#pragma once

#include <string>
#include <vector>

namespace herzlab {

/// One scatter series (shared x/y scaling across series).
struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#2b6cb0";
};

/// Minimal self-contained SVG 1.1 scatter plot: axes, ticks, optional
/// horizontal guide lines, legend.  Deterministic output.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<SvgSeries> series;
  std::vector<double> guides;  // horizontal y = const dashed lines

  std::string render() const;
  void write(const std::string& path) const;
};

}  // namespace herzlab
