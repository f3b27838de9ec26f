#pragma once

#include <string>
#include <vector>

namespace kondo::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG with one polyline (plus point markers) per series.
std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

}  // namespace kondo::cli
