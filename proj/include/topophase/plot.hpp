#pragma once

#include <string>
#include <vector>

namespace topophase {

struct PlotCurve {
  std::string label;
  std::vector<double> x;  // radians
  std::vector<double> y;
};

/// Static line chart: theta in units of pi on the horizontal axis, C in
/// [0, 1] vertically, one polyline per curve plus a legend. The first three
/// curves follow the figure convention solid / dashed / blue.
std::string render_fringe_svg(const std::string& title, const std::vector<PlotCurve>& curves);

}  // namespace topophase
