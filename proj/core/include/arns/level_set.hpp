#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace arns {

struct Point2 {
  double x;
  double y;
};

using Polyline = std::vector<Point2>;

/// Regular grid of samples; value(i, j) with i along x and j along y.
/// NaN marks samples outside the domain; cells touching one are skipped.
struct ScalarGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  std::vector<double> values;  // index i * ny + j

  double at(std::size_t i, std::size_t j) const { return values[i * ny + j]; }
};

/// Marching-squares contour at `level`, crossings placed by linear
/// interpolation along cell edges and chained into polylines.
std::vector<Polyline> extract_level_set(const ScalarGrid& grid, double level);

}  // namespace arns
