#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace zeno::io {

struct Axis {
  std::string label;  // including the unit, e.g. "r (um)"
  double min = 0.0;
  double max = 1.0;
};

struct Heatmap {
  std::vector<double> values;  // rows x cols, row-major; row 0 is drawn at the bottom (y = y.min)
  std::size_t rows = 0;
  std::size_t cols = 0;
  Axis x;
  Axis y;
  std::string title;
};

/// Linear colormap normalized to this frame's min/max, block-averaged down to
/// at most 128 cells per axis, with a colorbar annotated by min and max.
/// Throws std::invalid_argument on non-finite values or a size mismatch.
void render_heatmap(const Heatmap& map, const std::filesystem::path& path);
std::string heatmap_svg(const Heatmap& map);

struct Series {
  std::string label;
  std::vector<double> y;
};

/// Line plot of several series over a shared x array.
void render_lines(std::span<const double> x, std::span<const Series> series, const Axis& x_axis,
                  const std::string& y_label, const std::string& title, const std::filesystem::path& path);

}  // namespace zeno::io
