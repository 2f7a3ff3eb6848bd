#include "zeno/io/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zeno::io {
namespace {

constexpr std::size_t max_cells = 128;

struct Rgb {
  double r, g, b;
};

// Dark blue to yellow, interpolated linearly between stops.
constexpr std::array<Rgb, 5> stops{Rgb{13, 8, 135}, Rgb{84, 2, 163}, Rgb{185, 50, 137}, Rgb{249, 142, 9},
                                   Rgb{240, 249, 33}};

std::string color(double u) {
  u = std::clamp(u, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), stops.size() - 2);
  const double f = u - static_cast<double>(i);
  const Rgb& a = stops[i];
  const Rgb& b = stops[i + 1];
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + f * (b.g - a.g))), static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Block average of a rows x cols array into at most max_cells per axis.
std::vector<double> downsample(const Heatmap& m, std::size_t& rows, std::size_t& cols) {
  const std::size_t fr = (m.rows + max_cells - 1) / max_cells;
  const std::size_t fc = (m.cols + max_cells - 1) / max_cells;
  rows = (m.rows + fr - 1) / fr;
  cols = (m.cols + fc - 1) / fc;
  std::vector<double> out(rows * cols, 0.0);
  std::vector<int> count(rows * cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const std::size_t p = (i / fr) * cols + j / fc;
      out[p] += m.values[i * m.cols + j];
      ++count[p];
    }
  for (std::size_t p = 0; p < out.size(); ++p) out[p] /= count[p];
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (out.fail()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string heatmap_svg(const Heatmap& map) {
  if (map.rows == 0 || map.cols == 0 || map.values.size() != map.rows * map.cols)
    throw std::invalid_argument("heatmap: value count does not match rows x cols");
  for (double v : map.values)
    if (!std::isfinite(v)) throw std::invalid_argument("heatmap: non-finite value in data");

  std::size_t rows = 0, cols = 0;
  const std::vector<double> cells = downsample(map, rows, cols);
  const auto [lo_it, hi_it] = std::minmax_element(map.values.begin(), map.values.end());
  const double lo = *lo_it, hi = *hi_it;
  const bool flat = !(hi > lo);

  const double left = 70, top = 40, width = 420, height = 420, bar_x = left + width + 30;
  const double cw = width / cols, ch = height / rows;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"620\" height=\"530\" font-family=\"sans-serif\" "
       "font-size=\"12\">\n";
  s << "<text x=\"" << left + width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(map.title)
    << "</text>\n";
  s << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double u = flat ? 0.5 : (cells[i * cols + j] - lo) / (hi - lo);
      s << "<rect x=\"" << num(left + j * cw) << "\" y=\"" << num(top + (rows - 1 - i) * ch) << "\" width=\""
        << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\"" << color(u) << "\"/>\n";
    }
  s << "</g>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Axes
  s << "<text x=\"" << left << "\" y=\"" << top + height + 16 << "\" text-anchor=\"start\">" << num(map.x.min)
    << "</text>\n";
  s << "<text x=\"" << left + width << "\" y=\"" << top + height + 16 << "\" text-anchor=\"end\">" << num(map.x.max)
    << "</text>\n";
  s << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 34 << "\" text-anchor=\"middle\">"
    << escape(map.x.label) << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << top + height << "\" text-anchor=\"end\">" << num(map.y.min)
    << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << num(map.y.max) << "</text>\n";
  s << "<text transform=\"translate(" << left - 40 << "," << top + height / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(map.y.label) << "</text>\n";
  // Colorbar
  const int steps = 64;
  for (int k = 0; k < steps; ++k) {
    const double u = flat ? 0.5 : (k + 0.5) / steps;
    s << "<rect x=\"" << bar_x << "\" y=\"" << num(top + height - (k + 1) * height / steps) << "\" width=\"18\" height=\""
      << num(height / steps + 0.05) << "\" fill=\"" << color(u) << "\"/>\n";
  }
  s << "<rect x=\"" << bar_x << "\" y=\"" << top << "\" width=\"18\" height=\"" << height
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (flat) {
    s << "<text x=\"" << bar_x + 24 << "\" y=\"" << top + height / 2 << "\">constant " << num(lo) << "</text>\n";
    s << "<text x=\"" << bar_x + 24 << "\" y=\"" << top + height / 2 + 14 << "\">(degenerate range)</text>\n";
  } else {
    s << "<text x=\"" << bar_x + 24 << "\" y=\"" << top + 10 << "\">max " << num(hi) << "</text>\n";
    s << "<text x=\"" << bar_x + 24 << "\" y=\"" << top + height << "\">min " << num(lo) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void render_heatmap(const Heatmap& map, const std::filesystem::path& path) { write_file(path, heatmap_svg(map)); }

void render_lines(std::span<const double> x, std::span<const Series> series, const Axis& x_axis,
                  const std::string& y_label, const std::string& title, const std::filesystem::path& path) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const Series& s : series) {
    if (s.y.size() != x.size()) throw std::invalid_argument("line plot: series length differs from x");
    for (double v : s.y) {
      if (!std::isfinite(v)) throw std::invalid_argument("line plot: non-finite value in " + s.label);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double left = 70, top = 40, width = 480, height = 320;
  static const std::array<const char*, 6> palette{"#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};
  auto px = [&](double v) { return left + (v - x_axis.min) / (x_axis.max - x_axis.min) * width; };
  auto py = [&](double v) { return top + height - (v - lo) / (hi - lo) * height; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"680\" height=\"420\" font-family=\"sans-serif\" "
       "font-size=\"12\">\n";
  s << "<text x=\"" << left + width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
    << "</text>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    s << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << palette[k % palette.size()] << "\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) s << num(px(x[i])) << ',' << num(py(series[k].y[i])) << ' ';
    s << "\"/>\n";
    s << "<text x=\"" << left + width + 10 << "\" y=\"" << top + 14 + 16 * k << "\" fill=\""
      << palette[k % palette.size()] << "\">" << escape(series[k].label) << "</text>\n";
  }
  s << "<text x=\"" << left << "\" y=\"" << top + height + 16 << "\">" << num(x_axis.min) << "</text>\n";
  s << "<text x=\"" << left + width << "\" y=\"" << top + height + 16 << "\" text-anchor=\"end\">" << num(x_axis.max)
    << "</text>\n";
  s << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 34 << "\" text-anchor=\"middle\">"
    << escape(x_axis.label) << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << top + height << "\" text-anchor=\"end\">" << num(lo) << "</text>\n";
  s << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << num(hi) << "</text>\n";
  s << "<text transform=\"translate(" << left - 40 << "," << top + height / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  s << "</svg>\n";
  write_file(path, s.str());
}

}  // namespace zeno::io
