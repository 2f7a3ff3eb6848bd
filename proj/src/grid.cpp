#include "zeno/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

SpatialGrid::SpatialGrid(double r_min, double r_max, std::size_t n)
    : r_min_(r_min), r_max_(r_max), dr_(0.0) {
  if (!(r_min > 0.0)) {
    throw ValidationError("grid: r_min must be > 0 (coupling ~ 1/r^3 is singular at r = 0), got " +
                          std::to_string(r_min));
  }
  if (!(r_max > r_min)) {
    throw ValidationError("grid: r_max must exceed r_min");
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw ValidationError("grid: point count must be a power of two >= 8, got " + std::to_string(n));
  }
  dr_ = (r_max - r_min) / static_cast<double>(n);
  r_.resize(n);
  k_.resize(n);
  const double dk = 2.0 * std::numbers::pi / (r_max - r_min);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    r_[i] = r_min + dr_ * static_cast<double>(i);
    auto j = static_cast<std::ptrdiff_t>(i);
    if (j >= half) j -= static_cast<std::ptrdiff_t>(n);
    k_[i] = dk * static_cast<double>(j);
  }
}

double SpatialGrid::k_max() const noexcept { return std::numbers::pi / dr_; }

SpatialGrid make_grid(double r_min, double r_max, std::size_t n) { return SpatialGrid(r_min, r_max, n); }

}  // namespace zeno
