#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zeno {

/// Uniform periodic grid r_i = r_min + i*dr, i = 0..N-1, with dr = (r_max - r_min)/N.
/// Wavenumbers follow the usual DFT ordering, so k[0] = 0 and k[N/2] = -pi/dr.
class SpatialGrid {
 public:
  /// Throws ValidationError unless r_min > 0, r_max > r_min and N >= 8 is a power of two.
  SpatialGrid(double r_min, double r_max, std::size_t n);

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  std::size_t size() const noexcept { return r_.size(); }
  double dr() const noexcept { return dr_; }
  double length() const noexcept { return r_max_ - r_min_; }
  double k_max() const noexcept;

  double r(std::size_t i) const { return r_[i]; }
  std::span<const double> positions() const noexcept { return r_; }
  std::span<const double> wavenumbers() const noexcept { return k_; }

  bool operator==(const SpatialGrid& other) const noexcept {
    return r_min_ == other.r_min_ && r_max_ == other.r_max_ && r_.size() == other.r_.size();
  }

 private:
  double r_min_;
  double r_max_;
  double dr_;
  std::vector<double> r_;
  std::vector<double> k_;
};

SpatialGrid make_grid(double r_min, double r_max, std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace zeno
