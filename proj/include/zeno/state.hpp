#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "zeno/grid.hpp"

namespace zeno {

using Complex = std::complex<double>;

/// 64-byte aligned storage so FFTW can use its SIMD codelets on every block.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), alignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Electronic block labels in storage (and snapshot) order.
enum class Block : int { b11 = 0, b12 = 1, b21 = 2, b22 = 3 };

constexpr int block_index(int n, int m) { return 2 * n + m; }

/// rho(r, r')_{nm} on an N x N grid: four row-major complex blocks, row index
/// r and column index r'. The value plus the probability already removed by
/// boundary absorbers is the whole system.
class DimerState {
 public:
  explicit DimerState(SpatialGrid grid);

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::size_t n() const noexcept { return grid_.size(); }

  ComplexBuffer& block(Block b) { return blocks_[static_cast<int>(b)]; }
  const ComplexBuffer& block(Block b) const { return blocks_[static_cast<int>(b)]; }
  ComplexBuffer& block(int index) { return blocks_[index]; }
  const ComplexBuffer& block(int index) const { return blocks_[index]; }

  /// Element (i, j) of block (n, m), electronic indices 0 or 1.
  Complex& at(int n, int m, std::size_t i, std::size_t j) { return blocks_[block_index(n, m)][i * this->n() + j]; }
  const Complex& at(int n, int m, std::size_t i, std::size_t j) const {
    return blocks_[block_index(n, m)][i * this->n() + j];
  }

  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }
  double absorbed_norm() const noexcept { return absorbed_norm_; }
  void set_absorbed_norm(double a) noexcept { absorbed_norm_ = a; }
  void add_absorbed_norm(double a) noexcept { absorbed_norm_ += a; }

  void scale(double factor);

 private:
  SpatialGrid grid_;
  std::array<ComplexBuffer, 4> blocks_;
  double time_ = 0.0;
  double absorbed_norm_ = 0.0;
};

/// Integral of rho_11(r,r) + rho_22(r,r) (Riemann sum with weight dr).
double trace(const DimerState& state);

/// max over n, m, r, r' of |rho_nm(r,r') - conj(rho_mn(r',r))|.
double hermiticity_defect(const DimerState& state);

/// Tr(rho^2) = sum_nm integral |rho_nm(r,r')|^2 dr dr' (uses hermiticity).
double purity(const DimerState& state);

/// Largest entrywise difference over all four blocks; grids must match.
double max_abs_difference(const DimerState& a, const DimerState& b);

/// True if every entry of every block is finite.
bool all_finite(const DimerState& state);

}  // namespace zeno
