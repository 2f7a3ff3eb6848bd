#pragma once

#include <cstddef>
#include <memory>

#include "zeno/state.hpp"

namespace zeno {

enum class FftPlanner {
  estimate,  // deterministic plan choice: bitwise reproducible across processes
  measure,   // timed plan choice: faster, may differ in the last bit between processes
};

enum class TransformLayout {
  two_dimensional,  // one multithreaded 2D plan
  row_column,       // two batched single-threaded 1D passes (serial reference)
};

/// In-place unnormalized 2D DFT of an N x N row-major block. forward uses
/// exp(-i(k r + k' r')), backward the conjugate; backward(forward(x)) = N^2 x.
class SpectralTransform {
 public:
  SpectralTransform(std::size_t n, FftPlanner planner = FftPlanner::estimate,
                    TransformLayout layout = TransformLayout::two_dimensional);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  std::size_t n() const noexcept { return n_; }

  /// data must be 16-byte aligned (ComplexBuffer storage is).
  void forward(Complex* data) const;
  void backward(Complex* data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace zeno
