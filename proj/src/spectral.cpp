#include "zeno/spectral.hpp"

#include <fftw3.h>
#include <omp.h>

#include <mutex>

namespace zeno {
namespace {

// The FFTW planner is not thread-safe; sweeps build propagators concurrently.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_threads_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { fftw_init_threads(); });
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct SpectralTransform::Plans {
  TransformLayout layout;
  // two_dimensional: [0] forward, [1] backward.
  // row_column: [0] rows fwd, [1] rows bwd, [2] cols fwd, [3] cols bwd.
  fftw_plan plan[4] = {nullptr, nullptr, nullptr, nullptr};

  Plans() = default;
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (auto& p : plan)
      if (p) fftw_destroy_plan(p);
  }
};

SpectralTransform::SpectralTransform(std::size_t n, FftPlanner planner, TransformLayout layout)
    : n_(n), plans_(std::make_unique<Plans>()) {
  init_threads_once();
  plans_->layout = layout;
  const unsigned flags = (planner == FftPlanner::measure ? FFTW_MEASURE : FFTW_ESTIMATE);
  const int ni = static_cast<int>(n);

  ComplexBuffer scratch(n * n);
  std::lock_guard lock(planner_mutex());
  if (layout == TransformLayout::two_dimensional) {
    fftw_plan_with_nthreads(omp_in_parallel() ? 1 : omp_get_max_threads());
    plans_->plan[0] = fftw_plan_dft_2d(ni, ni, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD, flags);
    plans_->plan[1] = fftw_plan_dft_2d(ni, ni, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD, flags);
  } else {
    fftw_plan_with_nthreads(1);
    auto* p = as_fftw(scratch.data());
    // Rows: contiguous length-N transforms, N of them.
    plans_->plan[0] = fftw_plan_many_dft(1, &ni, ni, p, nullptr, 1, ni, p, nullptr, 1, ni, FFTW_FORWARD, flags);
    plans_->plan[1] = fftw_plan_many_dft(1, &ni, ni, p, nullptr, 1, ni, p, nullptr, 1, ni, FFTW_BACKWARD, flags);
    // Columns: stride N, consecutive columns one element apart.
    plans_->plan[2] = fftw_plan_many_dft(1, &ni, ni, p, nullptr, ni, 1, p, nullptr, ni, 1, FFTW_FORWARD, flags);
    plans_->plan[3] = fftw_plan_many_dft(1, &ni, ni, p, nullptr, ni, 1, p, nullptr, ni, 1, FFTW_BACKWARD, flags);
  }
}

SpectralTransform::~SpectralTransform() = default;

SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

void SpectralTransform::forward(Complex* data) const {
  auto* p = as_fftw(data);
  if (plans_->layout == TransformLayout::two_dimensional) {
    fftw_execute_dft(plans_->plan[0], p, p);
  } else {
    fftw_execute_dft(plans_->plan[0], p, p);
    fftw_execute_dft(plans_->plan[2], p, p);
  }
}

void SpectralTransform::backward(Complex* data) const {
  auto* p = as_fftw(data);
  if (plans_->layout == TransformLayout::two_dimensional) {
    fftw_execute_dft(plans_->plan[1], p, p);
  } else {
    fftw_execute_dft(plans_->plan[1], p, p);
    fftw_execute_dft(plans_->plan[3], p, p);
  }
}

}  // namespace zeno
