#include "zeno/state.hpp"

#include <stdexcept>

#include "zeno/kernels.hpp"

namespace zeno {

DimerState::DimerState(SpatialGrid grid) : grid_(std::move(grid)) {
  const std::size_t n = grid_.size();
  for (auto& b : blocks_) b.assign(n * n, Complex{0.0, 0.0});
}

void DimerState::scale(double factor) {
  for (auto& b : blocks_)
    for (auto& v : b) v *= factor;
}

double trace(const DimerState& state) {
  const std::size_t n = state.n();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += state.at(0, 0, i, i).real() + state.at(1, 1, i, i).real();
  return sum * state.grid().dr();
}

double hermiticity_defect(const DimerState& state) { return kernels::parallel::hermiticity_defect(state); }

double purity(const DimerState& state) {
  const double dr = state.grid().dr();
  return kernels::parallel::sum_abs2(state) * dr * dr;
}

double max_abs_difference(const DimerState& a, const DimerState& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("max_abs_difference: grids differ");
  return kernels::parallel::max_abs_difference(a, b);
}

bool all_finite(const DimerState& state) { return kernels::parallel::all_finite(state); }

}  // namespace zeno
