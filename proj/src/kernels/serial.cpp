#include <algorithm>
#include <cmath>
#include <vector>

#include "zeno/kernels.hpp"
#include "zeno/local_flow.hpp"

namespace zeno::kernels::serial {

void local_flow(DimerState& state, std::span<const double> coupling, double gamma, double dt) {
  std::vector<LocalMatrix> matrices(state.n() * state.n());
  build_local_propagators(matrices, coupling, gamma, 0.0, dt);
  apply_local_propagators(state, matrices);
}

void build_local_propagators(std::span<LocalMatrix> out, std::span<const double> coupling, double gamma,
                             double delta_e, double dt) {
  const std::size_t n = coupling.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = local_propagator(coupling[i], coupling[j], gamma, delta_e, dt);
}

void apply_local_propagators(DimerState& state, std::span<const LocalMatrix> matrices) {
  const std::size_t n = state.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      apply_local_matrix(matrices[i * n + j], state.at(0, 0, i, j), state.at(0, 1, i, j), state.at(1, 0, i, j),
                         state.at(1, 1, i, j));
}

void apply_mask(DimerState& state, std::span<const double> mask) {
  const std::size_t n = state.n();
  for (int b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) state.block(b)[i * n + j] *= mask[i] * mask[j];
}

void multiply_separable(Complex* block, std::size_t n, std::span<const Complex> factor, double scale) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) block[i * n + j] *= factor[i] * std::conj(factor[j]) * scale;
}

void multiply_kinetic_generator(Complex* block, std::size_t n, std::span<const double> k2, Complex coeff) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) block[i * n + j] *= coeff * (k2[i] - k2[j]);
}

void add_local_derivative(const DimerState& in, DimerState& out, std::span<const double> coupling, double gamma,
                          double delta_e) {
  const std::size_t n = in.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LocalMatrix g = local_generator(coupling[i], coupling[j], gamma, delta_e);
      const Complex v[4] = {in.at(0, 0, i, j), in.at(0, 1, i, j), in.at(1, 0, i, j), in.at(1, 1, i, j)};
      for (int row = 0; row < 4; ++row) {
        Complex acc = 0.0;
        for (int col = 0; col < 4; ++col) acc += g[4 * row + col] * v[col];
        out.at(row / 2, row % 2, i, j) += acc;
      }
    }
  }
}

void axpy(const DimerState& x, double a, const DimerState& d, DimerState& y) {
  const std::size_t total = x.n() * x.n();
  for (int b = 0; b < 4; ++b)
    for (std::size_t p = 0; p < total; ++p) y.block(b)[p] = x.block(b)[p] + a * d.block(b)[p];
}

double hermiticity_defect(const DimerState& state) {
  const std::size_t n = state.n();
  double m = 0.0;
  for (int bn = 0; bn < 2; ++bn)
    for (int bm = 0; bm < 2; ++bm)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m = std::max(m, std::abs(state.at(bn, bm, i, j) - std::conj(state.at(bm, bn, j, i))));
  return m;
}

double sum_abs2(const DimerState& state) {
  const std::size_t n = state.n();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (int b = 0; b < 4; ++b)
      for (std::size_t j = 0; j < n; ++j) row += std::norm(state.block(b)[i * n + j]);
    total += row;
  }
  return total;
}

double max_abs_difference(const DimerState& a, const DimerState& b) {
  double m = 0.0;
  for (int blk = 0; blk < 4; ++blk)
    for (std::size_t p = 0; p < a.block(blk).size(); ++p) m = std::max(m, std::abs(a.block(blk)[p] - b.block(blk)[p]));
  return m;
}

bool all_finite(const DimerState& state) {
  for (int b = 0; b < 4; ++b)
    for (const Complex& v : state.block(b))
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace zeno::kernels::serial
