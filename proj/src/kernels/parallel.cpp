#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "zeno/kernels.hpp"
#include "zeno/local_flow.hpp"

namespace zeno::kernels::parallel {
namespace {

using Index = std::ptrdiff_t;

Index rows_of(const DimerState& s) { return static_cast<Index>(s.n()); }

// Sum of per-row partials in row order.
double ordered_sum(const std::vector<double>& rows) {
  double total = 0.0;
  for (double v : rows) total += v;
  return total;
}

}  // namespace

void local_flow(DimerState& state, std::span<const double> coupling, double gamma, double dt) {
  const Index n = rows_of(state);
  Complex* b11 = state.block(Block::b11).data();
  Complex* b12 = state.block(Block::b12).data();
  Complex* b21 = state.block(Block::b21).data();
  Complex* b22 = state.block(Block::b22).data();
  const double* w = coupling.data();
  const double h = 0.25 * gamma * dt;
  const double decay = std::exp(-h);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double wi = w[i];
    for (Index j = 0; j < n; ++j) {
      const Index p = i * n + j;
      apply_flow(flow_coefficients(wi, w[j], h, decay, dt), b11[p], b12[p], b21[p], b22[p]);
    }
  }
}

void build_flow_coefficients(std::span<FlowCoefficients> out, std::span<const double> coupling, double gamma,
                             double dt) {
  const auto n = static_cast<Index>(coupling.size());
  const double h = 0.25 * gamma * dt;
  const double decay = std::exp(-h);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out[i * n + j] = flow_coefficients(coupling[i], coupling[j], h, decay, dt);
}

void apply_flow_coefficients(DimerState& state, std::span<const FlowCoefficients> coefficients) {
  const Index n = rows_of(state);
  Complex* b11 = state.block(Block::b11).data();
  Complex* b12 = state.block(Block::b12).data();
  Complex* b21 = state.block(Block::b21).data();
  Complex* b22 = state.block(Block::b22).data();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index p = i * n + j;
      apply_flow(coefficients[p], b11[p], b12[p], b21[p], b22[p]);
    }
}

void build_local_propagators(std::span<LocalMatrix> out, std::span<const double> coupling, double gamma,
                             double delta_e, double dt) {
  const auto n = static_cast<Index>(coupling.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out[i * n + j] = local_propagator(coupling[i], coupling[j], gamma, delta_e, dt);
}

void apply_local_propagators(DimerState& state, std::span<const LocalMatrix> matrices) {
  const Index n = rows_of(state);
  Complex* b11 = state.block(Block::b11).data();
  Complex* b12 = state.block(Block::b12).data();
  Complex* b21 = state.block(Block::b21).data();
  Complex* b22 = state.block(Block::b22).data();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Index p = i * n + j;
      apply_local_matrix(matrices[p], b11[p], b12[p], b21[p], b22[p]);
    }
}

void apply_mask(DimerState& state, std::span<const double> mask) {
  const Index n = rows_of(state);
  // Columns inside the ramps; elsewhere the mask is exactly 1.
  std::vector<Index> ramp;
  for (Index j = 0; j < n; ++j)
    if (mask[j] != 1.0) ramp.push_back(j);
  for (int b = 0; b < 4; ++b) {
    Complex* x = state.block(b).data();
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
      const double mi = mask[i];
      Complex* row = x + i * n;
      if (mi != 1.0) {
        for (Index j = 0; j < n; ++j) row[j] *= mi * mask[j];
      } else {
        for (Index j : ramp) row[j] *= mask[j];
      }
    }
  }
}

void multiply_separable(Complex* block, std::size_t n_, std::span<const Complex> factor, double scale) {
  const auto n = static_cast<Index>(n_);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const Complex fi = factor[i] * scale;
    for (Index j = 0; j < n; ++j) block[i * n + j] *= fi * std::conj(factor[j]);
  }
}

void multiply_kinetic_generator(Complex* block, std::size_t n_, std::span<const double> k2, Complex coeff) {
  const auto n = static_cast<Index>(n_);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) block[i * n + j] *= coeff * (k2[i] - k2[j]);
  }
}

void add_local_derivative(const DimerState& in, DimerState& out, std::span<const double> coupling, double gamma,
                          double delta_e) {
  constexpr Complex i1{0.0, 1.0};
  const Index n = rows_of(in);
  const Complex* r11 = in.block(Block::b11).data();
  const Complex* r12 = in.block(Block::b12).data();
  const Complex* r21 = in.block(Block::b21).data();
  const Complex* r22 = in.block(Block::b22).data();
  Complex* o11 = out.block(Block::b11).data();
  Complex* o12 = out.block(Block::b12).data();
  Complex* o21 = out.block(Block::b21).data();
  Complex* o22 = out.block(Block::b22).data();
  const double g = 0.5 * gamma;
  const Complex shift12{-g, delta_e};
  const Complex shift21{-g, -delta_e};
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double a = coupling[i];
    for (Index j = 0; j < n; ++j) {
      const double b = coupling[j];
      const Index p = i * n + j;
      o11[p] += -i1 * (a * r21[p] - b * r12[p]);
      o12[p] += -i1 * (a * r22[p] - b * r11[p]) + shift12 * r12[p];
      o21[p] += -i1 * (a * r11[p] - b * r22[p]) + shift21 * r21[p];
      o22[p] += -i1 * (a * r12[p] - b * r21[p]);
    }
  }
}

void axpy(const DimerState& x, double a, const DimerState& d, DimerState& y) {
  const Index total = rows_of(x) * rows_of(x);
  for (int b = 0; b < 4; ++b) {
    const Complex* xs = x.block(b).data();
    const Complex* ds = d.block(b).data();
    Complex* ys = y.block(b).data();
#pragma omp parallel for schedule(static)
    for (Index p = 0; p < total; ++p) ys[p] = xs[p] + a * ds[p];
  }
}

double hermiticity_defect(const DimerState& state) {
  const Index n = rows_of(state);
  std::vector<double> row_max(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double m = 0.0;
    for (int bn = 0; bn < 2; ++bn)
      for (int bm = 0; bm < 2; ++bm) {
        const Complex* x = state.block(block_index(bn, bm)).data();
        const Complex* y = state.block(block_index(bm, bn)).data();
        for (Index j = 0; j < n; ++j) m = std::max(m, std::abs(x[i * n + j] - std::conj(y[j * n + i])));
      }
    row_max[static_cast<std::size_t>(i)] = m;
  }
  return *std::max_element(row_max.begin(), row_max.end());
}

double sum_abs2(const DimerState& state) {
  const Index n = rows_of(state);
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (int b = 0; b < 4; ++b) {
      const Complex* x = state.block(b).data() + i * n;
      for (Index j = 0; j < n; ++j) s += std::norm(x[j]);
    }
    rows[static_cast<std::size_t>(i)] = s;
  }
  return ordered_sum(rows);
}

double max_abs_difference(const DimerState& a, const DimerState& b) {
  const Index n = rows_of(a);
  std::vector<double> row_max(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double m = 0.0;
    for (int blk = 0; blk < 4; ++blk) {
      const Complex* x = a.block(blk).data() + i * n;
      const Complex* y = b.block(blk).data() + i * n;
      for (Index j = 0; j < n; ++j) m = std::max(m, std::abs(x[j] - y[j]));
    }
    row_max[static_cast<std::size_t>(i)] = m;
  }
  return *std::max_element(row_max.begin(), row_max.end());
}

bool all_finite(const DimerState& state) {
  const Index n = rows_of(state);
  int bad = 0;
#pragma omp parallel for schedule(static) reduction(| : bad)
  for (Index i = 0; i < n; ++i) {
    for (int b = 0; b < 4; ++b) {
      const Complex* x = state.block(b).data() + i * n;
      for (Index j = 0; j < n; ++j)
        if (!std::isfinite(x[j].real()) || !std::isfinite(x[j].imag())) bad = 1;
    }
  }
  return bad == 0;
}

}  // namespace zeno::kernels::parallel
