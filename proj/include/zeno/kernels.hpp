#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "zeno/local_flow.hpp"
#include "zeno/state.hpp"

// Data-parallel inner loops of the propagator and the O(N^2) reductions.
//
// `parallel` is the production path (OpenMP over rows, closed-form local
// flow). `serial` is the single-threaded reference kept for testing and
// benchmarking: plain loops, and a local flow built from a generic 4x4
// matrix exponential per point rather than the closed form.
//
// Reductions accumulate per-row partial sums and combine them in row order,
// so results do not depend on the thread count.

namespace zeno::kernels {

namespace parallel {

/// Exact local electronic flow over dt at every (r, r'), delta_e = 0.
void local_flow(DimerState& state, std::span<const double> coupling, double gamma, double dt);

/// Per-point coefficients of local_flow, for reuse while gamma is unchanged.
void build_flow_coefficients(std::span<FlowCoefficients> out, std::span<const double> coupling, double gamma,
                             double dt);
void apply_flow_coefficients(DimerState& state, std::span<const FlowCoefficients> coefficients);

/// out[i*N + j] = exp(dt * local_generator(W[i], W[j], gamma, delta_e)).
void build_local_propagators(std::span<LocalMatrix> out, std::span<const double> coupling, double gamma,
                             double delta_e, double dt);

/// Applies per-point 4x4 matrices from build_local_propagators.
void apply_local_propagators(DimerState& state, std::span<const LocalMatrix> matrices);

/// rho(i, j) *= mask[i] * mask[j] on all four blocks.
void apply_mask(DimerState& state, std::span<const double> mask);

/// x(i, j) *= factor[i] * conj(factor[j]) * scale.
void multiply_separable(Complex* block, std::size_t n, std::span<const Complex> factor, double scale);

/// x(i, j) *= coeff * (k2[i] - k2[j]).
void multiply_kinetic_generator(Complex* block, std::size_t n, std::span<const double> k2, Complex coeff);

/// out += coupling and dephasing part of d rho/dt evaluated at `in`.
void add_local_derivative(const DimerState& in, DimerState& out, std::span<const double> coupling, double gamma,
                          double delta_e);

/// y = x + a * d, blockwise.
void axpy(const DimerState& x, double a, const DimerState& d, DimerState& y);

double hermiticity_defect(const DimerState& state);
double sum_abs2(const DimerState& state);  // no dr weight
double max_abs_difference(const DimerState& a, const DimerState& b);
bool all_finite(const DimerState& state);

}  // namespace parallel

namespace serial {

void local_flow(DimerState& state, std::span<const double> coupling, double gamma, double dt);
void build_local_propagators(std::span<LocalMatrix> out, std::span<const double> coupling, double gamma,
                             double delta_e, double dt);
void apply_local_propagators(DimerState& state, std::span<const LocalMatrix> matrices);
void apply_mask(DimerState& state, std::span<const double> mask);
void multiply_separable(Complex* block, std::size_t n, std::span<const Complex> factor, double scale);
void multiply_kinetic_generator(Complex* block, std::size_t n, std::span<const double> k2, Complex coeff);
void add_local_derivative(const DimerState& in, DimerState& out, std::span<const double> coupling, double gamma,
                          double delta_e);
void axpy(const DimerState& x, double a, const DimerState& d, DimerState& y);
double hermiticity_defect(const DimerState& state);
double sum_abs2(const DimerState& state);
double max_abs_difference(const DimerState& a, const DimerState& b);
bool all_finite(const DimerState& state);

}  // namespace serial

}  // namespace zeno::kernels
