#pragma once

#include <complex>
#include <vector>

#include "zeno/grid.hpp"
#include "zeno/physics.hpp"
#include "zeno/state.hpp"

// Reference solvers for tests. Both build their generator by applying
// rho -> -i[H, rho] + dephasing to unit matrices and exponentiate it densely,
// sharing no code with the production propagator.

namespace zeno::oracles {

/// Electronic density matrix at one frozen separation.
struct BlochState {
  Complex r11, r12, r21, r22;
};

BlochState bloch_initial(double c1, double c2);  // |c><c| for real amplitudes

/// Exact solution at time t for coupling w (MHz).
BlochState bloch_solve_w(double w, double gamma, double delta_e, const BlochState& rho0, double t);

/// Same with w = mu^2 / r^3 (uncapped). Throws ValidationError for r <= 0.
BlochState bloch_solve(double r, double gamma, double delta_e, const BlochState& rho0, double t,
                       const PhysicalParams& params);

/// Dense N x N matrix of the spectral second derivative on `grid`:
/// D2 = F^-1 diag(-k^2) F with the grid's DFT wavenumbers, built from direct sums.
std::vector<double> spectral_second_derivative(const SpatialGrid& grid);

struct DenseOptions {
  double w_cap = 50.0;
  bool kinetic_enabled = true;
  double gamma = 0.0;
  double delta_e = 0.0;
};

/// exp(t G) applied to `initial`, where G is the full 4N^2 generator (no absorber).
/// Throws ValidationError for N > 16.
DimerState dense_propagate(const DimerState& initial, const PhysicalParams& params, const DenseOptions& options,
                           double t);

}  // namespace zeno::oracles
