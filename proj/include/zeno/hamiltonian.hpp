#pragma once

#include <array>
#include <vector>

#include "zeno/grid.hpp"
#include "zeno/physics.hpp"
#include "zeno/state.hpp"

namespace zeno {

/// Resonant dipole-dipole coupling W12(r) = mu^2 / r^3 between |ps> and |sp>
/// (W11 = W22 = 0). Throws ValidationError for r <= 0.
double w12(double r, const PhysicalParams& params);

/// Born-Oppenheimer surfaces, the eigenvalues of [[0, W], [W, 0]].
struct SurfaceEnergies {
  double repulsive;   // +mu^2/r^3
  double attractive;  // -mu^2/r^3
};

SurfaceEnergies bo_surfaces(double r, const PhysicalParams& params);

/// Electronic states in the {|pi_1>, |pi_2>} = {|ps>, |sp>} basis.
/// repulsive = (pi_1 + pi_2)/sqrt2, attractive = (pi_1 - pi_2)/sqrt2.
enum class Surface { repulsive, attractive, pi1, pi2 };

std::array<double, 2> electronic_amplitudes(Surface s);

/// W12 on the grid, clamped to w_cap where mu^2/r^3 exceeds it.
std::vector<double> coupling_profile(const SpatialGrid& grid, const PhysicalParams& params, double w_cap);

struct InitialPacket {
  double r0 = 9.0;     // um
  double sigma = 0.5;  // um
  Surface surface = Surface::repulsive;

  /// sigma > 0 and [r0 - 5 sigma, r0 + 5 sigma] inside [r_min, r_max].
  void validate(const SpatialGrid& grid) const;
};

/// Normalization of phi0(r) = N exp(-(r - r0)^2 / (2 sigma^2)): N = (pi sigma^2)^(-1/4).
double gaussian_norm(double sigma);

/// rho(t=0) = |phi0>|phi_s><phi_s|<phi0| for the packet's electronic state phi_s.
DimerState build_initial_state(const SpatialGrid& grid, const InitialPacket& packet);

}  // namespace zeno
