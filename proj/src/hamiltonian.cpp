#include "zeno/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno {

void PhysicalParams::validate() const {
  if (!(mu2 > 0.0) || !std::isfinite(mu2)) throw ValidationError("physics: mu2 must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("physics: kappa must be positive");
}

double w12(double r, const PhysicalParams& params) {
  if (!(r > 0.0)) throw ValidationError("w12: separation must be positive");
  return params.mu2 / (r * r * r);
}

SurfaceEnergies bo_surfaces(double r, const PhysicalParams& params) {
  const double w = w12(r, params);
  return {w, -w};
}

std::array<double, 2> electronic_amplitudes(Surface s) {
  const double h = std::numbers::sqrt2 / 2.0;
  switch (s) {
    case Surface::repulsive: return {h, h};
    case Surface::attractive: return {h, -h};
    case Surface::pi1: return {1.0, 0.0};
    case Surface::pi2: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

std::vector<double> coupling_profile(const SpatialGrid& grid, const PhysicalParams& params, double w_cap) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = std::min(w12(grid.r(i), params), w_cap);
  return w;
}

void InitialPacket::validate(const SpatialGrid& grid) const {
  if (!(sigma > 0.0)) throw ValidationError("packet: sigma must be positive");
  const double margin = 5.0 * sigma;
  if (r0 - margin < grid.r_min() || r0 + margin > grid.r_max()) {
    std::ostringstream os;
    os << "packet: [r0 - 5 sigma, r0 + 5 sigma] = [" << r0 - margin << ", " << r0 + margin
       << "] um must lie inside the grid [" << grid.r_min() << ", " << grid.r_max() << "] um";
    throw ValidationError(os.str());
  }
}

double gaussian_norm(double sigma) { return std::pow(std::numbers::pi * sigma * sigma, -0.25); }

DimerState build_initial_state(const SpatialGrid& grid, const InitialPacket& packet) {
  packet.validate(grid);
  const std::size_t n = grid.size();
  const double norm = gaussian_norm(packet.sigma);
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (grid.r(i) - packet.r0) / packet.sigma;
    phi[i] = norm * std::exp(-0.5 * x * x);
  }
  const auto c = electronic_amplitudes(packet.surface);

  DimerState state(grid);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double cc = c[a] * c[b];
      if (cc == 0.0) continue;
      auto& blk = state.block(block_index(a, b));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) blk[i * n + j] = cc * phi[i] * phi[j];
    }
  return state;
}

}  // namespace zeno
