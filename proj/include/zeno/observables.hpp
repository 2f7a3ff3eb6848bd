#pragma once

#include <span>
#include <vector>

#include "zeno/spectral.hpp"
#include "zeno/state.hpp"

namespace zeno {

/// One row of the time series. Energies and rates in MHz (internal units).
struct ObservableRecord {
  double t = 0.0;
  double trace = 0.0;
  double kinetic_energy = 0.0;
  double potential_energy = 0.0;
  double pop_rep = 0.0;
  double pop_att = 0.0;
  double local_purity_mean = 0.0;
  double coherence_norm = 0.0;
  double absorbed_norm = 0.0;
  double gamma = 0.0;
  double coherence_frobenius = 0.0;
  double purity = 0.0;
};

/// n(r) = rho_11(r,r) + rho_22(r,r).
std::vector<double> density(const DimerState& state);

/// E_kin = sum_n integral dk kappa k^2 rho~(k,-k)_nn, with rho~ the double
/// transform with kernel exp(-i(k r + k' r')).
double kinetic_energy(const DimerState& state, double kappa, const SpectralTransform& transform);
double kinetic_energy(const DimerState& state, double kappa);

/// E_pot = integral dr W12(r) (rho_12(r,r) + rho_21(r,r)), with W12 sampled on the grid.
double potential_energy(const DimerState& state, std::span<const double> coupling);

/// Same number from the eigenbasis: integral U_rep w_rep + U_att w_att.
double potential_energy_eigenbasis(const DimerState& state, std::span<const double> coupling);

struct SurfacePopulations {
  double repulsive;
  double attractive;
};

SurfacePopulations surface_populations(const DimerState& state);

struct LocalPurity {
  std::vector<double> profile;  // P(r)
  double mean = 0.0;            // integral P(r) n(r) dr
};

/// Below this value of rho_11^2 + rho_22^2 the local purity is set to 0.
inline constexpr double local_purity_floor = 1e-24;

/// P(r) = (rho11^2 + 2 rho12 rho21 + rho22^2) / (rho11^2 + rho22^2) - 1 from the diagonal values.
LocalPurity local_purity(const DimerState& state);

/// integral |rho_12(r,r)| dr.
double coherence_norm(const DimerState& state);

/// sqrt(integral |rho_12(r,r')|^2 dr dr').
double coherence_frobenius(const DimerState& state);

/// (E_f - Z) / (E_ref_f - Z). Throws std::domain_error when the denominator
/// vanishes at the scale of rounding.
double normalized_final_energy(double e_final, double e_reference_final, double zero_point = 0.0);

/// All ObservableRecord fields at the state's current time.
ObservableRecord observe(const DimerState& state, double kappa, std::span<const double> coupling, double gamma,
                         const SpectralTransform& transform);

}  // namespace zeno
