#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zeno {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// Background gas probing the dimer through EIT. Frequencies in MHz, lengths in um.
struct GasConfig {
  std::vector<Vec3> atom_positions;
  std::array<Vec3, 2> dimer_positions{Vec3{-4.5, 0.0, 0.0}, Vec3{4.5, 0.0, 0.0}};
  double omega_p = 1.0;
  double omega_c = 30.0;
  double gamma_p = 6.1;
  std::optional<double> v_c;  // unset: omega_c^2 / gamma_p
  // Placeholder interaction coefficients, not physical values for any Rb level.
  double c6_rs = 1.0e6;   // MHz um^6
  double c4_rp = 1.0e3;   // MHz um^4
  double c6_rr = 1.0e6;   // MHz um^6, recorded only
  double density = 0.0;   // um^-3, Monte Carlo mode
  double box_side = 0.0;  // um; 0 selects 6 max(R_cs, R_cp)
  std::uint64_t seed = 1;

  double resolved_v_c() const;
  /// Throws ValidationError on hard errors; returns warnings (omega_p > omega_c).
  std::vector<std::string> validate() const;
};

/// Dimer atoms at (-r/2, 0, 0) and (r/2, 0, 0).
std::array<Vec3, 2> dimer_on_axis(double r);

/// Vbar_{n alpha} = C4_rp / |x_a - x_n|^4 + sum_{m != n} C6_rs / |x_a - x_m|^6,
/// with the p excitation on dimer atom n (0 or 1). Throws on coincident positions.
double vbar(int n, const Vec3& atom, const GasConfig& gas);
double vbar(int n, std::size_t alpha, const GasConfig& gas);

/// L_eff for one (n, alpha) pair: (Omega_p / sqrt(Gamma_p)) / (i + V_c / Vbar).
std::complex<double> jump_amplitude(double vbar_value, const GasConfig& gas);
/// E_eff for one (n, alpha) pair: (Omega_p^2 / Omega_c^2) Vbar / (1 + (Vbar / V_c)^2).
double energy_shift(double vbar_value, const GasConfig& gas);

struct EffectiveRates {
  double gamma = 0.0;    // sum_a |L_1a - L_2a|^2
  double delta_e = 0.0;  // E1 - E2 + eps12
  double e1 = 0.0;
  double e2 = 0.0;
  double eps12 = 0.0;    // sum_a Im(L_1a conj(L_2a))
};

EffectiveRates effective_rates(const GasConfig& gas);
/// Contribution of a single atom at `atom`.
EffectiveRates atom_rates(const Vec3& atom, const GasConfig& gas);

struct CriticalRadii {
  double r_cs;  // (C6_rs / V_c)^(1/6)
  double r_cp;  // (C4_rp / V_c)^(1/4)
};

CriticalRadii critical_radii(const GasConfig& gas);

/// Box side used for sampling: gas.box_side, or 6 max(R_cs, R_cp).
double sampling_box_side(const GasConfig& gas);

/// Mean gamma of a uniform gas of the configured density in a cube of side
/// `side` around the dimer midpoint, by midpoint quadrature on cells^3 cells.
double expected_gamma(const GasConfig& gas, double side, int cells = 96);

/// Fraction of the expected gamma lost by truncating to the sampling box,
/// estimated from the shell between the box and a box of twice the side.
double truncation_fraction(const GasConfig& gas);

struct MonteCarloStats {
  double gamma_mean = 0.0;
  double gamma_std = 0.0;   // sample standard deviation over realizations
  double delta_e_mean = 0.0;
  double delta_e_std = 0.0;
  double mean_atoms = 0.0;
  double box_side = 0.0;
  double v_c = 0.0;
  std::size_t realizations = 0;
};

/// Poisson-distributed atom count, uniform positions in the sampling box.
/// Realization i draws from a generator seeded by splitmix64(seed, i), so the
/// result is independent of thread count. Throws ValidationError if the box
/// truncation fraction is >= 1%.
MonteCarloStats monte_carlo_rates(const GasConfig& gas, std::size_t n_realizations);

/// m^-3 to um^-3.
constexpr double per_m3_to_per_um3(double density_m3) { return density_m3 * 1e-18; }

}  // namespace zeno
