#pragma once

#include <numbers>

// Unit system used throughout: lengths in um, times in us, and every energy
// or rate in 1/us with hbar = 1. A value quoted in "MHz" is read as an angular
// frequency (1e6 rad/s) so that a phase is simply E * t. The cycles convention
// multiplies all MHz inputs by 2*pi once, when a configuration is loaded.

namespace zeno {

enum class FrequencyConvention { angular, cycles };

constexpr double frequency_scale(FrequencyConvention c) {
  return c == FrequencyConvention::cycles ? 2.0 * std::numbers::pi : 1.0;
}

namespace constants {
inline constexpr double hbar_si = 1.054571817e-34;            // J s
inline constexpr double atomic_mass_unit_si = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass_u = 86.909180527;
}  // namespace constants

/// hbar / m in um^2/us for a particle of the given mass in atomic mass units.
double hbar_over_mass(double mass_u);

/// Kinetic coefficient kappa = hbar / (2 m_kin) for relative motion of two
/// 87Rb atoms (m_kin = m/2), i.e. hbar / m(87Rb) = 7.3075e-4 um^2/us.
double default_kinetic_coefficient();

}  // namespace zeno
