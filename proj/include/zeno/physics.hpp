#pragma once

#include "zeno/units.hpp"

namespace zeno {

/// mu^2 anchored so that W12(9 um) = 2.2 MHz.
inline constexpr double default_mu2 = 2.2 * 9.0 * 9.0 * 9.0;  // MHz um^3

struct PhysicalParams {
  double mu2 = default_mu2;                       // MHz um^3
  double kappa = default_kinetic_coefficient();   // um^2/us, multiplies -d^2/dr^2

  /// Throws ValidationError unless mu2 > 0 and kappa > 0.
  void validate() const;
};

}  // namespace zeno
