#include "zeno/units.hpp"

namespace zeno {

double hbar_over_mass(double mass_u) {
  const double si = constants::hbar_si / (mass_u * constants::atomic_mass_unit_si);  // m^2/s
  return si * 1e12 / 1e6;
}

double default_kinetic_coefficient() {
  const double reduced_mass_u = constants::rb87_mass_u / 2.0;
  return hbar_over_mass(reduced_mass_u) / 2.0;
}

}  // namespace zeno
