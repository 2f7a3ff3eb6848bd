#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeno/decoherence.hpp"
#include "zeno/gas.hpp"
#include "zeno/grid.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/physics.hpp"
#include "zeno/propagator.hpp"
#include "zeno/units.hpp"

namespace zeno::io {

enum class ScenarioKind { fig2_slow_decoherence, fig3_zeno_sweep, fig4_pulses, gas_rates, custom };

std::string to_string(ScenarioKind kind);

struct ScheduleConfig {
  enum class Type { constant, pulses, gas };
  Type type = Type::constant;
  double gamma = 0.0;                    // MHz
  double gamma0 = 4.0;                   // MHz
  std::vector<double> centers{2.0, 11.0};  // us
  double tau = 0.5;                      // us; not given for the pulse figure, chosen by eye
  double delta_e = 0.0;                  // MHz
};

struct OutputConfig {
  std::filesystem::path directory = "out";
  double record_every = 0.1;            // us
  double history_every = 0.1;           // us, density history rows
  std::vector<double> snapshot_times;   // us
  bool csv = true;
  bool snapshots = true;
  bool svg = true;
};

struct GasSweepConfig {
  std::vector<double> omega_p_values{0.5, 1.0, 2.0, 4.0, 8.0};  // MHz
  std::vector<double> densities_m3{1e16, 1e17, 1e18};
  double separation = 9.0;  // um
  std::size_t realizations = 200;
};

/// Everything a run needs, in internal units (MHz read as angular frequency).
/// `frequency_convention` records how the MHz inputs were read; values below are already converted.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::custom;
  FrequencyConvention frequency_convention = FrequencyConvention::angular;
  SpatialGrid grid{2.0, 34.0, 256};
  InitialPacket packet;
  PhysicalParams physics;
  PropagatorConfig propagator;
  ScheduleConfig schedule;
  double t_final = 20.0;  // us
  OutputConfig output;
  std::vector<double> sweep_gammas;  // MHz
  GasConfig gas;
  GasSweepConfig gas_sweep;

  /// Checks every block against its module's preconditions.
  void validate() const;
  DecoherenceSchedule make_schedule() const;
};

/// Scenario defaults before any file keys are applied.
ScenarioConfig preset(ScenarioKind kind);

/// INI text with [section] headers and key = value lines; unit suffixes are
/// part of the key names. Unknown sections or keys are errors. Throws
/// ValidationError with the source name and key on any problem.
ScenarioConfig parse_config(std::istream& in, const std::string& source_name);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Resolved configuration as INI (angular convention, internal values); parsing it gives back the same values.
std::string to_ini(const ScenarioConfig& config);

}  // namespace zeno::io
