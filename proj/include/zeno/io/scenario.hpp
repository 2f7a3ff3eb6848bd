#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "zeno/gas.hpp"
#include "zeno/io/config.hpp"
#include "zeno/observables.hpp"
#include "zeno/state.hpp"

namespace zeno::io {

const char* version();

struct RunOutcome {
  std::vector<ObservableRecord> records;
  DimerState final_state;
  std::vector<std::filesystem::path> files;
};

/// One propagation with the config's schedule: timeseries.csv, snapshots and
/// |rho_11|, |rho_12| heatmaps at the snapshot times, density profiles and
/// overlay, and the n(r, t) history heatmap, all under `dir`.
RunOutcome run_single(const ScenarioConfig& config, const std::filesystem::path& dir);

struct SweepPoint {
  double gamma = 0.0;            // MHz
  double e_final = 0.0;          // E_kin(t_f), MHz
  double e_normalized_raw = 0.0;  // E_f / E_f(gamma = 0)
  double e_normalized_zp = 0.0;   // same after subtracting E_kin(0) from both
};

/// Constant-gamma runs for every sweep gamma (plus a gamma = 0 reference if
/// missing), run concurrently. Writes sweep.csv and per-gamma timeseries.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& config, const std::filesystem::path& dir);

struct GasRatePoint {
  double omega_p = 0.0;      // MHz
  double density_m3 = 0.0;   // m^-3
  MonteCarloStats stats;
};

/// Monte Carlo gamma and delta_e for every (density, omega_p) pair. Writes rates.csv and rates.svg.
std::vector<GasRatePoint> run_gas_rates(const ScenarioConfig& config, const std::filesystem::path& dir);

enum class Mode { automatic, run, sweep, gas_rates };

/// Dispatches on the scenario (or the forced mode), writes manifest.json and
/// config.resolved.ini next to the outputs, and returns the output directory.
std::filesystem::path run_scenario(const ScenarioConfig& config, Mode mode = Mode::automatic);

}  // namespace zeno::io
