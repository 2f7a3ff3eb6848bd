#include "zeno/io/scenario.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/io/csv.hpp"
#include "zeno/io/snapshot.hpp"
#include "zeno/io/svg.hpp"
#include "zeno/propagator.hpp"

#ifndef ZENO_VERSION
#define ZENO_VERSION "unknown"
#endif

namespace zeno::io {
namespace fs = std::filesystem;

namespace {

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Heatmap block_magnitude(const DimerState& s, Block b, const std::string& title) {
  const std::size_t n = s.n();
  Heatmap m;
  m.rows = n;
  m.cols = n;
  m.values.resize(n * n);
  const auto& blk = s.block(b);
  for (std::size_t p = 0; p < n * n; ++p) m.values[p] = std::abs(blk[p]);
  m.x = {"r' (um)", s.grid().r_min(), s.grid().r_max()};
  m.y = {"r (um)", s.grid().r_min(), s.grid().r_max()};
  m.title = title;
  return m;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

Propagator make_propagator(const ScenarioConfig& c, double gamma_max) {
  return Propagator(c.grid, c.physics, c.propagator, gamma_max);
}

nlohmann::json ini_to_json(const std::string& ini) {
  namespace pt = boost::property_tree;
  std::istringstream in(ini);
  pt::ptree tree;
  pt::read_ini(in, tree);
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [section, body] : tree)
    for (const auto& [key, value] : body) j[section][key] = value.data();
  return j;
}

}  // namespace

const char* version() { return ZENO_VERSION; }

RunOutcome run_single(const ScenarioConfig& c, const fs::path& dir) {
  ensure_dir(dir);
  const DecoherenceSchedule schedule = c.make_schedule();
  const Propagator prop = make_propagator(c, schedule.gamma_max());
  const double dt = c.propagator.dt;
  const std::size_t record_stride = step_count(0.0, c.output.record_every, dt);
  const std::size_t history_stride = step_count(0.0, c.output.history_every, dt);

  std::vector<fs::path> files;
  std::vector<double> snapshot_t;
  std::vector<std::vector<double>> snapshot_n;
  std::vector<double> history_t;
  std::vector<std::vector<double>> history_n;

  std::vector<Observer> observers;
  observers.push_back({0, c.output.snapshot_times, [&](const DimerState& s, double) {
                         const std::string t = tag(s.time());
                         snapshot_t.push_back(s.time());
                         snapshot_n.push_back(density(s));
                         if (c.output.snapshots) {
                           files.push_back(dir / ("snapshot_t" + t + ".zdim"));
                           write_snapshot(s, files.back());
                         }
                         if (c.output.svg) {
                           files.push_back(dir / ("rho11_t" + t + ".svg"));
                           render_heatmap(block_magnitude(s, Block::b11, "|rho_11(r, r')| at t = " + t + " us"),
                                          files.back());
                           files.push_back(dir / ("rho12_t" + t + ".svg"));
                           render_heatmap(block_magnitude(s, Block::b12, "|rho_12(r, r')| at t = " + t + " us"),
                                          files.back());
                         }
                       }});
  observers.push_back({history_stride, {}, [&](const DimerState& s, double) {
                         history_t.push_back(s.time());
                         history_n.push_back(density(s));
                       }});

  DimerState initial = build_initial_state(c.grid, c.packet);
  PropagationResult result = propagate(std::move(initial), prop, schedule, c.t_final, record_stride, observers);

  if (c.output.csv) {
    files.push_back(dir / "timeseries.csv");
    write_timeseries(files.back(), result.records);
  }
  const auto r = c.grid.positions();
  if (!snapshot_t.empty()) {
    std::vector<std::string> cols{"r_um"};
    for (double t : snapshot_t) cols.push_back("n_t" + tag(t));
    if (c.output.csv) {
      files.push_back(dir / "density_profiles.csv");
      CsvWriter w(files.back(), cols);
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<double> row{r[i]};
        for (const auto& n : snapshot_n) row.push_back(n[i]);
        w.row(row);
      }
      w.close();
    }
    if (c.output.svg) {
      std::vector<Series> series;
      for (std::size_t k = 0; k < snapshot_t.size(); ++k) series.push_back({"t = " + tag(snapshot_t[k]) + " us", snapshot_n[k]});
      files.push_back(dir / "density_overlay.svg");
      render_lines(r, series, {"r (um)", c.grid.r_min(), c.grid.r_max()}, "n(r) (1/um)", "Density at snapshot times",
                   files.back());
    }
  }
  if (c.output.svg && !history_t.empty()) {
    Heatmap h;
    h.rows = r.size();
    h.cols = history_t.size();
    h.values.resize(h.rows * h.cols);
    for (std::size_t j = 0; j < h.cols; ++j)
      for (std::size_t i = 0; i < h.rows; ++i) h.values[i * h.cols + j] = history_n[j][i];
    h.x = {"t (us)", history_t.front(), history_t.back()};
    h.y = {"r (um)", c.grid.r_min(), c.grid.r_max()};
    h.title = "n(r, t)";
    files.push_back(dir / "density_history.svg");
    render_heatmap(h, files.back());
  }
  return {std::move(result.records), std::move(result.state), std::move(files)};
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& c, const fs::path& dir) {
  ensure_dir(dir);
  std::vector<double> gammas = c.sweep_gammas;
  if (gammas.empty()) throw ValidationError("sweep: no gamma values configured");
  const bool has_reference = std::find(gammas.begin(), gammas.end(), 0.0) != gammas.end();
  if (!has_reference) gammas.push_back(0.0);

  const double dt = c.propagator.dt;
  const std::size_t record_stride = step_count(0.0, c.output.record_every, dt);
  const DimerState initial = build_initial_state(c.grid, c.packet);
  std::vector<double> e_final(gammas.size()), e_zero(gammas.size());
  std::vector<std::exception_ptr> errors(gammas.size());

  const auto count = static_cast<std::ptrdiff_t>(gammas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      const double g = gammas[k];
      const DecoherenceSchedule schedule = DecoherenceSchedule::constant(g, c.schedule.delta_e);
      const Propagator prop = make_propagator(c, g);
      const PropagationResult res = propagate(initial, prop, schedule, c.t_final, record_stride);
      e_zero[k] = res.records.front().kinetic_energy;
      e_final[k] = res.records.back().kinetic_energy;
      if (c.output.csv) {
        const fs::path sub = dir / ("gamma_" + tag(g));
        ensure_dir(sub);
        write_timeseries(sub / "timeseries.csv", res.records);
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  const std::size_t ref = static_cast<std::size_t>(std::find(gammas.begin(), gammas.end(), 0.0) - gammas.begin());
  std::vector<SweepPoint> points;
  for (std::size_t k = 0; k < c.sweep_gammas.size(); ++k)
    points.push_back({gammas[k], e_final[k], normalized_final_energy(e_final[k], e_final[ref]),
                      normalized_final_energy(e_final[k], e_final[ref], e_zero[ref])});
  CsvWriter w(dir / "sweep.csv", {"gamma", "E_f", "E_f_normalized_raw", "E_f_normalized_zp"});
  for (const auto& p : points) w.row({p.gamma, p.e_final, p.e_normalized_raw, p.e_normalized_zp});
  w.close();
  return points;
}

std::vector<GasRatePoint> run_gas_rates(const ScenarioConfig& c, const fs::path& dir) {
  ensure_dir(dir);
  std::vector<GasRatePoint> points;
  for (double density : c.gas_sweep.densities_m3) {
    for (double omega_p : c.gas_sweep.omega_p_values) {
      GasConfig g = c.gas;
      g.omega_p = omega_p;
      g.density = per_m3_to_per_um3(density);
      g.dimer_positions = dimer_on_axis(c.gas_sweep.separation);
      points.push_back({omega_p, density, monte_carlo_rates(g, c.gas_sweep.realizations)});
    }
  }
  CsvWriter w(dir / "rates.csv", {"omega_p", "density", "gamma_mean", "gamma_std", "deltaE_mean", "deltaE_std", "v_c"});
  for (const auto& p : points)
    w.row({p.omega_p, p.density_m3, p.stats.gamma_mean, p.stats.gamma_std, p.stats.delta_e_mean, p.stats.delta_e_std,
           p.stats.v_c});
  w.close();

  const auto& omegas = c.gas_sweep.omega_p_values;
  std::vector<Series> series;
  for (std::size_t d = 0; d < c.gas_sweep.densities_m3.size(); ++d) {
    Series s{"density " + tag(c.gas_sweep.densities_m3[d]) + " m^-3", {}};
    for (std::size_t o = 0; o < omegas.size(); ++o) s.y.push_back(points[d * omegas.size() + o].stats.gamma_mean);
    series.push_back(std::move(s));
  }
  const auto [lo, hi] = std::minmax_element(omegas.begin(), omegas.end());
  if (c.output.svg && omegas.size() > 1)
    render_lines(omegas, series, {"Omega_p (MHz)", *lo, *hi}, "mean gamma (MHz)", "Monte Carlo dephasing rate",
                 dir / "rates.svg");
  return points;
}

fs::path run_scenario(const ScenarioConfig& c, Mode mode) {
  c.validate();
  const fs::path dir = c.output.directory;
  ensure_dir(dir);
  if (mode == Mode::automatic) {
    switch (c.scenario) {
      case ScenarioKind::fig3_zeno_sweep: mode = Mode::sweep; break;
      case ScenarioKind::gas_rates: mode = Mode::gas_rates; break;
      default: mode = Mode::run;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  nlohmann::json results = nlohmann::json::object();
  if (mode == Mode::run) {
    const RunOutcome out = run_single(c, dir);
    const ObservableRecord& last = out.records.back();
    results["final"] = {{"t_us", last.t},           {"trace", last.trace},      {"absorbed_norm", last.absorbed_norm},
                        {"E_kin_MHz", last.kinetic_energy}, {"pop_att", last.pop_att}, {"P_loc_mean", last.local_purity_mean}};
  } else if (mode == Mode::sweep) {
    for (const auto& p : run_sweep(c, dir)) results["sweep"].push_back({{"gamma_MHz", p.gamma}, {"E_f_MHz", p.e_final}});
  } else {
    const auto pts = run_gas_rates(c, dir);
    results["points"] = pts.size();
    if (!pts.empty()) {
      results["v_c_MHz"] = pts.front().stats.v_c;
      results["box_side_um"] = pts.front().stats.box_side;
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string ini = to_ini(c);
  {
    std::ofstream out(dir / "config.resolved.ini");
    out << ini;
  }
  nlohmann::json m;
  m["program"] = "zeno-dimer";
  m["version"] = version();
  m["scenario"] = to_string(c.scenario);
  m["mode"] = mode == Mode::run ? "run" : mode == Mode::sweep ? "sweep" : "gas-rates";
  m["input_frequency_convention"] = c.frequency_convention == FrequencyConvention::angular ? "angular" : "cycles";
  m["internal_units"] = "lengths um, times us, rates and energies in 1/us (MHz read as angular frequency), hbar = 1";
  m["resolved_config"] = ini_to_json(ini);
  m["timeseries_csv_version"] = timeseries_csv_version;
  m["threads"] = omp_get_max_threads();
  m["wall_time_s"] = wall;
  m["results"] = results;
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + (dir / "manifest.json").string());
  return dir;
}

}  // namespace zeno::io
