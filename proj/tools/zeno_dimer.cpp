#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/io/config.hpp"
#include "zeno/io/scenario.hpp"
#include "zeno/io/snapshot.hpp"
#include "zeno/io/svg.hpp"
#include "zeno/observables.hpp"
#include "zeno/oracles.hpp"

namespace {

constexpr int exit_validation = 2;
constexpr int exit_numerical = 3;

void apply_thread_env() {
  const char* v = std::getenv("ZENO_DIMER_THREADS");
  if (!v || !*v) return;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw zeno::ValidationError("ZENO_DIMER_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

int run_config(const std::string& path, const std::string& output, zeno::io::Mode mode) {
  zeno::io::ScenarioConfig config = zeno::io::load_config(path);
  if (!output.empty()) config.output.directory = output;
  for (const auto& w : config.gas.validate()) std::cerr << "warning: " << w << '\n';
  const auto dir = zeno::io::run_scenario(config, mode);
  std::cout << "outputs written to " << dir.string() << '\n';
  return 0;
}

zeno::Surface parse_surface(const std::string& s) {
  if (s == "rep") return zeno::Surface::repulsive;
  if (s == "att") return zeno::Surface::attractive;
  if (s == "pi1") return zeno::Surface::pi1;
  if (s == "pi2") return zeno::Surface::pi2;
  throw zeno::ValidationError("initial state must be rep, att, pi1 or pi2");
}

int run_oracle(double r, double gamma, double delta_e, const std::string& initial, double t_final, int steps,
               double mu2) {
  if (steps < 1) throw zeno::ValidationError("--steps must be >= 1");
  if (!(t_final > 0.0)) throw zeno::ValidationError("--t-final must be positive");
  zeno::PhysicalParams params;
  params.mu2 = mu2;
  params.validate();
  const auto c = zeno::electronic_amplitudes(parse_surface(initial));
  const zeno::oracles::BlochState rho0 = zeno::oracles::bloch_initial(c[0], c[1]);
  std::printf("t_us,rho11,rho22,rho12_re,rho12_im,pop_rep,pop_att\n");
  for (int k = 0; k <= steps; ++k) {
    const double t = t_final * k / steps;
    const auto s = zeno::oracles::bloch_solve(r, gamma, delta_e, rho0, t, params);
    const double coh = s.r12.real() + s.r21.real();
    const double tr = s.r11.real() + s.r22.real();
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, s.r11.real(), s.r22.real(), s.r12.real(),
                s.r12.imag(), 0.5 * (tr + coh), 0.5 * (tr - coh));
  }
  return 0;
}

int run_render(const std::string& snapshot, const std::string& out, const std::string& what) {
  const zeno::DimerState s = zeno::io::read_snapshot(snapshot);
  const std::size_t n = s.n();
  zeno::io::Heatmap m;
  m.rows = n;
  m.cols = n;
  m.values.resize(n * n);
  m.x = {"r' (um)", s.grid().r_min(), s.grid().r_max()};
  m.y = {"r (um)", s.grid().r_min(), s.grid().r_max()};
  int block = -1;
  if (what == "11") block = 0;
  else if (what == "12") block = 1;
  else if (what == "21") block = 2;
  else if (what == "22") block = 3;
  else throw zeno::ValidationError("--block must be 11, 12, 21 or 22");
  for (std::size_t p = 0; p < n * n; ++p) m.values[p] = std::abs(s.block(block)[p]);
  char title[96];
  std::snprintf(title, sizeof title, "|rho_%s(r, r')| at t = %g us", what.c_str(), s.time());
  m.title = title;
  zeno::io::render_heatmap(m, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motional dynamics of a dipole-dipole coupled Rydberg dimer under tunable dephasing"};
  app.set_version_flag("--version", zeno::io::version());
  app.require_subcommand(1);

  std::string config_path, output;
  auto* run = app.add_subcommand("run", "Run the scenario named in a config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Override output.directory");

  auto* sweep = app.add_subcommand("sweep", "Constant-gamma sweep over sweep.gammas_MHz, writes sweep.csv");
  sweep->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", output, "Override output.directory");

  auto* gas = app.add_subcommand("gas-rates", "Monte Carlo dephasing rates of the background gas, writes rates.csv");
  gas->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  gas->add_option("-o,--output", output, "Override output.directory");

  double r = 9.0, gamma = 0.2, delta_e = 0.0, t_final = 20.0, mu2 = zeno::default_mu2;
  int steps = 200;
  std::string initial = "rep";
  auto* oracle = app.add_subcommand("oracle", "Frozen-separation electronic trajectory as CSV on stdout");
  oracle->add_option("--r", r, "Separation (um)");
  oracle->add_option("--gamma", gamma, "Dephasing rate (MHz)");
  oracle->add_option("--delta-e", delta_e, "Level shift (MHz)");
  oracle->add_option("--initial", initial, "rep, att, pi1 or pi2");
  oracle->add_option("--t-final", t_final, "End time (us)");
  oracle->add_option("--steps", steps, "Number of output intervals");
  oracle->add_option("--mu2", mu2, "Dipole strength (MHz um^3)");

  std::string snapshot, svg_out, block = "11";
  auto* render = app.add_subcommand("render", "Heatmap of one block of a snapshot");
  render->add_option("snapshot", snapshot, "Snapshot file")->required();
  render->add_option("out", svg_out, "Output SVG")->required();
  render->add_option("--block", block, "11, 12, 21 or 22");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_thread_env();
    if (*run) return run_config(config_path, output, zeno::io::Mode::automatic);
    if (*sweep) return run_config(config_path, output, zeno::io::Mode::sweep);
    if (*gas) return run_config(config_path, output, zeno::io::Mode::gas_rates);
    if (*oracle) return run_oracle(r, gamma, delta_e, initial, t_final, steps, mu2);
    if (*render) return run_render(snapshot, svg_out, block);
  } catch (const zeno::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const zeno::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << " (last good time " << e.last_good_time() << " us)\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
