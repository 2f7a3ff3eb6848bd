#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/io/config.hpp"
#include "zeno/io/csv.hpp"
#include "zeno/io/snapshot.hpp"
#include "zeno/io/svg.hpp"

using namespace zeno;
namespace fs = std::filesystem;

namespace {

io::ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_config(in, "test.ini");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "zeno_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("presets") {
  const auto f2 = parse("[scenario]\nname = fig2_slow_decoherence\n");
  CHECK(f2.schedule.gamma == 0.2);
  CHECK(f2.t_final == 20.0);
  CHECK(f2.output.snapshot_times == std::vector<double>{0, 8, 14, 20});
  CHECK(f2.grid.size() == 256);
  const auto f3 = parse("[scenario]\nname = fig3_zeno_sweep\n");
  CHECK(f3.sweep_gammas == std::vector<double>{0, 0.5, 1, 2.2, 5, 10});
  CHECK(f3.t_final == doctest::Approx(19.8));
  const auto f4 = parse("[scenario]\nname = fig4_pulses\n");
  CHECK(f4.schedule.type == io::ScheduleConfig::Type::pulses);
  CHECK(f4.schedule.gamma0 == 4.0);
  CHECK(f4.schedule.centers == std::vector<double>{2, 11});
  const auto gr = parse("[scenario]\nname = gas_rates\n");
  CHECK(gr.gas.omega_c == 30.0);
  CHECK(gr.gas.gamma_p == 6.1);
}

TEST_CASE("cycles convention scales every MHz input") {
  const auto c = parse(
      "[scenario]\nname = fig2_slow_decoherence\nfrequency_convention = cycles\n"
      "[gas]\nomega_p_MHz = 2\n");
  const double s = 2.0 * std::numbers::pi;
  CHECK(c.schedule.gamma == doctest::Approx(0.2 * s));
  CHECK(c.physics.mu2 == doctest::Approx(default_mu2 * s));
  CHECK(c.propagator.w_cap == doctest::Approx(50.0 * s));
  CHECK(c.gas.omega_p == doctest::Approx(2.0 * s));
  CHECK(c.gas.omega_c == doctest::Approx(30.0 * s));
  CHECK(c.physics.kappa == default_kinetic_coefficient());
}

TEST_CASE("config errors name the key") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("[grid]\nbogus = 1\n").find("grid.bogus") != std::string::npos);
  CHECK(message("[nowhere]\n").find("nowhere") != std::string::npos);
  CHECK(message("[grid]\nn = 100\n") != "no error");
  CHECK(message("[grid]\nr_min_um = abc\n").find("grid.r_min_um") != std::string::npos);
  CHECK(message("[packet]\nsurface = up\n").find("packet.surface") != std::string::npos);
  CHECK(message("[packet]\nr0_um = 3\n") != "no error");
  CHECK(message("[propagator]\ndt_us = 0.05\n") != "no error");
  CHECK(message("[gas]\ndensity_per_m3 = 1e17\ndensity_per_um3 = 0.1\n").find("not both") != std::string::npos);
  CHECK(message("[output]\nsnapshot_times_us = 30\n") != "no error");
}

TEST_CASE("resolved config round trips") {
  auto c = parse(
      "[scenario]\nname = fig4_pulses\nfrequency_convention = cycles\n"
      "[gas]\ndensity_per_m3 = 3e17\natoms_um = 1 2 3; 4 5 6\nv_c_MHz = 12\n");
  const std::string ini = io::to_ini(c);
  const auto back = parse(ini);
  CHECK(io::to_ini(back) == ini);
  CHECK(back.schedule.gamma0 == c.schedule.gamma0);
  CHECK(back.gas.density == c.gas.density);
  CHECK(back.gas.atom_positions.size() == 2);
  CHECK(*back.gas.v_c == *c.gas.v_c);
}

TEST_CASE("csv output is deterministic") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  const auto p = scratch("a.csv");
  {
    io::CsvWriter w(p, {"x", "y"});
    w.row({1.0, 2.5});
    w.close();
  }
  CHECK(slurp(p) == "x,y\n1,2.5\n");
  io::CsvWriter w(p, {"x", "y"});
  CHECK_THROWS(w.row({1.0}));
  CHECK(io::timeseries_columns().size() == io::timeseries_row(ObservableRecord{}).size());
}

TEST_CASE("snapshot round trip is bitwise") {
  const SpatialGrid g(2.0, 34.0, 32);
  DimerState s = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  s.at(0, 1, 3, 4) = Complex(std::nextafter(0.1, 1.0), -1e-300);
  s.set_time(3.25);
  s.set_absorbed_norm(1.5e-7);
  const auto p = scratch("s.zdim");
  io::write_snapshot(s, p);
  const DimerState r = io::read_snapshot(p);
  CHECK(r.grid() == g);
  CHECK(r.time() == 3.25);
  CHECK(r.absorbed_norm() == 1.5e-7);
  CHECK(max_abs_difference(r, s) == 0.0);
}

TEST_CASE("snapshot errors") {
  const SpatialGrid g(2.0, 34.0, 16);
  const auto p = scratch("t.zdim");
  io::write_snapshot(DimerState(g), p);
  const std::string bytes = slurp(p);
  auto error_for = [&](const std::string& data) {
    std::ofstream(p, std::ios::binary) << data;
    try {
      io::read_snapshot(p);
    } catch (const io::SnapshotError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string truncated = error_for(bytes.substr(0, 44 + 16 * 16 * 16 + 10));
  CHECK(truncated.find("block rho_12") != std::string::npos);
  const std::string header = error_for(bytes.substr(0, 10));
  CHECK(header.find("grid size") != std::string::npos);
  std::string v = bytes;
  v[4] = 7;
  const std::string version = error_for(v);
  CHECK(version.find("7") != std::string::npos);
  CHECK(version.find("1") != std::string::npos);
  CHECK(error_for("XDIM" + bytes.substr(4)) != "no error");
  CHECK(error_for(bytes + "x") != "no error");
  CHECK_THROWS_AS(io::read_snapshot(scratch("missing.zdim")), io::SnapshotError);
}

TEST_CASE("heatmaps") {
  io::Heatmap m;
  m.rows = m.cols = 4;
  m.values.assign(16, 0.25);
  m.x = {"r (um)", 0, 1};
  m.y = {"r' (um)", 0, 1};
  const std::string svg = io::heatmap_svg(m);
  CHECK(svg.find("degenerate range") != std::string::npos);
  m.values[3] = 1.0;
  CHECK(io::heatmap_svg(m).find("degenerate") == std::string::npos);
  m.values[5] = NAN;
  CHECK_THROWS_AS(io::heatmap_svg(m), std::invalid_argument);
  m.values.resize(3);
  CHECK_THROWS_AS(io::heatmap_svg(m), std::invalid_argument);
}
