#include "zeno/io/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno::io {
namespace {

namespace pt = boost::property_tree;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

// Keys accepted in each section.
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scenario", {"name", "frequency_convention", "t_final_us"}},
      {"grid", {"r_min_um", "r_max_um", "n"}},
      {"packet", {"r0_um", "sigma_um", "surface"}},
      {"physics", {"mu2_MHz_um3", "kappa_um2_per_us", "w_cap_MHz"}},
      {"propagator",
       {"dt_us", "scheme", "absorber_width_um", "absorber_strength_per_us", "kinetic", "backend", "fft_planner"}},
      {"schedule", {"type", "gamma_MHz", "gamma0_MHz", "centers_us", "tau_us", "delta_e_MHz"}},
      {"output",
       {"directory", "record_every_us", "history_every_us", "snapshot_times_us", "csv", "snapshots", "svg"}},
      {"sweep", {"gammas_MHz"}},
      {"gas",
       {"omega_p_MHz", "omega_c_MHz", "gamma_p_MHz", "v_c_MHz", "c6_rs_MHz_um6", "c4_rp_MHz_um4", "c6_rr_MHz_um6",
        "separation_um", "atoms_um", "density_per_m3", "density_per_um3", "box_side_um", "seed", "omega_p_list_MHz",
        "density_list_per_m3", "realizations"}},
  };
  return s;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ValidationError(source_ + ": " + key + ": " + what);
  }

  const std::string* raw(const std::string& section, const std::string& key) const {
    auto sec = tree_.get_child_optional(section);
    if (!sec) return nullptr;
    auto v = sec->get_child_optional(key);
    if (!v) return nullptr;
    return &v->data();
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    const std::string* s = raw(section, key);
    return s ? parse_number(section + "." + key, *s) : fallback;
  }

  std::vector<double> list(const std::string& section, const std::string& key, std::vector<double> fallback) const {
    const std::string* s = raw(section, key);
    if (!s) return fallback;
    std::vector<std::string> parts;
    boost::split(parts, *s, boost::is_any_of(","));
    std::vector<double> out;
    for (auto& p : parts) {
      boost::trim(p);
      if (!p.empty()) out.push_back(parse_number(section + "." + key, p));
    }
    return out;
  }

  std::string text(const std::string& section, const std::string& key, std::string fallback) const {
    const std::string* s = raw(section, key);
    return s ? boost::trim_copy(*s) : fallback;
  }

  bool flag(const std::string& section, const std::string& key, bool fallback) const {
    const std::string* s = raw(section, key);
    if (!s) return fallback;
    const std::string v = boost::to_lower_copy(boost::trim_copy(*s));
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    fail(section + "." + key, "expected true or false, got '" + *s + "'");
  }

  template <class E>
  E choice(const std::string& section, const std::string& key, E fallback,
           const std::vector<std::pair<std::string, E>>& options) const {
    const std::string* s = raw(section, key);
    if (!s) return fallback;
    const std::string v = boost::trim_copy(*s);
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (v == name) return value;
      allowed += (allowed.empty() ? "" : ", ") + name;
    }
    fail(section + "." + key, "'" + v + "' is not one of " + allowed);
  }

 private:
  double parse_number(const std::string& key, const std::string& s) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail(key, "not a number: '" + s + "'");
    }
    if (!boost::trim_copy(s.substr(used)).empty()) fail(key, "trailing characters in '" + s + "'");
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  const pt::ptree& tree_;
  std::string source_;
};

const std::vector<std::pair<std::string, ScenarioKind>> scenario_names{
    {"fig2_slow_decoherence", ScenarioKind::fig2_slow_decoherence},
    {"fig3_zeno_sweep", ScenarioKind::fig3_zeno_sweep},
    {"fig4_pulses", ScenarioKind::fig4_pulses},
    {"gas_rates", ScenarioKind::gas_rates},
    {"custom", ScenarioKind::custom},
};

const std::vector<std::pair<std::string, Surface>> surface_names{
    {"rep", Surface::repulsive}, {"att", Surface::attractive}, {"pi1", Surface::pi1}, {"pi2", Surface::pi2}};

const std::vector<std::pair<std::string, ScheduleConfig::Type>> schedule_names{
    {"constant", ScheduleConfig::Type::constant},
    {"pulses", ScheduleConfig::Type::pulses},
    {"gas", ScheduleConfig::Type::gas}};

template <class E>
std::string name_of(E value, const std::vector<std::pair<std::string, E>>& options) {
  for (const auto& [name, v] : options)
    if (v == value) return name;
  return "?";
}

std::vector<Vec3> parse_atoms(const Reader& r) {
  const std::string s = r.text("gas", "atoms_um", "");
  std::vector<Vec3> atoms;
  std::vector<std::string> triples;
  boost::split(triples, s, boost::is_any_of(";"));
  for (auto& t : triples) {
    boost::trim(t);
    if (t.empty()) continue;
    std::istringstream is(t);
    Vec3 v;
    std::string extra;
    if (!(is >> v.x >> v.y >> v.z) || (is >> extra)) r.fail("gas.atoms_um", "expected 'x y z; x y z; ...', got '" + t + "'");
    atoms.push_back(v);
  }
  return atoms;
}

}  // namespace

std::string to_string(ScenarioKind kind) { return name_of(kind, scenario_names); }

ScenarioConfig preset(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::fig2_slow_decoherence:
      c.schedule.type = ScheduleConfig::Type::constant;
      c.schedule.gamma = 0.2;
      c.t_final = 20.0;
      c.output.snapshot_times = {0.0, 8.0, 14.0, 20.0};
      break;
    case ScenarioKind::fig3_zeno_sweep:
      c.schedule.type = ScheduleConfig::Type::constant;
      c.sweep_gammas = {0.0, 0.5, 1.0, 2.2, 5.0, 10.0};
      c.t_final = 19.8;
      break;
    case ScenarioKind::fig4_pulses:
      c.schedule.type = ScheduleConfig::Type::pulses;
      c.schedule.gamma0 = 4.0;
      c.schedule.centers = {2.0, 11.0};
      c.schedule.tau = 0.5;
      c.t_final = 24.0;
      c.output.snapshot_times = {0.0, 10.0, 24.0};
      break;
    case ScenarioKind::gas_rates:
      c.gas.omega_c = 30.0;
      c.gas.gamma_p = 6.1;
      break;
    case ScenarioKind::custom:
      break;
  }
  return c;
}

void ScenarioConfig::validate() const {
  physics.validate();
  propagator.validate();
  packet.validate(grid);
  if (!(t_final > 0.0)) throw ValidationError("scenario.t_final_us must be positive");
  const DecoherenceSchedule s = make_schedule();
  if (!(output.record_every > 0.0) || !(output.history_every > 0.0))
    throw ValidationError("output: record and history intervals must be positive");
  step_count(0.0, output.record_every, propagator.dt);
  step_count(0.0, output.history_every, propagator.dt);
  step_count(0.0, t_final, propagator.dt);
  for (double t : output.snapshot_times)
    if (t < 0.0 || t > t_final) throw ValidationError("output.snapshot_times_us: " + fmt(t) + " outside [0, t_final]");
  for (double g : sweep_gammas)
    if (!(g >= 0.0)) throw ValidationError("sweep.gammas_MHz: rates must be >= 0");
  if (scenario == ScenarioKind::fig3_zeno_sweep && sweep_gammas.empty())
    throw ValidationError("sweep.gammas_MHz: empty list");
  if (scenario == ScenarioKind::gas_rates || schedule.type == ScheduleConfig::Type::gas) gas.validate();
  if (scenario == ScenarioKind::gas_rates) {
    if (gas_sweep.omega_p_values.empty() || gas_sweep.densities_m3.empty())
      throw ValidationError("gas: omega_p_list_MHz and density_list_per_m3 must be non-empty");
    if (gas_sweep.realizations == 0) throw ValidationError("gas.realizations must be >= 1");
    for (double d : gas_sweep.densities_m3)
      if (!(d >= 0.0)) throw ValidationError("gas.density_list_per_m3: densities must be >= 0");
    if (!(gas_sweep.separation > 0.0)) throw ValidationError("gas.separation_um must be positive");
  }
  // Stability is checked when the propagator is built; do it here so it fails before compute.
  if (scenario != ScenarioKind::gas_rates) {
    double g_max = s.gamma_max();
    for (double g : sweep_gammas) g_max = std::max(g_max, g);
    const double w_max = std::min(physics.mu2 / std::pow(grid.r_min(), 3), propagator.w_cap);
    const double k_term = propagator.kinetic_enabled ? physics.kappa * grid.k_max() * grid.k_max() : 0.0;
    if (propagator.dt * std::max({w_max, g_max, k_term}) > 0.5)
      throw ValidationError("propagator.dt_us: dt * max(W_max, gamma_max, kappa k_max^2) exceeds 0.5");
  }
}

DecoherenceSchedule ScenarioConfig::make_schedule() const {
  switch (schedule.type) {
    case ScheduleConfig::Type::constant:
      return DecoherenceSchedule::constant(schedule.gamma, schedule.delta_e);
    case ScheduleConfig::Type::pulses:
      return DecoherenceSchedule::pulses(schedule.gamma0, schedule.centers, schedule.tau, schedule.delta_e);
    case ScheduleConfig::Type::gas: {
      const EffectiveRates r = effective_rates(gas);
      return DecoherenceSchedule::constant(r.gamma, r.delta_e);
    }
  }
  throw ValidationError("schedule: unknown type");
}

ScenarioConfig parse_config(std::istream& in, const std::string& source_name) {
  // read_ini drops empty sections, so headers are checked on the raw text first.
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  {
    std::istringstream lines(text);
    std::string line;
    for (int number = 1; std::getline(lines, line); ++number) {
      const std::string t = boost::trim_copy(line);
      if (t.size() >= 2 && t.front() == '[' && t.back() == ']' &&
          !schema().count(boost::trim_copy(t.substr(1, t.size() - 2))))
        throw ValidationError(source_name + ": line " + std::to_string(number) + ": unknown section " + t);
    }
  }
  std::istringstream body_in(text);
  pt::ptree tree;
  try {
    pt::read_ini(body_in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(source_name + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (it == schema().end()) throw ValidationError(source_name + ": unknown section [" + section + "]");
    if (!body.data().empty()) throw ValidationError(source_name + ": key '" + section + "' outside any section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ValidationError(source_name + ": unknown key " + section + "." + key);
  }

  const Reader r(tree, source_name);
  const ScenarioKind kind = r.choice("scenario", "name", ScenarioKind::custom, scenario_names);
  ScenarioConfig c = preset(kind);
  c.frequency_convention = r.choice("scenario", "frequency_convention", FrequencyConvention::angular,
                                    {{"angular", FrequencyConvention::angular}, {"cycles", FrequencyConvention::cycles}});
  const double f = frequency_scale(c.frequency_convention);
  c.t_final = r.number("scenario", "t_final_us", c.t_final);

  const double r_min = r.number("grid", "r_min_um", c.grid.r_min());
  const double r_max = r.number("grid", "r_max_um", c.grid.r_max());
  const double n = r.number("grid", "n", static_cast<double>(c.grid.size()));
  if (n < 0 || n != std::floor(n)) r.fail("grid.n", "must be a non-negative integer");
  c.grid = make_grid(r_min, r_max, static_cast<std::size_t>(n));

  c.packet.r0 = r.number("packet", "r0_um", c.packet.r0);
  c.packet.sigma = r.number("packet", "sigma_um", c.packet.sigma);
  c.packet.surface = r.choice("packet", "surface", c.packet.surface, surface_names);

  c.physics.mu2 = f * r.number("physics", "mu2_MHz_um3", c.physics.mu2);
  c.physics.kappa = r.number("physics", "kappa_um2_per_us", c.physics.kappa);
  c.propagator.w_cap = f * r.number("physics", "w_cap_MHz", c.propagator.w_cap);

  c.propagator.dt = r.number("propagator", "dt_us", c.propagator.dt);
  c.propagator.scheme = r.choice("propagator", "scheme", c.propagator.scheme,
                                 {{"strang", Scheme::strang}, {"rk4", Scheme::rk4}});
  c.propagator.absorber_width = r.number("propagator", "absorber_width_um", c.propagator.absorber_width);
  c.propagator.absorber_strength =
      r.number("propagator", "absorber_strength_per_us", c.propagator.absorber_strength);
  c.propagator.kinetic_enabled = r.flag("propagator", "kinetic", c.propagator.kinetic_enabled);
  c.propagator.backend = r.choice("propagator", "backend", c.propagator.backend,
                                  {{"parallel", Backend::parallel}, {"serial", Backend::serial}});
  c.propagator.planner = r.choice("propagator", "fft_planner", c.propagator.planner,
                                  {{"measure", FftPlanner::measure}, {"estimate", FftPlanner::estimate}});

  c.schedule.type = r.choice("schedule", "type", c.schedule.type, schedule_names);
  c.schedule.gamma = f * r.number("schedule", "gamma_MHz", c.schedule.gamma);
  c.schedule.gamma0 = f * r.number("schedule", "gamma0_MHz", c.schedule.gamma0);
  c.schedule.centers = r.list("schedule", "centers_us", c.schedule.centers);
  c.schedule.tau = r.number("schedule", "tau_us", c.schedule.tau);
  c.schedule.delta_e = f * r.number("schedule", "delta_e_MHz", c.schedule.delta_e);

  c.output.directory = r.text("output", "directory", c.output.directory.string());
  c.output.record_every = r.number("output", "record_every_us", c.output.record_every);
  c.output.history_every = r.number("output", "history_every_us", c.output.history_every);
  c.output.snapshot_times = r.list("output", "snapshot_times_us", c.output.snapshot_times);
  c.output.csv = r.flag("output", "csv", c.output.csv);
  c.output.snapshots = r.flag("output", "snapshots", c.output.snapshots);
  c.output.svg = r.flag("output", "svg", c.output.svg);

  std::vector<double> gammas = r.list("sweep", "gammas_MHz", c.sweep_gammas);
  for (double& g : gammas) g *= f;
  c.sweep_gammas = gammas;

  GasConfig& g = c.gas;
  g.omega_p = f * r.number("gas", "omega_p_MHz", g.omega_p);
  g.omega_c = f * r.number("gas", "omega_c_MHz", g.omega_c);
  g.gamma_p = f * r.number("gas", "gamma_p_MHz", g.gamma_p);
  if (r.raw("gas", "v_c_MHz")) g.v_c = f * r.number("gas", "v_c_MHz", 0.0);
  g.c6_rs = f * r.number("gas", "c6_rs_MHz_um6", g.c6_rs);
  g.c4_rp = f * r.number("gas", "c4_rp_MHz_um4", g.c4_rp);
  g.c6_rr = f * r.number("gas", "c6_rr_MHz_um6", g.c6_rr);
  c.gas_sweep.separation = r.number("gas", "separation_um", c.gas_sweep.separation);
  g.dimer_positions = dimer_on_axis(c.gas_sweep.separation);
  g.atom_positions = parse_atoms(r);
  if (r.raw("gas", "density_per_m3") && r.raw("gas", "density_per_um3"))
    r.fail("gas.density_per_m3", "give either density_per_m3 or density_per_um3, not both");
  if (r.raw("gas", "density_per_m3")) g.density = per_m3_to_per_um3(r.number("gas", "density_per_m3", 0.0));
  g.density = r.number("gas", "density_per_um3", g.density);
  g.box_side = r.number("gas", "box_side_um", g.box_side);
  const double seed = r.number("gas", "seed", static_cast<double>(g.seed));
  if (seed < 0 || seed != std::floor(seed) || seed > 9007199254740992.0) r.fail("gas.seed", "must be an integer in [0, 2^53]");
  g.seed = static_cast<std::uint64_t>(seed);
  std::vector<double> omegas = r.list("gas", "omega_p_list_MHz", c.gas_sweep.omega_p_values);
  for (double& o : omegas) o *= f;
  c.gas_sweep.omega_p_values = omegas;
  c.gas_sweep.densities_m3 = r.list("gas", "density_list_per_m3", c.gas_sweep.densities_m3);
  const double reals = r.number("gas", "realizations", static_cast<double>(c.gas_sweep.realizations));
  if (reals < 1 || reals != std::floor(reals)) r.fail("gas.realizations", "must be a positive integer");
  c.gas_sweep.realizations = static_cast<std::size_t>(reals);

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

std::string to_ini(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "[scenario]\nname = " << to_string(c.scenario) << "\nfrequency_convention = angular\n"
    << "t_final_us = " << fmt(c.t_final) << "\n\n";
  o << "[grid]\nr_min_um = " << fmt(c.grid.r_min()) << "\nr_max_um = " << fmt(c.grid.r_max())
    << "\nn = " << c.grid.size() << "\n\n";
  o << "[packet]\nr0_um = " << fmt(c.packet.r0) << "\nsigma_um = " << fmt(c.packet.sigma)
    << "\nsurface = " << name_of(c.packet.surface, surface_names) << "\n\n";
  o << "[physics]\nmu2_MHz_um3 = " << fmt(c.physics.mu2) << "\nkappa_um2_per_us = " << fmt(c.physics.kappa)
    << "\nw_cap_MHz = " << fmt(c.propagator.w_cap) << "\n\n";
  o << "[propagator]\ndt_us = " << fmt(c.propagator.dt)
    << "\nscheme = " << (c.propagator.scheme == Scheme::strang ? "strang" : "rk4")
    << "\nabsorber_width_um = " << fmt(c.propagator.absorber_width)
    << "\nabsorber_strength_per_us = " << fmt(c.propagator.absorber_strength)
    << "\nkinetic = " << (c.propagator.kinetic_enabled ? "true" : "false")
    << "\nbackend = " << (c.propagator.backend == Backend::parallel ? "parallel" : "serial")
    << "\nfft_planner = " << (c.propagator.planner == FftPlanner::measure ? "measure" : "estimate") << "\n\n";
  o << "[schedule]\ntype = " << name_of(c.schedule.type, schedule_names) << "\ngamma_MHz = " << fmt(c.schedule.gamma)
    << "\ngamma0_MHz = " << fmt(c.schedule.gamma0) << "\ncenters_us = " << fmt_list(c.schedule.centers)
    << "\ntau_us = " << fmt(c.schedule.tau) << "\ndelta_e_MHz = " << fmt(c.schedule.delta_e) << "\n\n";
  o << "[output]\ndirectory = " << c.output.directory.string() << "\nrecord_every_us = " << fmt(c.output.record_every)
    << "\nhistory_every_us = " << fmt(c.output.history_every)
    << "\nsnapshot_times_us = " << fmt_list(c.output.snapshot_times) << "\ncsv = " << (c.output.csv ? "true" : "false")
    << "\nsnapshots = " << (c.output.snapshots ? "true" : "false") << "\nsvg = " << (c.output.svg ? "true" : "false")
    << "\n\n";
  o << "[sweep]\ngammas_MHz = " << fmt_list(c.sweep_gammas) << "\n\n";
  const GasConfig& g = c.gas;
  o << "[gas]\nomega_p_MHz = " << fmt(g.omega_p) << "\nomega_c_MHz = " << fmt(g.omega_c)
    << "\ngamma_p_MHz = " << fmt(g.gamma_p) << "\nv_c_MHz = " << fmt(g.resolved_v_c())
    << "\nc6_rs_MHz_um6 = " << fmt(g.c6_rs) << "\nc4_rp_MHz_um4 = " << fmt(g.c4_rp)
    << "\nc6_rr_MHz_um6 = " << fmt(g.c6_rr) << "\nseparation_um = " << fmt(c.gas_sweep.separation);
  if (!g.atom_positions.empty()) {
    o << "\natoms_um = ";
    for (std::size_t i = 0; i < g.atom_positions.size(); ++i) {
      const Vec3& a = g.atom_positions[i];
      o << (i ? "; " : "") << fmt(a.x) << ' ' << fmt(a.y) << ' ' << fmt(a.z);
    }
  }
  o << "\ndensity_per_um3 = " << fmt(g.density) << "\nbox_side_um = " << fmt(g.box_side)
    << "\nseed = " << g.seed << "\nomega_p_list_MHz = " << fmt_list(c.gas_sweep.omega_p_values)
    << "\ndensity_list_per_m3 = " << fmt_list(c.gas_sweep.densities_m3)
    << "\nrealizations = " << c.gas_sweep.realizations << "\n";
  return o.str();
}

}  // namespace zeno::io
