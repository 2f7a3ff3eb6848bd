#include "zeno/gas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

struct Summary {
  double mean = 0.0;
  double std = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

// Sum of |L1 - L2|^2 over cell centers of a cube, skipping the inner cube of half the side when `skip_inner`.
double cube_quadrature(const GasConfig& gas, const Vec3& c, double side, int cells, bool skip_inner) {
  const double h = side / cells;
  const double inner = 0.25 * side;
  std::vector<double> planes(static_cast<std::size_t>(cells), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < cells; ++i) {
    double plane = 0.0;
    const double x = -0.5 * side + (i + 0.5) * h;
    for (int j = 0; j < cells; ++j) {
      const double y = -0.5 * side + (j + 0.5) * h;
      for (int k = 0; k < cells; ++k) {
        const double z = -0.5 * side + (k + 0.5) * h;
        if (skip_inner && std::abs(x) < inner && std::abs(y) < inner && std::abs(z) < inner) continue;
        plane += atom_rates(Vec3{c.x + x, c.y + y, c.z + z}, gas).gamma;
      }
    }
    planes[static_cast<std::size_t>(i)] = plane;
  }
  double total = 0.0;
  for (double p : planes) total += p;
  return total * h * h * h;
}

Vec3 midpoint(const GasConfig& gas) {
  const auto& d = gas.dimer_positions;
  return {0.5 * (d[0].x + d[1].x), 0.5 * (d[0].y + d[1].y), 0.5 * (d[0].z + d[1].z)};
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) { return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z); }

double GasConfig::resolved_v_c() const { return v_c ? *v_c : omega_c * omega_c / gamma_p; }

std::vector<std::string> GasConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("gas: ") + what);
  };
  require(std::isfinite(omega_p) && omega_p >= 0.0, "omega_p must be finite and >= 0");
  require(finite_positive(omega_c), "omega_c must be positive");
  require(finite_positive(gamma_p), "gamma_p must be positive");
  require(finite_positive(resolved_v_c()), "v_c must be positive");
  require(finite_positive(c6_rs) && finite_positive(c4_rp), "c6_rs and c4_rp must be positive");
  require(std::isfinite(c6_rr), "c6_rr must be finite");
  require(std::isfinite(density) && density >= 0.0, "density must be finite and >= 0");
  require(std::isfinite(box_side) && box_side >= 0.0, "box side must be finite and >= 0");
  require(distance(dimer_positions[0], dimer_positions[1]) > 0.0, "dimer atoms coincide");
  std::vector<std::string> warnings;
  if (omega_p > omega_c) warnings.push_back("omega_p > omega_c: outside the EIT regime the effective rates are not reliable");
  return warnings;
}

std::array<Vec3, 2> dimer_on_axis(double r) { return {Vec3{-0.5 * r, 0.0, 0.0}, Vec3{0.5 * r, 0.0, 0.0}}; }

double vbar(int n, const Vec3& atom, const GasConfig& gas) {
  if (n != 0 && n != 1) throw std::out_of_range("vbar: dimer index must be 0 or 1");
  const double dp = distance(atom, gas.dimer_positions[n]);
  const double ds = distance(atom, gas.dimer_positions[1 - n]);
  if (dp == 0.0 || ds == 0.0) throw ValidationError("vbar: gas atom coincides with a dimer atom");
  const double dp2 = dp * dp;
  const double ds2 = ds * ds;
  return gas.c4_rp / (dp2 * dp2) + gas.c6_rs / (ds2 * ds2 * ds2);
}

double vbar(int n, std::size_t alpha, const GasConfig& gas) { return vbar(n, gas.atom_positions.at(alpha), gas); }

std::complex<double> jump_amplitude(double v, const GasConfig& gas) {
  // 1/(i + a) = (a - i)/(1 + a^2) with a = V_c/Vbar, written to stay finite at Vbar = 0 and Vbar = inf.
  const double a = gas.resolved_v_c() / v;
  const double re = 1.0 / (a + 1.0 / a);
  const double im = -1.0 / (1.0 + a * a);
  return gas.omega_p / std::sqrt(gas.gamma_p) * std::complex<double>{re, im};
}

double energy_shift(double v, const GasConfig& gas) {
  const double vc = gas.resolved_v_c();
  const double x = v / vc;
  return gas.omega_p * gas.omega_p / (gas.omega_c * gas.omega_c) * vc / (x + 1.0 / x);
}

EffectiveRates atom_rates(const Vec3& atom, const GasConfig& gas) {
  const double v1 = vbar(0, atom, gas);
  const double v2 = vbar(1, atom, gas);
  const auto l1 = jump_amplitude(v1, gas);
  const auto l2 = jump_amplitude(v2, gas);
  EffectiveRates r;
  r.gamma = std::norm(l1 - l2);
  r.e1 = energy_shift(v1, gas);
  r.e2 = energy_shift(v2, gas);
  r.eps12 = std::imag(l1 * std::conj(l2));
  r.delta_e = r.e1 - r.e2 + r.eps12;
  return r;
}

EffectiveRates effective_rates(const GasConfig& gas) {
  EffectiveRates total;
  for (const Vec3& a : gas.atom_positions) {
    const EffectiveRates r = atom_rates(a, gas);
    total.gamma += r.gamma;
    total.e1 += r.e1;
    total.e2 += r.e2;
    total.eps12 += r.eps12;
  }
  total.delta_e = total.e1 - total.e2 + total.eps12;
  return total;
}

CriticalRadii critical_radii(const GasConfig& gas) {
  const double vc = gas.resolved_v_c();
  if (!finite_positive(gas.c4_rp) || !finite_positive(gas.c6_rs) || !(vc > 0.0))
    throw ValidationError("critical_radii: coefficients and V_c must be positive");
  return {std::pow(gas.c6_rs / vc, 1.0 / 6.0), std::pow(gas.c4_rp / vc, 0.25)};
}

double sampling_box_side(const GasConfig& gas) {
  if (gas.box_side > 0.0) return gas.box_side;
  const CriticalRadii rc = critical_radii(gas);
  return 6.0 * std::max(rc.r_cs, rc.r_cp);
}

double expected_gamma(const GasConfig& gas, double side, int cells) {
  if (!(side > 0.0)) throw ValidationError("expected_gamma: empty box");
  return gas.density * cube_quadrature(gas, midpoint(gas), side, cells, false);
}

double truncation_fraction(const GasConfig& gas) {
  const double side = sampling_box_side(gas);
  const Vec3 c = midpoint(gas);
  const double inner = cube_quadrature(gas, c, side, 96, false);
  if (inner == 0.0) return 0.0;
  // 64 cells over twice the side puts cell faces on the inner box boundary.
  const double shell = cube_quadrature(gas, c, 2.0 * side, 64, true);
  return shell / inner;
}

MonteCarloStats monte_carlo_rates(const GasConfig& gas, std::size_t n_realizations) {
  gas.validate();
  if (n_realizations == 0) throw ValidationError("monte_carlo_rates: need at least one realization");
  const double side = sampling_box_side(gas);
  if (!(side > 0.0)) throw ValidationError("monte_carlo_rates: empty box");
  const double trunc = truncation_fraction(gas);
  if (trunc >= 0.01) {
    std::ostringstream msg;
    msg << "monte_carlo_rates: box side " << side << " um truncates " << 100.0 * trunc
        << "% of the expected gamma (limit 1%); increase box_side";
    throw ValidationError(msg.str());
  }

  const Vec3 c = midpoint(gas);
  const double mean_count = gas.density * side * side * side;
  std::vector<double> gammas(n_realizations), shifts(n_realizations), counts(n_realizations);
  const auto n = static_cast<std::ptrdiff_t>(n_realizations);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(stream_seed(gas.seed, static_cast<std::uint64_t>(i)));
    std::uniform_real_distribution<double> u(-0.5 * side, 0.5 * side);
    std::size_t count = 0;
    if (mean_count > 0.0) count = std::poisson_distribution<std::size_t>(mean_count)(rng);
    EffectiveRates sum;
    for (std::size_t a = 0; a < count; ++a) {
      const double x = u(rng), y = u(rng), z = u(rng);
      const EffectiveRates r = atom_rates(Vec3{c.x + x, c.y + y, c.z + z}, gas);
      sum.gamma += r.gamma;
      sum.delta_e += r.delta_e;
    }
    gammas[i] = sum.gamma;
    shifts[i] = sum.delta_e;
    counts[i] = static_cast<double>(count);
  }

  const Summary g = summarize(gammas);
  const Summary d = summarize(shifts);
  MonteCarloStats s;
  s.gamma_mean = g.mean;
  s.gamma_std = g.std;
  s.delta_e_mean = d.mean;
  s.delta_e_std = d.std;
  s.mean_atoms = summarize(counts).mean;
  s.box_side = side;
  s.v_c = gas.resolved_v_c();
  s.realizations = n_realizations;
  return s;
}

}  // namespace zeno
