#include "zeno/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zeno {

std::vector<double> density(const DimerState& state) {
  const std::size_t n = state.n();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = state.at(0, 0, i, i).real() + state.at(1, 1, i, i).real();
  return out;
}

double kinetic_energy(const DimerState& state, double kappa, const SpectralTransform& transform) {
  const std::size_t n = state.n();
  const auto k = state.grid().wavenumbers();
  ComplexBuffer scratch(n * n);
  double sum = 0.0;
  for (Block b : {Block::b11, Block::b22}) {
    scratch.assign(state.block(b).begin(), state.block(b).end());
    transform.forward(scratch.data());
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t minus_i = (n - i) % n;
      sum += k[i] * k[i] * scratch[i * n + minus_i].real();
    }
  }
  // Discrete Parseval: integral dr |psi|^2 = (dr / N) sum_k |psi~_k|^2.
  return kappa * sum * state.grid().dr() / static_cast<double>(n);
}

double kinetic_energy(const DimerState& state, double kappa) {
  const SpectralTransform transform(state.n(), FftPlanner::estimate);
  return kinetic_energy(state, kappa, transform);
}

double potential_energy(const DimerState& state, std::span<const double> coupling) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i)
    sum += coupling[i] * (state.at(0, 1, i, i) + state.at(1, 0, i, i)).real();
  return sum * state.grid().dr();
}

double potential_energy_eigenbasis(const DimerState& state, std::span<const double> coupling) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i) {
    const double pop = state.at(0, 0, i, i).real() + state.at(1, 1, i, i).real();
    const double coh = (state.at(0, 1, i, i) + state.at(1, 0, i, i)).real();
    const double w_rep = 0.5 * (pop + coh);
    const double w_att = 0.5 * (pop - coh);
    sum += coupling[i] * w_rep - coupling[i] * w_att;
  }
  return sum * state.grid().dr();
}

SurfacePopulations surface_populations(const DimerState& state) {
  double pop = 0.0;
  double coh = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i) {
    pop += state.at(0, 0, i, i).real() + state.at(1, 1, i, i).real();
    coh += (state.at(0, 1, i, i) + state.at(1, 0, i, i)).real();
  }
  const double dr = state.grid().dr();
  return {0.5 * (pop + coh) * dr, 0.5 * (pop - coh) * dr};
}

LocalPurity local_purity(const DimerState& state) {
  const std::size_t n = state.n();
  LocalPurity out;
  out.profile.resize(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r11 = state.at(0, 0, i, i).real();
    const double r22 = state.at(1, 1, i, i).real();
    const Complex cross = state.at(0, 1, i, i) * state.at(1, 0, i, i);
    const double den = r11 * r11 + r22 * r22;
    const double p = den < local_purity_floor ? 0.0 : (r11 * r11 + 2.0 * cross.real() + r22 * r22) / den - 1.0;
    out.profile[i] = p;
    mean += p * (r11 + r22);
  }
  out.mean = mean * state.grid().dr();
  return out;
}

double coherence_norm(const DimerState& state) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i) sum += std::abs(state.at(0, 1, i, i));
  return sum * state.grid().dr();
}

double coherence_frobenius(const DimerState& state) {
  double sum = 0.0;
  for (const Complex& v : state.block(Block::b12)) sum += std::norm(v);
  return std::sqrt(sum) * state.grid().dr();
}

double normalized_final_energy(double e_final, double e_reference_final, double zero_point) {
  const double den = e_reference_final - zero_point;
  const double scale = std::max({std::abs(e_reference_final), std::abs(zero_point), 1e-300});
  if (std::abs(den) < 10.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw std::domain_error("normalized_final_energy: reference energy equals the zero-point subtraction");
  }
  return (e_final - zero_point) / den;
}

ObservableRecord observe(const DimerState& state, double kappa, std::span<const double> coupling, double gamma,
                         const SpectralTransform& transform) {
  ObservableRecord rec;
  rec.t = state.time();
  rec.trace = trace(state);
  rec.kinetic_energy = kinetic_energy(state, kappa, transform);
  rec.potential_energy = potential_energy(state, coupling);
  const auto pops = surface_populations(state);
  rec.pop_rep = pops.repulsive;
  rec.pop_att = pops.attractive;
  rec.local_purity_mean = local_purity(state).mean;
  rec.coherence_norm = coherence_norm(state);
  rec.absorbed_norm = state.absorbed_norm();
  rec.gamma = gamma;
  rec.coherence_frobenius = coherence_frobenius(state);
  rec.purity = purity(state);
  return rec;
}

}  // namespace zeno
