#include "zeno/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/kernels.hpp"

namespace zeno {
namespace {

struct KernelTable {
  void (*local_flow)(DimerState&, std::span<const double>, double, double);
  void (*build_local_propagators)(std::span<LocalMatrix>, std::span<const double>, double, double, double);
  void (*apply_local_propagators)(DimerState&, std::span<const LocalMatrix>);
  void (*apply_mask)(DimerState&, std::span<const double>);
  void (*multiply_separable)(Complex*, std::size_t, std::span<const Complex>, double);
  void (*multiply_kinetic_generator)(Complex*, std::size_t, std::span<const double>, Complex);
  void (*add_local_derivative)(const DimerState&, DimerState&, std::span<const double>, double, double);
  void (*axpy)(const DimerState&, double, const DimerState&, DimerState&);
};

constexpr KernelTable parallel_table{
    kernels::parallel::local_flow,         kernels::parallel::build_local_propagators,
    kernels::parallel::apply_local_propagators, kernels::parallel::apply_mask,
    kernels::parallel::multiply_separable, kernels::parallel::multiply_kinetic_generator,
    kernels::parallel::add_local_derivative, kernels::parallel::axpy,
};

constexpr KernelTable serial_table{
    kernels::serial::local_flow,         kernels::serial::build_local_propagators,
    kernels::serial::apply_local_propagators, kernels::serial::apply_mask,
    kernels::serial::multiply_separable, kernels::serial::multiply_kinetic_generator,
    kernels::serial::add_local_derivative, kernels::serial::axpy,
};

const KernelTable& table(Backend b) { return b == Backend::serial ? serial_table : parallel_table; }

std::vector<double> make_mask(const SpatialGrid& grid, double width, double strength, double dt) {
  std::vector<double> mask(grid.size(), 1.0);
  if (width <= 0.0 || strength <= 0.0) return mask;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    // Depth into the nearer ramp, 0 at its inner edge and 1 at the grid edge.
    const double lo = (grid.r_min() + width - r) / width;
    const double hi = (r - (grid.r_max() - width)) / width;
    const double u = std::clamp(std::max(lo, hi), 0.0, 1.0);
    const double s = std::sin(0.5 * std::numbers::pi * u);
    mask[i] = std::exp(-strength * s * s * dt);
  }
  return mask;
}

std::vector<Complex> kinetic_phase(std::span<const double> k2, double kappa, double tau) {
  std::vector<Complex> f(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) f[i] = std::polar(1.0, -kappa * k2[i] * tau);
  return f;
}

}  // namespace

void PropagatorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive and finite");
  if (!(w_cap > 0.0) || !std::isfinite(w_cap)) throw ValidationError("w_cap must be positive and finite");
  if (!(absorber_width >= 0.0) || !std::isfinite(absorber_width))
    throw ValidationError("absorber width must be non-negative");
  if (!(absorber_strength >= 0.0) || !std::isfinite(absorber_strength))
    throw ValidationError("absorber strength must be non-negative");
}

Propagator::Propagator(SpatialGrid grid, PhysicalParams params, PropagatorConfig config, double gamma_max)
    : grid_(std::move(grid)),
      params_(params),
      config_(config),
      transform_(grid_.size(), config.planner,
                 config.backend == Backend::serial ? TransformLayout::row_column : TransformLayout::two_dimensional) {
  params_.validate();
  config_.validate();
  if (!(gamma_max >= 0.0) || !std::isfinite(gamma_max)) throw ValidationError("gamma_max must be non-negative");
  if (2.0 * config_.absorber_width >= grid_.length())
    throw ValidationError("absorber ramps cover the whole grid");

  coupling_ = coupling_profile(grid_, params_, config_.w_cap);
  const double w_max = *std::max_element(coupling_.begin(), coupling_.end());
  const double kinetic_max = config_.kinetic_enabled ? params_.kappa * grid_.k_max() * grid_.k_max() : 0.0;
  const double rate = std::max({w_max, gamma_max, kinetic_max});
  if (config_.dt * rate > 0.5) {
    std::ostringstream msg;
    msg << "dt = " << config_.dt << " us too large: dt * max(W_max = " << w_max << ", gamma_max = " << gamma_max
        << ", kappa k_max^2 = " << kinetic_max << ") = " << config_.dt * rate << " > 0.5";
    throw ValidationError(msg.str());
  }

  mask_ = make_mask(grid_, config_.absorber_width, config_.absorber_strength, config_.dt);
  k2_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) k2_[i] = grid_.wavenumbers()[i] * grid_.wavenumbers()[i];
  half_phase_ = kinetic_phase(k2_, params_.kappa, 0.5 * config_.dt);
  full_phase_ = kinetic_phase(k2_, params_.kappa, config_.dt);
}

void Propagator::kinetic_flow(DimerState& state, double tau) const {
  if (!config_.kinetic_enabled) return;
  const std::size_t n = grid_.size();
  const double scale = 1.0 / static_cast<double>(n * n);
  std::vector<Complex> local;
  std::span<const Complex> phase;
  if (tau == config_.dt) {
    phase = full_phase_;
  } else if (tau == 0.5 * config_.dt) {
    phase = half_phase_;
  } else {
    local = kinetic_phase(k2_, params_.kappa, tau);
    phase = local;
  }
  const KernelTable& k = table(config_.backend);
  for (int b = 0; b < 4; ++b) {
    Complex* data = state.block(b).data();
    transform_.forward(data);
    k.multiply_separable(data, n, phase, scale);
    transform_.backward(data);
  }
}

void Propagator::local_flow(DimerState& state, double gamma, double delta_e) const {
  const KernelTable& k = table(config_.backend);
  if (delta_e == 0.0) {
    if (config_.backend == Backend::serial) {
      k.local_flow(state, coupling_, gamma, config_.dt);
      return;
    }
    if (cached_flow_gamma_ == gamma) {
      kernels::parallel::apply_flow_coefficients(state, cached_flow_);
    } else if (last_gamma_ == gamma) {
      cached_flow_.resize(grid_.size() * grid_.size());
      kernels::parallel::build_flow_coefficients(cached_flow_, coupling_, gamma, config_.dt);
      cached_flow_gamma_ = gamma;
      kernels::parallel::apply_flow_coefficients(state, cached_flow_);
    } else {
      k.local_flow(state, coupling_, gamma, config_.dt);
    }
    last_gamma_ = gamma;
    return;
  }
  const std::pair<double, double> key{gamma, delta_e};
  if (!cached_key_ || *cached_key_ != key) {
    cached_matrices_.resize(grid_.size() * grid_.size());
    k.build_local_propagators(cached_matrices_, coupling_, gamma, delta_e, config_.dt);
    cached_key_ = key;
  }
  k.apply_local_propagators(state, cached_matrices_);
}

void Propagator::absorb(DimerState& state) const {
  if (config_.absorber_width <= 0.0 || config_.absorber_strength <= 0.0) return;
  const double before = trace(state);
  table(config_.backend).apply_mask(state, mask_);
  state.add_absorbed_norm(before - trace(state));
}

void Propagator::add_kinetic_derivative(const DimerState& in, DimerState& out) const {
  if (!config_.kinetic_enabled) return;
  const std::size_t n = grid_.size();
  const Complex coeff{0.0, -params_.kappa / static_cast<double>(n * n)};
  const KernelTable& k = table(config_.backend);
  ComplexBuffer work(n * n);
  for (int b = 0; b < 4; ++b) {
    std::copy(in.block(b).begin(), in.block(b).end(), work.begin());
    transform_.forward(work.data());
    k.multiply_kinetic_generator(work.data(), n, k2_, coeff);
    transform_.backward(work.data());
    ComplexBuffer& o = out.block(b);
    for (std::size_t p = 0; p < n * n; ++p) o[p] += work[p];
  }
}

DimerState Propagator::rhs(const DimerState& state, double gamma, double delta_e) const {
  DimerState out(grid_);
  out.set_time(state.time());
  add_kinetic_derivative(state, out);
  table(config_.backend).add_local_derivative(state, out, coupling_, gamma, delta_e);
  return out;
}

void Propagator::step_strang(DimerState& state, double gamma, double delta_e) const {
  kinetic_flow(state, 0.5 * config_.dt);
  local_flow(state, gamma, delta_e);
  absorb(state);
  kinetic_flow(state, 0.5 * config_.dt);
  state.set_time(state.time() + config_.dt);
}

void Propagator::step_rk4(DimerState& state, double gamma, double delta_e) const {
  const double dt = config_.dt;
  const KernelTable& k = table(config_.backend);
  DimerState tmp(grid_);
  const DimerState k1 = rhs(state, gamma, delta_e);
  k.axpy(state, 0.5 * dt, k1, tmp);
  const DimerState k2 = rhs(tmp, gamma, delta_e);
  k.axpy(state, 0.5 * dt, k2, tmp);
  const DimerState k3 = rhs(tmp, gamma, delta_e);
  k.axpy(state, dt, k3, tmp);
  const DimerState k4 = rhs(tmp, gamma, delta_e);
  for (int b = 0; b < 4; ++b) {
    ComplexBuffer& y = state.block(b);
    for (std::size_t p = 0; p < y.size(); ++p)
      y[p] += dt / 6.0 * (k1.block(b)[p] + 2.0 * k2.block(b)[p] + 2.0 * k3.block(b)[p] + k4.block(b)[p]);
  }
  absorb(state);
  state.set_time(state.time() + dt);
}

void Propagator::check_finite(const DimerState& state, double last_good_time) const {
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = state.at(0, 0, i, i);
    const Complex b = state.at(1, 1, i, i);
    if (!std::isfinite(a.real() + a.imag() + b.real() + b.imag()))
      throw NumericalError("non-finite density matrix after t = " + std::to_string(last_good_time) + " us",
                           last_good_time);
  }
}

void Propagator::advance(DimerState& state, const DecoherenceSchedule& schedule, std::size_t steps) const {
  if (steps == 0) return;
  const double dt = config_.dt;
  const double t0 = state.time();
  const double delta_e = schedule.delta_e();

  if (config_.scheme == Scheme::rk4) {
    const KernelTable& k = table(config_.backend);
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = t0 + static_cast<double>(s) * dt;
      const double g0 = schedule.gamma_at(t);
      const double gm = schedule.gamma_at(t + 0.5 * dt);
      const double g1 = schedule.gamma_at(t + dt);
      DimerState tmp(grid_);
      const DimerState k1 = rhs(state, g0, delta_e);
      k.axpy(state, 0.5 * dt, k1, tmp);
      const DimerState k2 = rhs(tmp, gm, delta_e);
      k.axpy(state, 0.5 * dt, k2, tmp);
      const DimerState k3 = rhs(tmp, gm, delta_e);
      k.axpy(state, dt, k3, tmp);
      const DimerState k4 = rhs(tmp, g1, delta_e);
      for (int b = 0; b < 4; ++b) {
        ComplexBuffer& y = state.block(b);
        for (std::size_t p = 0; p < y.size(); ++p)
          y[p] += dt / 6.0 * (k1.block(b)[p] + 2.0 * k2.block(b)[p] + 2.0 * k3.block(b)[p] + k4.block(b)[p]);
      }
      absorb(state);
      state.set_time(t0 + static_cast<double>(s + 1) * dt);
      check_finite(state, t);
    }
    return;
  }

  // Strang with adjacent half kinetic steps merged into full ones.
  kinetic_flow(state, 0.5 * dt);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * dt;
    local_flow(state, schedule.gamma_at(t + 0.5 * dt), delta_e);
    absorb(state);
    check_finite(state, t);
    kinetic_flow(state, s + 1 == steps ? 0.5 * dt : dt);
  }
  state.set_time(t0 + static_cast<double>(steps) * dt);
  if (!all_finite(state)) throw NumericalError("non-finite density matrix after kinetic step", state.time() - dt);
}

std::size_t step_count(double t0, double t_final, double dt) {
  if (!(t_final >= t0)) throw ValidationError("t_final must not precede the initial time");
  const double exact = (t_final - t0) / dt;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-6 * std::max(1.0, exact)) {
    std::ostringstream msg;
    msg << "t_final - t0 = " << t_final - t0 << " us is not a whole number of steps of dt = " << dt << " us";
    throw ValidationError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

PropagationResult propagate(DimerState initial, const Propagator& propagator, const DecoherenceSchedule& schedule,
                            double t_final, std::size_t record_stride, std::span<const Observer> observers) {
  if (!(initial.grid() == propagator.grid())) throw ValidationError("state and propagator grids differ");
  const double dt = propagator.config().dt;
  const double t0 = initial.time();
  const std::size_t total = step_count(t0, t_final, dt);

  // step index -> (record?, observers to call)
  std::map<std::size_t, std::pair<bool, std::vector<std::size_t>>> stops;
  stops[0].first = true;
  stops[total].first = true;
  if (record_stride > 0)
    for (std::size_t s = record_stride; s < total; s += record_stride) stops[s].first = true;
  for (std::size_t o = 0; o < observers.size(); ++o) {
    const Observer& obs = observers[o];
    if (obs.stride > 0)
      for (std::size_t s = 0; s <= total; s += obs.stride) stops[s].second.push_back(o);
    for (double t : obs.times) {
      const double idx = std::round((t - t0) / dt);
      if (idx < 0.0 || idx > static_cast<double>(total))
        throw ValidationError("observer time " + std::to_string(t) + " us outside the run");
      stops[static_cast<std::size_t>(idx)].second.push_back(o);
    }
  }

  PropagationResult result{std::move(initial), {}};
  DimerState& state = result.state;
  std::size_t done = 0;
  for (auto& [step, what] : stops) {
    propagator.advance(state, schedule, step - done);
    done = step;
    state.set_time(t0 + static_cast<double>(step) * dt);
    const double gamma = schedule.gamma_at(state.time());
    if (what.first)
      result.records.push_back(
          observe(state, propagator.params().kappa, propagator.coupling(), gamma, propagator.transform()));
    auto& list = what.second;
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (std::size_t o : list) observers[o].callback(state, gamma);
  }
  return result;
}

}  // namespace zeno
