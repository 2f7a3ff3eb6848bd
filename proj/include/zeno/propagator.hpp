#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zeno/decoherence.hpp"
#include "zeno/grid.hpp"
#include "zeno/local_flow.hpp"
#include "zeno/observables.hpp"
#include "zeno/physics.hpp"
#include "zeno/spectral.hpp"
#include "zeno/state.hpp"

namespace zeno {

enum class Scheme { strang, rk4 };
enum class Backend { parallel, serial };

struct PropagatorConfig {
  double dt = 5e-4;                // us
  Scheme scheme = Scheme::strang;
  double w_cap = 50.0;             // MHz, clamp on W12 near r_min
  double absorber_width = 2.0;     // um at each grid edge; 0 disables
  double absorber_strength = 5.0;  // 1/us at the outer edge of the ramp
  bool kinetic_enabled = true;     // false: frozen-position mode
  Backend backend = Backend::parallel;
  FftPlanner planner = FftPlanner::measure;

  void validate() const;
};

/// Integrates
///   d rho_nm/dt = i kappa (d_r^2 - d_r'^2) rho_nm
///                 - i sum_k [W_nk(r) rho_km - W_km(r') rho_nk]
///                 + (+-i dE - gamma/2) rho_nm   (n != m; + on rho_12)
///
/// Strang step: kinetic half step, exact local flow over dt with gamma frozen
/// at the step midpoint, absorber mask, kinetic half step. Consecutive
/// kinetic half steps are fused when several steps run back to back.
class Propagator {
 public:
  /// Throws ValidationError if the configuration is invalid or
  /// dt * max(W_max, gamma_max, kappa k_max^2) > 0.5.
  Propagator(SpatialGrid grid, PhysicalParams params, PropagatorConfig config, double gamma_max);

  const SpatialGrid& grid() const noexcept { return grid_; }
  const PhysicalParams& params() const noexcept { return params_; }
  const PropagatorConfig& config() const noexcept { return config_; }
  std::span<const double> coupling() const noexcept { return coupling_; }
  std::span<const double> absorber_mask() const noexcept { return mask_; }
  const SpectralTransform& transform() const noexcept { return transform_; }

  /// d rho/dt at fixed gamma and delta_e (no absorber).
  DimerState rhs(const DimerState& state, double gamma, double delta_e) const;

  /// One step with gamma held fixed over the step.
  void step_strang(DimerState& state, double gamma, double delta_e) const;
  void step_rk4(DimerState& state, double gamma, double delta_e) const;

  /// `steps` steps of the configured scheme. Strang freezes gamma(t) at each
  /// step midpoint; RK4 evaluates it at the stage times. Throws NumericalError
  /// on non-finite values.
  void advance(DimerState& state, const DecoherenceSchedule& schedule, std::size_t steps) const;

  /// Applies the kinetic flow exp(tau K) to all four blocks.
  void kinetic_flow(DimerState& state, double tau) const;

 private:
  void local_flow(DimerState& state, double gamma, double delta_e) const;
  void absorb(DimerState& state) const;
  void add_kinetic_derivative(const DimerState& in, DimerState& out) const;
  void check_finite(const DimerState& state, double last_good_time) const;

  SpatialGrid grid_;
  PhysicalParams params_;
  PropagatorConfig config_;
  std::vector<double> coupling_;
  std::vector<double> mask_;
  std::vector<double> k2_;
  std::vector<Complex> half_phase_;
  std::vector<Complex> full_phase_;
  SpectralTransform transform_;

  // Per-point local steps, rebuilt when (gamma, delta_e) changes. For
  // delta_e = 0 the coefficient table is only built once gamma repeats, so
  // pulse schedules (new gamma every step) skip the extra pass.
  mutable std::vector<LocalMatrix> cached_matrices_;
  mutable std::optional<std::pair<double, double>> cached_key_;
  mutable std::vector<FlowCoefficients> cached_flow_;
  mutable std::optional<double> cached_flow_gamma_;
  mutable std::optional<double> last_gamma_;
};

/// Callback invoked at given steps during propagate().
struct Observer {
  std::size_t stride = 0;     // every `stride` steps (0: unused)
  std::vector<double> times;  // and/or at these times (rounded to the nearest step)
  std::function<void(const DimerState& state, double gamma)> callback;
};

struct PropagationResult {
  DimerState state;
  std::vector<ObservableRecord> records;
};

/// Advances `initial` to t_final, recording observables every `record_stride`
/// steps (plus the first and last step). t_final - t0 must be a whole number
/// of steps to 1e-6 relative.
PropagationResult propagate(DimerState initial, const Propagator& propagator, const DecoherenceSchedule& schedule,
                            double t_final, std::size_t record_stride, std::span<const Observer> observers = {});

/// Number of steps from t0 to t_final; throws ValidationError if not commensurate with dt.
std::size_t step_count(double t0, double t_final, double dt);

}  // namespace zeno
