#include "zeno/decoherence.hpp"

#include <cmath>

#include "zeno/errors.hpp"

namespace zeno {

DecoherenceSchedule DecoherenceSchedule::constant(double gamma, double delta_e) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("schedule: gamma must be >= 0");
  if (!std::isfinite(delta_e)) throw ValidationError("schedule: delta_e must be finite");
  DecoherenceSchedule s;
  s.variant_ = Constant{gamma};
  s.delta_e_ = delta_e;
  return s;
}

DecoherenceSchedule DecoherenceSchedule::pulses(double gamma0, std::vector<double> centers, double tau,
                                                double delta_e) {
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) throw ValidationError("schedule: gamma0 must be >= 0");
  if (!(tau > 0.0)) throw ValidationError("schedule: pulse width tau must be > 0");
  if (!std::isfinite(delta_e)) throw ValidationError("schedule: delta_e must be finite");
  DecoherenceSchedule s;
  s.variant_ = Pulses{gamma0, std::move(centers), tau};
  s.delta_e_ = delta_e;
  return s;
}

double DecoherenceSchedule::gamma_at(double t) const {
  if (const auto* c = std::get_if<Constant>(&variant_)) return c->gamma;
  const auto& p = std::get<Pulses>(variant_);
  double g = 0.0;
  for (double t0 : p.centers) {
    const double x = (t - t0) / p.tau;
    g += p.gamma0 * std::exp(-x * x);
  }
  return g;
}

double DecoherenceSchedule::gamma_max() const {
  if (const auto* c = std::get_if<Constant>(&variant_)) return c->gamma;
  const auto& p = std::get<Pulses>(variant_);
  return p.gamma0 * static_cast<double>(p.centers.size());
}

}  // namespace zeno
