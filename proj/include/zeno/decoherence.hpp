#pragma once

#include <variant>
#include <vector>

namespace zeno {

/// Dephasing rate gamma(t) (constant or a train of Gaussian pulses) plus a constant level shift delta_e.
class DecoherenceSchedule {
 public:
  struct Constant {
    double gamma = 0.0;  // MHz
  };
  /// gamma(t) = sum_n gamma0 exp(-(t - t_n)^2 / tau^2)
  struct Pulses {
    double gamma0 = 0.0;         // MHz
    std::vector<double> centers;  // us
    double tau = 0.5;            // us
  };

  DecoherenceSchedule() = default;

  static DecoherenceSchedule constant(double gamma, double delta_e = 0.0);
  static DecoherenceSchedule pulses(double gamma0, std::vector<double> centers, double tau, double delta_e = 0.0);

  double gamma_at(double t) const;
  /// Upper bound of gamma(t) over all t.
  double gamma_max() const;
  double delta_e() const noexcept { return delta_e_; }
  bool is_constant() const noexcept { return std::holds_alternative<Constant>(variant_); }
  const std::variant<Constant, Pulses>& variant() const noexcept { return variant_; }

 private:
  std::variant<Constant, Pulses> variant_{Constant{}};
  double delta_e_ = 0.0;
};

}  // namespace zeno
