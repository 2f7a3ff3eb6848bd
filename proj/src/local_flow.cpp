#include "zeno/local_flow.hpp"

#include <algorithm>

namespace zeno {
namespace {

LocalMatrix multiply(const LocalMatrix& a, const LocalMatrix& b) {
  LocalMatrix c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Complex aik = a[4 * i + k];
      for (int j = 0; j < 4; ++j) c[4 * i + j] += aik * b[4 * k + j];
    }
  return c;
}

double norm_inf(const LocalMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += std::abs(a[4 * i + j]);
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

LocalMatrix local_generator(double w_r, double w_rp, double gamma, double delta_e) {
  constexpr Complex i1{0.0, 1.0};
  const double g = 0.5 * gamma;
  const double a = w_r;
  const double b = w_rp;
  // d rho_11 = -i (a rho_21 - b rho_12)
  // d rho_12 = -i (a rho_22 - b rho_11) + (i dE - g) rho_12
  // d rho_21 = -i (a rho_11 - b rho_22) + (-i dE - g) rho_21
  // d rho_22 = -i (a rho_12 - b rho_21)
  return LocalMatrix{
      0.0,     i1 * b,                 -i1 * a,                0.0,
      i1 * b,  Complex(-g, delta_e),   0.0,                    -i1 * a,
      -i1 * a, 0.0,                    Complex(-g, -delta_e),  i1 * b,
      0.0,     -i1 * a,                i1 * b,                 0.0,
  };
}

LocalMatrix expm(const LocalMatrix& a) {
  const double norm = norm_inf(a);
  int squarings = 0;
  if (norm > 0.125) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.125)));
  const double scale = std::ldexp(1.0, -squarings);

  LocalMatrix x = a;
  for (auto& v : x) v *= scale;

  LocalMatrix result{};
  for (int i = 0; i < 4; ++i) result[5 * i] = 1.0;
  LocalMatrix term = result;
  for (int k = 1; k <= 18; ++k) {
    term = multiply(term, x);
    for (auto& v : term) v /= static_cast<double>(k);
    for (int i = 0; i < 16; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) result = multiply(result, result);
  return result;
}

LocalMatrix local_propagator(double w_r, double w_rp, double gamma, double delta_e, double dt) {
  LocalMatrix g = local_generator(w_r, w_rp, gamma, delta_e);
  for (auto& v : g) v *= dt;
  return expm(g);
}

}  // namespace zeno
