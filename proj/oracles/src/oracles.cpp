#include "zeno/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "zeno/errors.hpp"

namespace zeno::oracles {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Superoperator of rho -> -i(H_row rho - rho H_col) + dephasing on a
// (2 M) x (2 M) matrix with electronic blocks [[11, 12], [21, 22]] of size M.
// Columns are images of unit matrices in row-major (block, i, j) order.
MatrixXcd superoperator(const MatrixXcd& h, std::size_t m, double gamma, double delta_e) {
  const auto dim = static_cast<Eigen::Index>(2 * m);
  const auto n = static_cast<Eigen::Index>(m);
  const Eigen::Index size = 4 * n * n;
  auto vec_index = [n](Eigen::Index row, Eigen::Index col) {
    const Eigen::Index blk = 2 * (row / n) + col / n;
    return blk * n * n + (row % n) * n + col % n;
  };
  const Complex i1{0.0, 1.0};
  MatrixXcd g = MatrixXcd::Zero(size, size);
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      MatrixXcd e = MatrixXcd::Zero(dim, dim);
      e(row, col) = 1.0;
      MatrixXcd out = -i1 * (h * e - e * h);
      const bool off_diagonal_block = (row / n) != (col / n);
      if (off_diagonal_block) {
        const Complex shift = (row / n == 0) ? Complex{-0.5 * gamma, delta_e} : Complex{-0.5 * gamma, -delta_e};
        out(row, col) += shift;
      }
      const Eigen::Index c = vec_index(row, col);
      for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b)
          if (out(a, b) != Complex{0.0, 0.0}) g(vec_index(a, b), c) = out(a, b);
    }
  }
  return g;
}

}  // namespace

BlochState bloch_initial(double c1, double c2) { return {c1 * c1, c1 * c2, c2 * c1, c2 * c2}; }

BlochState bloch_solve_w(double w, double gamma, double delta_e, const BlochState& rho0, double t) {
  MatrixXcd h(2, 2);
  h << 0.0, w, w, 0.0;
  const MatrixXcd g = superoperator(h, 1, gamma, delta_e);
  const MatrixXcd u = (g * t).exp();
  VectorXcd v(4);
  v << rho0.r11, rho0.r12, rho0.r21, rho0.r22;
  const VectorXcd out = u * v;
  return {out(0), out(1), out(2), out(3)};
}

BlochState bloch_solve(double r, double gamma, double delta_e, const BlochState& rho0, double t,
                       const PhysicalParams& params) {
  if (!(r > 0.0)) throw ValidationError("bloch_solve: r must be positive");
  return bloch_solve_w(params.mu2 / (r * r * r), gamma, delta_e, rho0, t);
}

std::vector<double> spectral_second_derivative(const SpatialGrid& grid) {
  const std::size_t n = grid.size();
  const auto k = grid.wavenumbers();
  std::vector<double> d2(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Complex s = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        s += -k[m] * k[m] * std::polar(1.0, k[m] * (static_cast<double>(a) - static_cast<double>(b)) * grid.dr());
      d2[a * n + b] = s.real() / static_cast<double>(n);
    }
  return d2;
}

DimerState dense_propagate(const DimerState& initial, const PhysicalParams& params, const DenseOptions& options,
                           double t) {
  const SpatialGrid& grid = initial.grid();
  const std::size_t n = grid.size();
  if (n > 16) throw ValidationError("dense_propagate: N must be <= 16");
  const auto ni = static_cast<Eigen::Index>(n);

  // H = -kappa D2 (x) 1 + sigma_x (x) diag(W), electronic-major ordering.
  MatrixXcd h = MatrixXcd::Zero(2 * ni, 2 * ni);
  if (options.kinetic_enabled) {
    const std::vector<double> d2 = spectral_second_derivative(grid);
    for (Eigen::Index e = 0; e < 2; ++e)
      for (Eigen::Index a = 0; a < ni; ++a)
        for (Eigen::Index b = 0; b < ni; ++b)
          h(e * ni + a, e * ni + b) = -params.kappa * d2[static_cast<std::size_t>(a * ni + b)];
  }
  for (Eigen::Index a = 0; a < ni; ++a) {
    const double r = grid.r(static_cast<std::size_t>(a));
    const double w = std::min(params.mu2 / (r * r * r), options.w_cap);
    h(a, ni + a) = w;
    h(ni + a, a) = w;
  }

  const MatrixXcd g = superoperator(h, n, options.gamma, options.delta_e);
  const MatrixXcd u = (g * t).exp();
  VectorXcd v(4 * ni * ni);
  for (int b = 0; b < 4; ++b)
    for (std::size_t p = 0; p < n * n; ++p) v(static_cast<Eigen::Index>(b * n * n + p)) = initial.block(b)[p];
  const VectorXcd out = u * v;
  DimerState result(grid);
  for (int b = 0; b < 4; ++b)
    for (std::size_t p = 0; p < n * n; ++p) result.block(b)[p] = out(static_cast<Eigen::Index>(b * n * n + p));
  result.set_time(initial.time() + t);
  result.set_absorbed_norm(initial.absorbed_norm());
  return result;
}

}  // namespace zeno::oracles
