#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace zeno {

using Complex = std::complex<double>;

/// Row-major 4x4 matrix acting on (rho_11, rho_12, rho_21, rho_22) at one (r, r') point.
using LocalMatrix = std::array<Complex, 16>;

/// Generator of the position-local part of the master equation at (r, r'):
/// coupling W(r) = w_r, W(r') = w_rp, dephasing gamma on the off-diagonal blocks,
/// and the level shift delta_e (+i delta_e on rho_12, -i delta_e on rho_21).
LocalMatrix local_generator(double w_r, double w_rp, double gamma, double delta_e);

/// exp(a) by scaling and squaring of a degree-18 Taylor polynomial.
LocalMatrix expm(const LocalMatrix& a);

/// exp(dt * local_generator(...)).
LocalMatrix local_propagator(double w_r, double w_rp, double gamma, double delta_e, double dt);

/// cosh(q) and sinh(q)/q as functions of q^2 (q may be imaginary).
inline void cosh_sinhc(double q2, double& c, double& s) {
  if (std::abs(q2) < 0.5) {
    // Taylor coefficients 1/(2n)! and 1/(2n+1)!, n = 0..10; |q2|^11 / 22! < 1e-24
    constexpr double ce[11] = {1.0,
                               1.0 / 2,
                               1.0 / 24,
                               1.0 / 720,
                               1.0 / 40320,
                               1.0 / 3628800,
                               1.0 / 479001600,
                               1.0 / 87178291200.0,
                               1.0 / 20922789888000.0,
                               1.0 / 6402373705728000.0,
                               1.0 / 2432902008176640000.0};
    constexpr double so[11] = {1.0,
                               1.0 / 6,
                               1.0 / 120,
                               1.0 / 5040,
                               1.0 / 362880,
                               1.0 / 39916800,
                               1.0 / 6227020800.0,
                               1.0 / 1307674368000.0,
                               1.0 / 355687428096000.0,
                               1.0 / 121645100408832000.0,
                               1.0 / 51090942171709440000.0};
    c = ce[10];
    s = so[10];
    for (int n = 9; n >= 0; --n) {
      c = c * q2 + ce[n];
      s = s * q2 + so[n];
    }
  } else if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    c = std::cosh(q);
    s = std::sinh(q) / q;
  } else {
    const double q = std::sqrt(-q2);
    c = std::cos(q);
    s = std::sin(q) / q;
  }
}

/// Real coefficients of the exact local step for delta_e = 0. In the Pauli
/// decomposition rho = m0 + mx sx + my sy + mz sz the generator splits into
/// two 2x2 blocks, (m0, mx) coupled by W(r) - W(r') and (my, mz) coupled by
/// W(r) + W(r'), each with a closed-form exponential:
///   m0' = a m0 - i b mx,  mx' = -i b m0 + c mx,
///   my' = d my - e mz,    mz' = e my + f mz.
struct FlowCoefficients {
  double a, b, c, d, e, f;
};

/// h = gamma dt / 4 and decay = exp(-h) are shared by all points.
inline FlowCoefficients flow_coefficients(double w_r, double w_rp, double h, double decay, double dt) {
  const double dd = (w_r - w_rp) * dt;
  const double ss = (w_r + w_rp) * dt;
  double ca, sa, cb, sb;
  cosh_sinhc(h * h - dd * dd, ca, sa);
  cosh_sinhc(h * h - ss * ss, cb, sb);
  return {decay * (ca + sa * h), decay * sa * dd, decay * (ca - sa * h),
          decay * (cb - sb * h), decay * sb * ss, decay * (cb + sb * h)};
}

inline void apply_flow(const FlowCoefficients& k, Complex& r11, Complex& r12, Complex& r21, Complex& r22) {
  constexpr Complex i1{0.0, 1.0};
  const Complex m0 = 0.5 * (r11 + r22);
  const Complex mz = 0.5 * (r11 - r22);
  const Complex mx = 0.5 * (r12 + r21);
  const Complex my = 0.5 * i1 * (r12 - r21);

  const Complex m0n = k.a * m0 - i1 * (k.b * mx);
  const Complex mxn = k.c * mx - i1 * (k.b * m0);
  const Complex myn = k.d * my - k.e * mz;
  const Complex mzn = k.e * my + k.f * mz;

  r11 = m0n + mzn;
  r22 = m0n - mzn;
  r12 = mxn - i1 * myn;
  r21 = mxn + i1 * myn;
}

/// Exact local step for delta_e = 0 at one (r, r') point.
inline void local_flow_point(Complex& r11, Complex& r12, Complex& r21, Complex& r22, double w_r, double w_rp,
                             double gamma, double dt) {
  const double h = 0.25 * gamma * dt;
  apply_flow(flow_coefficients(w_r, w_rp, h, std::exp(-h), dt), r11, r12, r21, r22);
}

inline void apply_local_matrix(const LocalMatrix& u, Complex& r11, Complex& r12, Complex& r21, Complex& r22) {
  const Complex v[4] = {r11, r12, r21, r22};
  Complex out[4];
  for (int row = 0; row < 4; ++row) {
    out[row] = u[4 * row] * v[0] + u[4 * row + 1] * v[1] + u[4 * row + 2] * v[2] + u[4 * row + 3] * v[3];
  }
  r11 = out[0];
  r12 = out[1];
  r21 = out[2];
  r22 = out[3];
}

}  // namespace zeno
