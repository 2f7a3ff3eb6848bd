#include <cmath>

#include "doctest.h"
#include "zeno/local_flow.hpp"
#include "zeno/oracles.hpp"

using namespace zeno;

namespace {

double max_diff(const LocalMatrix& a, const LocalMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Point {
  Complex r11{0.3, 0.0}, r12{0.1, 0.2}, r21{-0.05, 0.15}, r22{0.4, -0.1};
};

}  // namespace

TEST_CASE("cosh_sinhc agrees across its branches") {
  for (double q2 : {-4.0, -0.7, -0.49, -1e-3, 0.0, 1e-3, 0.49, 0.7, 4.0}) {
    double c, s;
    cosh_sinhc(q2, c, s);
    double ce, se;
    if (q2 > 0) {
      ce = std::cosh(std::sqrt(q2));
      se = std::sinh(std::sqrt(q2)) / std::sqrt(q2);
    } else if (q2 < 0) {
      ce = std::cos(std::sqrt(-q2));
      se = std::sin(std::sqrt(-q2)) / std::sqrt(-q2);
    } else {
      ce = se = 1.0;
    }
    CHECK(c == doctest::Approx(ce).epsilon(1e-15));
    CHECK(s == doctest::Approx(se).epsilon(1e-15));
  }
}

TEST_CASE("expm of a generator with a known exponential") {
  // Pure dephasing: diagonal generator.
  const auto g = local_generator(0.0, 0.0, 3.0, 0.0);
  const auto u = expm([&] {
    LocalMatrix a = g;
    for (auto& x : a) x *= 0.7;
    return a;
  }());
  CHECK(std::abs(u[0] - 1.0) < 1e-15);
  CHECK(std::abs(u[5] - std::exp(-1.05)) < 1e-15);
  CHECK(std::abs(u[10] - std::exp(-1.05)) < 1e-15);
  CHECK(std::abs(u[15] - 1.0) < 1e-15);
}

TEST_CASE("closed-form local step matches the matrix exponential") {
  const double dt = 5e-4;
  for (double wr : {0.0, 0.3, 2.2, 50.0})
    for (double wrp : {0.0, 1.1, 2.2, 37.0})
      for (double gamma : {0.0, 0.2, 4.0, 500.0}) {
        const LocalMatrix u = local_propagator(wr, wrp, gamma, 0.0, dt);
        Point p, q;
        apply_local_matrix(u, p.r11, p.r12, p.r21, p.r22);
        local_flow_point(q.r11, q.r12, q.r21, q.r22, wr, wrp, gamma, dt);
        CHECK(std::abs(p.r11 - q.r11) < 1e-14);
        CHECK(std::abs(p.r12 - q.r12) < 1e-14);
        CHECK(std::abs(p.r21 - q.r21) < 1e-14);
        CHECK(std::abs(p.r22 - q.r22) < 1e-14);
      }
}

TEST_CASE("local propagator over long times matches the Bloch oracle") {
  // Diagonal points r = r' reduce to the single-site Bloch equations.
  for (double w : {0.275, 2.2, 10.0})
    for (double gamma : {0.0, 0.2, 2.0, 10.0})
      for (double de : {0.0, 1.3}) {
        const double t = 1.7;
        const auto rho0 = oracles::bloch_initial(std::sqrt(0.5), std::sqrt(0.5));
        const auto ref = oracles::bloch_solve_w(w, gamma, de, rho0, t);
        Point p{rho0.r11, rho0.r12, rho0.r21, rho0.r22};
        apply_local_matrix(local_propagator(w, w, gamma, de, t), p.r11, p.r12, p.r21, p.r22);
        CHECK(std::abs(p.r11 - ref.r11) < 1e-12);
        CHECK(std::abs(p.r12 - ref.r12) < 1e-12);
        CHECK(std::abs(p.r22 - ref.r22) < 1e-12);
      }
}

TEST_CASE("level shift generator sign") {
  const auto g = local_generator(0.0, 0.0, 0.0, 2.0);
  CHECK(g[5] == Complex(0.0, 2.0));
  CHECK(g[10] == Complex(0.0, -2.0));
  CHECK(max_diff(local_propagator(1.0, 2.0, 0.5, 0.0, 0.0), expm(LocalMatrix{})) < 1e-16);
}
