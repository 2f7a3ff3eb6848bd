#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zeno/errors.hpp"
#include "zeno/grid.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/spectral.hpp"
#include "zeno/state.hpp"
#include "zeno/units.hpp"

using namespace zeno;

TEST_CASE("grid spacing and wavenumber ordering") {
  const SpatialGrid g(2.0, 34.0, 256);
  CHECK(g.dr() == 0.125);
  CHECK(g.r(0) == 2.0);
  CHECK(g.r(255) == doctest::Approx(33.875));
  const auto k = g.wavenumbers();
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(2.0 * std::numbers::pi / 32.0));
  CHECK(k[128] == doctest::Approx(-std::numbers::pi / 0.125));
  CHECK(k[255] == doctest::Approx(-k[1]));
}

TEST_CASE("grid rejects bad input") {
  CHECK_THROWS_AS(SpatialGrid(0.0, 10.0, 64), ValidationError);
  CHECK_THROWS_AS(SpatialGrid(5.0, 4.0, 64), ValidationError);
  CHECK_THROWS_AS(SpatialGrid(2.0, 34.0, 100), ValidationError);
  CHECK_THROWS_AS(SpatialGrid(2.0, 34.0, 4), ValidationError);
}

TEST_CASE("kinetic coefficient for 87Rb") {
  // hbar / m(87Rb) with CODATA 2018 constants, evaluated independently.
  CHECK(default_kinetic_coefficient() == doctest::Approx(7.307375224559461e-4).epsilon(1e-12));
  CHECK(frequency_scale(FrequencyConvention::cycles) == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("initial state invariants") {
  const SpatialGrid g(2.0, 34.0, 256);
  for (auto s : {Surface::repulsive, Surface::attractive, Surface::pi1, Surface::pi2}) {
    const auto rho = build_initial_state(g, InitialPacket{9.0, 0.5, s});
    CHECK(trace(rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hermiticity_defect(rho) <= 1e-16);
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto rep = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  const std::size_t i0 = 56;  // r = 9
  const double phi = gaussian_norm(0.5);
  CHECK(rep.at(0, 1, i0, i0).real() == doctest::Approx(0.5 * phi * phi).epsilon(1e-14));
  CHECK(rep.at(0, 1, i0, i0).imag() == 0.0);

  const auto p1 = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::pi1});
  double off = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) off = std::max({off, std::abs(p1.at(1, 1, i, j)), std::abs(p1.at(0, 1, i, j))});
  CHECK(off == 0.0);
}

TEST_CASE("packet must fit inside the grid margin") {
  const SpatialGrid g(2.0, 34.0, 256);
  CHECK_THROWS_AS(build_initial_state(g, InitialPacket{3.0, 0.5, Surface::repulsive}), ValidationError);
  CHECK_THROWS_AS(build_initial_state(g, InitialPacket{9.0, 0.0, Surface::repulsive}), ValidationError);
}

TEST_CASE("coupling and surfaces") {
  const PhysicalParams p;
  CHECK(w12(9.0, p) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(w12(18.0, p) == doctest::Approx(0.275).epsilon(1e-14));
  CHECK(w12(1e6, p) < 1e-14);
  CHECK_THROWS_AS(w12(0.0, p), ValidationError);
  CHECK_THROWS_AS(w12(-1.0, p), ValidationError);
  const auto s = bo_surfaces(9.0, p);
  CHECK(s.repulsive == doctest::Approx(2.2));
  CHECK(s.attractive == doctest::Approx(-2.2));
  const auto rep = electronic_amplitudes(Surface::repulsive);
  const auto att = electronic_amplitudes(Surface::attractive);
  CHECK(rep[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(rep[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK(att[1] == doctest::Approx(-std::sqrt(0.5)));

  const SpatialGrid g(2.0, 34.0, 256);
  const auto w = coupling_profile(g, p, 50.0);
  CHECK(w[0] == 50.0);  // 1603.8 / 8 > 50
  CHECK(w[56] == doctest::Approx(2.2));
}

TEST_CASE("spectral transform round trip") {
  const std::size_t n = 32;
  ComplexBuffer x(n * n), y;
  for (std::size_t i = 0; i < n * n; ++i) x[i] = Complex(std::sin(0.3 * i), std::cos(0.17 * i * i));
  y = x;
  for (auto layout : {TransformLayout::two_dimensional, TransformLayout::row_column}) {
    SpectralTransform t(n, FftPlanner::estimate, layout);
    ComplexBuffer z = x;
    t.forward(z.data());
    t.backward(z.data());
    double err = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) err = std::max(err, std::abs(z[i] / double(n * n) - y[i]));
    CHECK(err < 1e-13);
  }
}

TEST_CASE("state reductions") {
  const SpatialGrid g(4.0, 12.0, 16);
  DimerState a(g), b(g);
  a.at(0, 1, 2, 3) = Complex(1.0, 2.0);
  CHECK(hermiticity_defect(a) == doctest::Approx(std::sqrt(5.0)));
  a.at(1, 0, 3, 2) = Complex(1.0, -2.0);
  CHECK(hermiticity_defect(a) == 0.0);
  CHECK(max_abs_difference(a, b) == doctest::Approx(std::sqrt(5.0)));
  CHECK(all_finite(a));
  a.at(1, 1, 0, 0) = Complex(NAN, 0.0);
  CHECK_FALSE(all_finite(a));
}
