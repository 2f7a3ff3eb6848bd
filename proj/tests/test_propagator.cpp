#include <cmath>
#include <vector>

#include "doctest.h"
#include "zeno/decoherence.hpp"
#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/observables.hpp"
#include "zeno/oracles.hpp"
#include "zeno/propagator.hpp"

using namespace zeno;

namespace {

PropagatorConfig quiet(double dt, Scheme scheme = Scheme::strang) {
  PropagatorConfig c;
  c.dt = dt;
  c.scheme = scheme;
  c.absorber_width = 0.0;
  c.planner = FftPlanner::estimate;
  return c;
}

// Coarse grid with a packet that still feels both the kinetic and the coupling terms.
struct Small {
  SpatialGrid grid{6.0, 14.0, 16};
  PhysicalParams params = [] {
    PhysicalParams p;
    p.kappa = 0.05;
    return p;
  }();
  DimerState initial = build_initial_state(grid, InitialPacket{10.0, 0.7, Surface::repulsive});
};

double strang_error(const Small& s, double dt, Scheme scheme, double gamma, const DimerState& ref) {
  Propagator prop(s.grid, s.params, quiet(dt, scheme), gamma);
  DimerState rho = s.initial;
  prop.advance(rho, DecoherenceSchedule::constant(gamma), step_count(0.0, 1.0, dt));
  return max_abs_difference(rho, ref);
}

}  // namespace

TEST_CASE("rhs: free uniform state is stationary") {
  const SpatialGrid g(4.0, 12.0, 16);
  PhysicalParams p;
  p.mu2 = 1e-300;
  Propagator prop(g, p, quiet(1e-3), 0.0);
  DimerState rho(g);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) rho.at(0, 0, i, j) = rho.at(1, 1, i, j) = 1.0 / 16.0;
  const DimerState d = prop.rhs(rho, 0.0, 0.0);
  CHECK(max_abs_difference(d, DimerState(g)) < 1e-15);
}

TEST_CASE("rhs: coherence decays at gamma / 2") {
  const SpatialGrid g(4.0, 12.0, 16);
  PhysicalParams p;
  p.mu2 = 1e-300;
  PropagatorConfig c = quiet(1e-3);
  c.kinetic_enabled = false;
  Propagator prop(g, p, c, 10.0);
  DimerState rho(g);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) rho.at(0, 1, i, j) = Complex(0.1 * i, -0.2 * j);
  const DimerState d = prop.rhs(rho, 10.0, 0.0);
  double err = 0.0;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) err = std::max(err, std::abs(d.at(0, 1, i, j) + 5.0 * rho.at(0, 1, i, j)));
  CHECK(err < 1e-14);
}

TEST_CASE("stability heuristic rejects large steps") {
  const SpatialGrid g(2.0, 34.0, 256);
  CHECK_THROWS_AS(Propagator(g, PhysicalParams{}, quiet(0.02), 0.0), ValidationError);
  CHECK_THROWS_AS(Propagator(g, PhysicalParams{}, quiet(1e-3), 1000.0), ValidationError);
  PropagatorConfig wide = quiet(1e-3);
  wide.absorber_width = 16.0;
  CHECK_THROWS_AS(Propagator(g, PhysicalParams{}, wide, 0.0), ValidationError);
  CHECK_THROWS_AS(Propagator(g, PhysicalParams{}, quiet(-1.0), 0.0), ValidationError);
}

TEST_CASE("Strang matches the dense exact propagator on 16 points") {
  Small s;
  for (double gamma : {0.0, 1.0}) {
    oracles::DenseOptions opt;
    opt.gamma = gamma;
    const DimerState ref = oracles::dense_propagate(s.initial, s.params, opt, 1.0);
    CHECK(strang_error(s, 5e-4, Scheme::strang, gamma, ref) <= 1e-6);
  }
  // Physical kappa, wider grid reaching the capped region.
  const SpatialGrid g(2.0, 18.0, 16);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 1.0, Surface::repulsive});
  oracles::DenseOptions opt;
  opt.gamma = 0.2;
  const DimerState ref = oracles::dense_propagate(init, PhysicalParams{}, opt, 1.0);
  Propagator prop(g, PhysicalParams{}, quiet(5e-4), 0.2);
  DimerState rho = init;
  prop.advance(rho, DecoherenceSchedule::constant(0.2), 2000);
  CHECK(max_abs_difference(rho, ref) <= 1e-6);
}

TEST_CASE("Strang is second order, RK4 fourth order") {
  Small s;
  oracles::DenseOptions opt;
  opt.gamma = 1.0;
  const DimerState ref = oracles::dense_propagate(s.initial, s.params, opt, 1.0);
  const double e1 = strang_error(s, 0.02, Scheme::strang, 1.0, ref);
  const double e2 = strang_error(s, 0.01, Scheme::strang, 1.0, ref);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
  const double r1 = strang_error(s, 0.02, Scheme::rk4, 1.0, ref);
  const double r2 = strang_error(s, 0.01, Scheme::rk4, 1.0, ref);
  CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("fused advance equals repeated step_strang") {
  Small s;
  Propagator prop(s.grid, s.params, quiet(1e-3), 0.5);
  DimerState a = s.initial, b = s.initial;
  prop.advance(a, DecoherenceSchedule::constant(0.5), 50);
  for (int i = 0; i < 50; ++i) prop.step_strang(b, 0.5, 0.0);
  CHECK(max_abs_difference(a, b) < 1e-13);
  CHECK(a.time() == doctest::Approx(0.05));
}

TEST_CASE("RK4 and Strang agree after 1 us") {
  const SpatialGrid g(4.0, 20.0, 128);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  const auto sched = DecoherenceSchedule::constant(0.2);
  Propagator strang(g, PhysicalParams{}, quiet(1e-3), 0.2);
  Propagator rk4(g, PhysicalParams{}, quiet(1e-3, Scheme::rk4), 0.2);
  DimerState a = init, b = init;
  strang.advance(a, sched, 1000);
  rk4.advance(b, sched, 1000);
  CHECK(max_abs_difference(a, b) <= 1e-6);
  // RK4 is not exactly norm preserving; its drift stays far below 1e-8 per us.
  const DimerState c = [&] {
    DimerState x = init;
    rk4.advance(x, DecoherenceSchedule::constant(0.0), 1000);
    return x;
  }();
  CHECK(std::abs(trace(c) - 1.0) <= 1e-8);
}

TEST_CASE("long run keeps trace, Hermiticity and purity") {
  const SpatialGrid g(4.0, 20.0, 128);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  PropagatorConfig c = quiet(5e-4);
  c.absorber_width = 1.0;
  Propagator prop(g, PhysicalParams{}, c, 0.2);
  DimerState rho = init;
  prop.advance(rho, DecoherenceSchedule::constant(0.2), 10000);
  CHECK(hermiticity_defect(rho) <= 1e-8);
  CHECK(std::abs(trace(rho) + rho.absorbed_norm() - 1.0) <= 1e-10);

  DimerState pure = init;
  prop.advance(pure, DecoherenceSchedule::constant(0.0), 4000);
  CHECK(std::abs(purity(pure) - 1.0) <= 1e-9);
}

TEST_CASE("absorbed mass is accounted for") {
  const SpatialGrid g(2.0, 34.0, 128);
  const DimerState init = build_initial_state(g, InitialPacket{4.6, 0.5, Surface::attractive});
  PropagatorConfig c;
  c.planner = FftPlanner::estimate;
  Propagator prop(g, PhysicalParams{}, c, 0.0);
  DimerState rho = init;
  prop.advance(rho, DecoherenceSchedule::constant(0.0), 2000);
  CHECK(rho.absorbed_norm() > 1e-3);
  CHECK(std::abs(trace(rho) + rho.absorbed_norm() - 1.0) <= 1e-12);
}

TEST_CASE("with W off, motion is free dispersion") {
  const SpatialGrid g(2.0, 34.0, 128);
  PhysicalParams p;
  p.mu2 = 1e-300;
  p.kappa = 0.05;
  const double sigma = 0.5, t = 2.0;
  const DimerState init = build_initial_state(g, InitialPacket{18.0, sigma, Surface::repulsive});
  Propagator prop(g, p, quiet(1e-3), 0.0);
  const double e0 = kinetic_energy(init, p.kappa);
  DimerState rho = init;
  prop.advance(rho, DecoherenceSchedule::constant(0.7), 2000);
  CHECK(std::abs(kinetic_energy(rho, p.kappa) - e0) <= 1e-8 * e0);
  CHECK(e0 == doctest::Approx(p.kappa / (2 * sigma * sigma)).epsilon(1e-10));

  // Variance of n(r) for exp(-i kappa k^2 t): sigma^2/2 (1 + (2 kappa t / sigma^2)^2).
  const auto n = density(rho);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    m0 += n[i];
    m1 += n[i] * g.r(i);
    m2 += n[i] * g.r(i) * g.r(i);
  }
  const double var = m2 / m0 - (m1 / m0) * (m1 / m0);
  const double x = 2.0 * p.kappa * t / (sigma * sigma);
  CHECK(var == doctest::Approx(0.5 * sigma * sigma * (1.0 + x * x)).epsilon(1e-8));
}

TEST_CASE("serial and parallel backends agree") {
  const SpatialGrid g(2.0, 18.0, 64);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  const std::vector<DecoherenceSchedule> schedules{DecoherenceSchedule::constant(0.2),
                                                   DecoherenceSchedule::constant(1.0, 0.8),
                                                   DecoherenceSchedule::pulses(4.0, {0.05}, 0.05)};
  for (Scheme scheme : {Scheme::strang, Scheme::rk4})
    for (const auto& sched : schedules) {
      PropagatorConfig c = quiet(1e-3, scheme);
      c.absorber_width = 2.0;
      Propagator par(g, PhysicalParams{}, c, sched.gamma_max());
      c.backend = Backend::serial;
      Propagator ser(g, PhysicalParams{}, c, sched.gamma_max());
      DimerState a = init, b = init;
      par.advance(a, sched, 100);
      ser.advance(b, sched, 100);
      CHECK(max_abs_difference(a, b) < 1e-12);
      CHECK(a.absorbed_norm() == doctest::Approx(b.absorbed_norm()).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("frozen positions follow the Bloch oracle") {
  const SpatialGrid g(2.0, 34.0, 256);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  const auto rho0 = oracles::bloch_initial(std::sqrt(0.5), std::sqrt(0.5));
  PropagatorConfig c = quiet(5e-4);
  c.kinetic_enabled = false;
  for (double gamma : {0.2, 2.0}) {
    Propagator prop(g, PhysicalParams{}, c, gamma);
    DimerState rho = init;
    prop.advance(rho, DecoherenceSchedule::constant(gamma, 0.3), 1000);
    for (std::size_t i : {48u, 56u, 64u}) {
      const double nrm = 2.0 * init.at(0, 0, i, i).real();  // |phi0(r)|^2
      const auto ref = oracles::bloch_solve(g.r(i), gamma, 0.3, rho0, 0.5, PhysicalParams{});
      CHECK(std::abs(rho.at(0, 0, i, i) - nrm * ref.r11) < 1e-10);
      CHECK(std::abs(rho.at(0, 1, i, i) - nrm * ref.r12) < 1e-10);
      CHECK(std::abs(rho.at(1, 1, i, i) - nrm * ref.r22) < 1e-10);
    }
  }
}

TEST_CASE("non-finite values abort with the last good time") {
  const SpatialGrid g(4.0, 12.0, 16);
  Propagator prop(g, PhysicalParams{}, quiet(1e-3), 0.0);
  DimerState rho = build_initial_state(g, InitialPacket{8.0, 0.5, Surface::repulsive});
  rho.set_time(1.0);
  rho.at(0, 0, 3, 3) = Complex(INFINITY, 0.0);
  try {
    prop.advance(rho, DecoherenceSchedule::constant(0.0), 10);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.last_good_time() == doctest::Approx(1.0));
  }
}

TEST_CASE("propagate records and observers") {
  const SpatialGrid g(4.0, 12.0, 16);
  Propagator prop(g, PhysicalParams{}, quiet(1e-2), 0.0);
  const DimerState init = build_initial_state(g, InitialPacket{8.0, 0.5, Surface::repulsive});
  std::vector<double> seen;
  std::vector<Observer> obs{{0, {0.254, 0.5}, [&](const DimerState& s, double) { seen.push_back(s.time()); }}};
  const auto res = propagate(init, prop, DecoherenceSchedule::constant(0.0), 1.0, 30, obs);
  REQUIRE(res.records.size() == 5);  // steps 0, 30, 60, 90, 100
  CHECK(res.records[1].t == doctest::Approx(0.3));
  CHECK(res.records.back().t == doctest::Approx(1.0));
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == doctest::Approx(0.25));
  CHECK(step_count(0.0, 19.8, 5e-4) == 39600);
  CHECK_THROWS_AS(step_count(0.0, 1.0003, 1e-3), ValidationError);
  CHECK_THROWS_AS(propagate(init, prop, DecoherenceSchedule::constant(0.0), 0.99999, 10), ValidationError);
  std::vector<Observer> late{{0, {2.0}, [](const DimerState&, double) {}}};
  CHECK_THROWS_AS(propagate(init, prop, DecoherenceSchedule::constant(0.0), 1.0, 10, late), ValidationError);
}

TEST_CASE("runs are bitwise reproducible with the estimate planner") {
  const SpatialGrid g(2.0, 34.0, 64);
  const DimerState init = build_initial_state(g, InitialPacket{9.0, 0.5, Surface::repulsive});
  PropagatorConfig c = quiet(1e-3);
  c.absorber_width = 2.0;
  const auto sched = DecoherenceSchedule::pulses(4.0, {0.1}, 0.05);
  DimerState a = init, b = init;
  Propagator(g, PhysicalParams{}, c, 4.0).advance(a, sched, 200);
  Propagator(g, PhysicalParams{}, c, 4.0).advance(b, sched, 200);
  CHECK(max_abs_difference(a, b) == 0.0);
}
