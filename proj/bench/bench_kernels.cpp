// Serial reference vs OpenMP kernels on the default-sized state.
//   ./bench_kernels --benchmark_filter=local_flow
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "zeno/hamiltonian.hpp"
#include "zeno/kernels.hpp"
#include "zeno/propagator.hpp"

using namespace zeno;

namespace {

struct Fixture {
  explicit Fixture(std::size_t n)
      : grid(2.0, 34.0, n),
        state(build_initial_state(grid, InitialPacket{9.0, 0.5, Surface::repulsive})),
        coupling(coupling_profile(grid, PhysicalParams{}, 50.0)),
        mask(n, 0.999) {}
  SpatialGrid grid;
  DimerState state;
  std::vector<double> coupling;
  std::vector<double> mask;
};

template <auto Kernel>
void local_flow(benchmark::State& st) {
  Fixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    Kernel(f.state, f.coupling, 0.2, 5e-4);
    benchmark::DoNotOptimize(f.state.block(0).data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

template <auto Kernel>
void mask(benchmark::State& st) {
  Fixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    Kernel(f.state, f.mask);
    benchmark::DoNotOptimize(f.state.block(0).data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

template <auto Kernel>
void hermiticity(benchmark::State& st) {
  Fixture f(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(f.state));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

void strang_steps(benchmark::State& st, Backend backend) {
  Fixture f(static_cast<std::size_t>(st.range(0)));
  PropagatorConfig c;
  c.backend = backend;
  c.planner = FftPlanner::estimate;
  Propagator prop(f.grid, PhysicalParams{}, c, 0.2);
  const auto sched = DecoherenceSchedule::constant(0.2);
  for (auto _ : st) prop.advance(f.state, sched, 10);
  st.SetItemsProcessed(st.iterations() * 10);
}

}  // namespace

BENCHMARK(local_flow<kernels::serial::local_flow>)->Name("local_flow/serial")->Arg(128)->Arg(256);
BENCHMARK(local_flow<kernels::parallel::local_flow>)->Name("local_flow/parallel")->Arg(128)->Arg(256);
BENCHMARK(mask<kernels::serial::apply_mask>)->Name("mask/serial")->Arg(256);
BENCHMARK(mask<kernels::parallel::apply_mask>)->Name("mask/parallel")->Arg(256);
BENCHMARK(hermiticity<kernels::serial::hermiticity_defect>)->Name("hermiticity/serial")->Arg(256);
BENCHMARK(hermiticity<kernels::parallel::hermiticity_defect>)->Name("hermiticity/parallel")->Arg(256);
BENCHMARK_CAPTURE(strang_steps, serial, Backend::serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(strang_steps, parallel, Backend::parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
