// Scaling and hot-path timings. The solver carries the full memory kernel,
// so its cost grows quadratically in the step count; the complexity fit
// below makes a regression in that exponent visible.

#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "fractb/cost_effectiveness.hpp"
#include "fractb/focp.hpp"
#include "fractb/grid.hpp"
#include "fractb/mittag_leffler.hpp"
#include "fractb/pece.hpp"
#include "fractb/sensitivity.hpp"
#include "fractb/tb_model.hpp"

namespace {

void BM_SolveCaputoDecay(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const fractb::TimeGrid grid(1.0, n);
  const fractb::VectorField decay{
      1, [](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = -x[0];
      }};
  const std::array<double, 1> x0 = {1.0};
  for (auto _ : state) {
    auto sol = solve_caputo_ivp(decay, x0, 0.8, grid);
    benchmark::DoNotOptimize(sol.values.data());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_SolveCaputoDecay)
    ->RangeMultiplier(2)
    ->Range(250, 2000)
    ->Complexity(benchmark::oNSquared);

void BM_SimulateTb(benchmark::State& state) {
  const fractb::ModelParams p;
  const fractb::StateVec x0 = endemic_equilibrium(p);
  const fractb::TimeGrid grid(5.0, 1000);
  for (auto _ : state) {
    auto states = simulate(p, x0, 0.9, grid);
    benchmark::DoNotOptimize(states.values.data());
  }
}
BENCHMARK(BM_SimulateTb);

void BM_MittagLeffler(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(fractb::mittag_leffler(0.8, -2.5));
}
BENCHMARK(BM_MittagLeffler);

void BM_SensitivityTable(benchmark::State& state) {
  const fractb::ModelParams p;
  for (auto _ : state) {
    auto table = fractb::sensitivity_table(p);
    benchmark::DoNotOptimize(table.data());
  }
}
BENCHMARK(BM_SensitivityTable);

// One forward-backward pass of the control sweep: state solve, costate
// solve, pointwise control law.
void BM_SweepIteration(benchmark::State& state) {
  const fractb::ModelParams p;
  const fractb::StateVec x0 = endemic_equilibrium(p);
  fractb::FocpConfig cfg;
  cfg.grid = fractb::TimeGrid(5.0, 500);
  const fractb::ControlPath u(cfg.grid, 0.0);
  for (auto _ : state) {
    const auto states = simulate(p, x0, cfg.alpha, cfg.grid, u.values);
    const auto costates = solve_costates(states, u, p, cfg.alpha);
    std::vector<double> refreshed(cfg.grid.nodes());
    for (std::size_t j = 0; j < cfg.grid.nodes(); ++j)
      refreshed[j] = fractb::optimal_control_law(
          states.at(j)[fractb::kI], costates.at(j)[fractb::kP3],
          costates.at(j)[fractb::kP4], cfg.B, cfg.rho, cfg.u_max);
    benchmark::DoNotOptimize(refreshed.data());
  }
}
BENCHMARK(BM_SweepIteration);

}  // namespace

BENCHMARK_MAIN();
