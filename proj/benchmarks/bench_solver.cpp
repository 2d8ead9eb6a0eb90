#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include <hjsc/hjsc.hpp>

namespace {

using namespace hjsc;

void BM_BellmanSweep1D(benchmark::State& state) {
  const ExampleCase c = *find_case("E1");
  auto grid = std::make_shared<const Grid>(c.domain, 2.0 / static_cast<double>(state.range(0)));
  SolverConfig cfg;
  cfg.search = state.range(1) ? ControlSearch::kCellExact : ControlSearch::kSampled;
  const BellmanOperator op(grid, c.hamiltonian, c.cost, cfg);
  std::vector<double> prev(grid->size(), 1.0);
  std::vector<double> next(grid->size());
  for (auto _ : state) {
    op.apply(prev, next);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid->size()));
}
BENCHMARK(BM_BellmanSweep1D)->ArgsProduct({{500, 2000}, {0, 1}});

void BM_BellmanSweep2D(benchmark::State& state) {
  auto grid = std::make_shared<const Grid>(Domain::disk({}, 1.0), 2.0 / static_cast<double>(state.range(0)));
  SolverConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(1));
  const BellmanOperator op(grid, PowerHamiltonian(2.0, 1.0), costs::bump(1), cfg);
  std::vector<double> prev(grid->size(), 1.0);
  std::vector<double> next(grid->size());
  for (auto _ : state) {
    op.apply(prev, next);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid->size()));
}
BENCHMARK(BM_BellmanSweep2D)->ArgsProduct({{50, 100}, {1, 4}})->UseRealTime();

void BM_Solve1D(benchmark::State& state) {
  const ExampleCase c = *find_case("E2");
  const Grid grid(c.domain, 2.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    Solution s = solve(c.hamiltonian, c.cost, grid);
    benchmark::DoNotOptimize(s.iterations);
  }
}
BENCHMARK(BM_Solve1D)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ExtractCurve(benchmark::State& state) {
  const ExampleCase c = *find_case("E2");
  const Solution s = solve(c.hamiltonian, c.cost, Grid(c.domain, 2e-3));
  for (auto _ : state) {
    MinimizingCurve curve = extract_curve(s.field, c.hamiltonian, c.cost, {0.8, 0.0}, 20.0);
    benchmark::DoNotOptimize(curve.size());
  }
}
BENCHMARK(BM_ExtractCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
