#include <benchmark/benchmark.h>

#include "equigeo/engine.hpp"
#include "equigeo/homspace.hpp"
#include "equigeo/solver.hpp"

namespace {

using namespace equigeo;

void BM_BuildSoBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_so_basis(n));
  }
}
BENCHMARK(BM_BuildSoBasis)->Arg(4)->Arg(6)->Arg(8);

void BM_BuildSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_space(SpaceFamily::stiefel_v2, {n}));
  }
}
BENCHMARK(BM_BuildSpace)->Arg(5)->Arg(8);

void BM_GenerateSystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpaceConfig config = build_space(SpaceFamily::stiefel_v2, {n});
  MetricClassPartition partition =
      MetricClassPartition::singletons(config.module_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_system(config, partition));
  }
}
BENCHMARK(BM_GenerateSystem)->Arg(5)->Arg(8);

void BM_SolveW6(benchmark::State& state) {
  SpaceConfig config = build_space(SpaceFamily::wallach_u3, {});
  QuadraticSystem system = generate_system(
      config, MetricClassPartition::singletons(config.module_count()));
  const int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(system, restarts, 1e-12, 7));
  }
}
BENCHMARK(BM_SolveW6)->Arg(10)->Arg(100);

void BM_CrossResiduals(benchmark::State& state) {
  SpaceConfig config = build_space(SpaceFamily::wallach_sp3, {});
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(config.dim_m(), 0.1, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_residuals(config, x));
  }
}
BENCHMARK(BM_CrossResiduals);

}  // namespace

BENCHMARK_MAIN();
