// Serial reference vs OpenMP path on the workloads that dominate the acceptance run.

#include <benchmark/benchmark.h>

#include <vector>

#include "waveid/fields.hpp"
#include "waveid/green.hpp"
#include "waveid/quadrature.hpp"
#include "waveid/sidf.hpp"

using namespace waveid;

namespace {

QuadratureSpec spec_for(const benchmark::State& state) {
  QuadratureSpec s;
  s.execution = state.range(1) ? Execution::parallel : Execution::serial;
  return s;
}

void BM_BoundaryFreeSidf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureSpec spec = spec_for(state);
  const SidfContext ctx{0.0, Bias::retarded, std::vector<double>(n, 0.0)};
  const GaussianField field(default_gaussian_params(n, ctx.t0, ctx.x_star));
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_free_sidf(field, ctx, Dimension(n), spec, false).residual);
  }
  state.counters["nodes"] = static_cast<double>(product_node_count(n, space_radius(field, ctx, spec), spec));
}

void BM_RetardedPotential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureSpec spec = spec_for(state);
  PulseSource pulse;
  pulse.emit_center.assign(n, 0.0);
  std::vector<double> xs(n, 0.0);
  xs[0] = 5.0;
  const std::vector<double> t = {5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dispersion_profile(Dimension(n), pulse, xs, t, spec)[0].value);
  }
}

// args: dimension, parallel flag
BENCHMARK(BM_BoundaryFreeSidf)->ArgsProduct({{1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RetardedPotential)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
