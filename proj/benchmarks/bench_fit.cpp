#include <benchmark/benchmark.h>

#include "vecmap/fitter.hpp"
#include "vecmap/scenegen.hpp"

using namespace vecmap;

namespace {

// Cost per fitting iteration: match, loss, gradients, and the update.
void BM_FitIteration(benchmark::State& state) {
  const auto scene = generate_scene(benchmark_scene_spec(0));
  FitConfig cfg;
  cfg.mode = state.range(0) ? FitMode::FixedOrder : FitMode::PermutationEquivalent;
  cfg.iterations = 10;
  for (auto _ : state) benchmark::DoNotOptimize(fit(scene, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.iterations);
}
BENCHMARK(BM_FitIteration)->Arg(0)->Arg(1);

}  // namespace
