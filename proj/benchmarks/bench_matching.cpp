#include <benchmark/benchmark.h>

#include <random>

#include "vecmap/hungarian.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/metrics.hpp"
#include "vecmap/scenegen.hpp"

using namespace vecmap;

namespace {

std::vector<Point2D> random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

void BM_Assignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  CostMatrix cost(n, kNumInstanceSlots);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) cost(r, c) = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_assignment(cost));
}
BENCHMARK(BM_Assignment)->Arg(7)->Arg(20)->Arg(50);

void BM_PointLevelMatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kind = state.range(1) ? ElementKind::Polygon : ElementKind::Polyline;
  std::mt19937_64 rng(2);
  const auto pred = random_points(rng, n);
  const MapElement gt{kind == ElementKind::Polygon ? ElementClass::PedCrossing
                                                   : ElementClass::Divider,
                      kind, random_points(rng, n)};
  for (auto _ : state) benchmark::DoNotOptimize(point_level_match(pred, gt));
}
BENCHMARK(BM_PointLevelMatch)->Args({20, 0})->Args({20, 1});

void BM_HierarchicalMatch(benchmark::State& state) {
  const auto scene = generate_scene(benchmark_scene_spec(0));
  const auto preds = perturb(scene, {0, 0.5, 0.0, 5, ScoreModel::NoisyConfidence});
  const auto gts = normalized_elements(scene);
  for (auto _ : state) benchmark::DoNotOptimize(hierarchical_match(preds, gts));
}
BENCHMARK(BM_HierarchicalMatch);

void BM_EvaluateAP(benchmark::State& state) {
  std::vector<MapScene> scenes;
  std::vector<std::vector<PredictedElement>> preds;
  for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(state.range(0)); ++seed) {
    scenes.push_back(generate_scene(benchmark_scene_spec(seed)));
    preds.push_back(perturb(scenes.back(), {seed, 0.5, 0.1, 5, ScoreModel::NoisyConfidence}));
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_ap(preds, scenes));
}
BENCHMARK(BM_EvaluateAP)->Arg(1)->Arg(20);

}  // namespace
