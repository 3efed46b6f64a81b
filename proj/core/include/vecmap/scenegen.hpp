#pragma once

#include <cstdint>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

namespace vecmap {

// Number of prediction slots (instance queries) per scene.
inline constexpr int kNumInstanceSlots = 50;

// Score given to padding slots.
inline constexpr double kPaddingScore = 1e-6;

struct SceneSpec {
  std::uint64_t seed = 0;
  int n_ped = 0;
  int n_divider = 0;
  int n_boundary = 0;
  SceneRange range;
  int n_points = kDefaultPointsPerElement;

  void validate() const;
};

enum class ScoreModel { Oracle, NoisyConfidence };

struct PerturbSpec {
  std::uint64_t seed = 0;
  double point_noise_sigma = 0.0;  // meters
  double drop_prob = 0.0;
  int false_positive_count = 0;
  ScoreModel score_model = ScoreModel::Oracle;

  void validate() const;
};

// Ground-truth scene: pedestrian crossings (convex quadrilaterals), dividers
// spanning the long axis, and boundaries near the lateral edges. Polygon start
// indices and polyline directions are randomized. Every element draws from its
// own stream, so adding elements of one class leaves the others unchanged.
MapScene generate_scene(const SceneSpec& spec);

// Noisy predictions of a scene in normalized coordinates: surviving elements
// first (in scene order), then false positives, then padding up to
// kNumInstanceSlots.
std::vector<PredictedElement> perturb(const MapScene& scene,
                                      const PerturbSpec& spec);

// The scene composition used by the ablation benchmark.
SceneSpec benchmark_scene_spec(std::uint64_t seed);

}  // namespace vecmap
