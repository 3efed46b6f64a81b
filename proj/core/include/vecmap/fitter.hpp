#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/losses.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/metrics.hpp"

namespace vecmap {

enum class FitMode { PermutationEquivalent, FixedOrder };

struct FitConfig {
  FitMode mode = FitMode::PermutationEquivalent;
  int iterations = 500;
  double step_size = 0.01;
  double moment_decay_1 = 0.9;
  double moment_decay_2 = 0.999;
  std::uint64_t seed = 0;
  LossWeights weights;
  CostConfig cost;
  // Starting logit of every class slot.
  double initial_logit = -2.0;
  // Present every ground-truth element in a freshly drawn equivalent ordering
  // at each iteration, as annotation order varies between training samples.
  bool reorder_annotations = true;

  void validate() const;
};

// Free parameters of the prediction slots: normalized points and per-class
// logits.
struct FitState {
  std::vector<std::vector<Point2D>> points;
  std::vector<std::array<double, kNumClasses>> logits;

  std::vector<PredictedElement> predictions() const;
};

struct FitTrace {
  // Loss at the start of each iteration, before its update.
  std::vector<LossBreakdown> losses;
  std::vector<PredictedElement> final_predictions;
  APReport report;
};

double sigmoid(double z);

// kNumInstanceSlots slots with points uniform in [0,1]^2 and every logit at
// cfg.initial_logit.
FitState initial_state(const MapScene& gt, const FitConfig& cfg);

// Adam descent on the slot parameters against a ground-truth scene, with the
// matching recomputed every iteration. Points are clamped to [0,1]^2.
FitTrace fit(const MapScene& gt, const FitConfig& cfg);
FitTrace fit(const MapScene& gt, const FitConfig& cfg, FitState state);

}  // namespace vecmap
