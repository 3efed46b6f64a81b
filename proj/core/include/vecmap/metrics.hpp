#pragma once

#include <array>
#include <span>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

namespace vecmap {

struct APConfig {
  // Chamfer thresholds in meters.
  std::vector<double> thresholds{0.5, 1.0, 1.5};
  int interpolation_points = 101;
  // A prediction enters class c only when scores[c] > score_floor.
  double score_floor = 0.0;

  // Throws std::invalid_argument when thresholds are not positive and
  // strictly increasing or fewer than 2 interpolation points are requested.
  void validate() const;
};

struct APReport {
  std::vector<double> thresholds;
  // per_class_per_threshold[c][t] is the AP of class c at thresholds[t].
  std::array<std::vector<double>, kNumClasses> per_class_per_threshold;
  std::array<double, kNumClasses> per_class_ap{};
  double map = 0.0;
};

// Symmetric mean Chamfer distance in the units of the inputs. Throws
// std::invalid_argument on an empty set.
double chamfer_distance(std::span<const Point2D> a, std::span<const Point2D> b);

// Interpolated AP of a ranked detection list. `true_positive` holds the
// outcome of each detection in descending score order; `n_ground_truth` is
// the number of positives. Returns 0 when there are no positives.
double interpolated_ap(const std::vector<bool>& true_positive,
                       std::size_t n_ground_truth, int interpolation_points);

// Chamfer-thresholded AP over aligned scenes. Predictions are in normalized
// coordinates and are mapped back to meters with their scene's range.
APReport evaluate_ap(std::span<const std::vector<PredictedElement>> pred_scenes,
                     std::span<const MapScene> gt_scenes,
                     const APConfig& cfg = {});

}  // namespace vecmap
