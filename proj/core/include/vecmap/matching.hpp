#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "vecmap/focal.hpp"
#include "vecmap/geometry.hpp"
#include "vecmap/hungarian.hpp"

namespace vecmap {

// A predicted map element in normalized [0,1]^2 coordinates.
struct PredictedElement {
  // Post-sigmoid confidence per class, indexed by class_index().
  std::array<double, kNumClasses> scores{};
  std::vector<Point2D> points;

  friend bool operator==(const PredictedElement&,
                         const PredictedElement&) = default;
};

enum class PositionCost { Point2Point, Chamfer };

struct CostConfig {
  PositionCost position_cost = PositionCost::Point2Point;
  double focal_gamma = 2.0;
  double focal_alpha = 0.25;

  FocalParams focal() const { return {focal_gamma, focal_alpha}; }
};

// Which orderings of a ground-truth point set count as correct.
// Fixed uses only the stored order (Forward-0).
enum class PointOrdering { Equivalent, Fixed };

struct MatchedPair {
  int pred = 0;
  int gt = 0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// Predictions absent from `pairs` are assigned no object.
struct InstanceAssignment {
  // One entry per ground-truth element, ordered by gt index.
  std::vector<MatchedPair> pairs;
  // Sum of matched cost-matrix entries, in gt order.
  double total_cost = 0.0;
};

struct PointAssignment {
  PermutationDescriptor perm;
  double cost = 0.0;
};

struct HierarchicalMatch {
  InstanceAssignment instance;
  // point_level[k] belongs to instance.pairs[k].
  std::vector<PointAssignment> point_level;
};

// Thrown when there are fewer predictions than ground-truth elements.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

double manhattan_distance(Point2D a, Point2D b);

// Focal matching cost: positive minus negative focal term at the target class.
double focal_class_cost(const std::array<double, kNumClasses>& scores,
                        ElementClass target, const CostConfig& cfg = {});

// Sum of Manhattan distances between pred[j] and gt[perm(j)].
double ordered_point_cost(std::span<const Point2D> pred,
                          std::span<const Point2D> gt,
                          const PermutationDescriptor& perm);

// Lowest-cost member of the ground truth's permutation group; ties go to the
// earliest member in enumeration order.
PointAssignment point_level_match(std::span<const Point2D> pred_points,
                                  const MapElement& gt);

// Symmetric mean Chamfer distance with Euclidean point distances.
double chamfer_position_cost(std::span<const Point2D> pred_points,
                             std::span<const Point2D> gt_points);

// Entry (g, p) is the cost of assigning prediction p to ground truth g.
CostMatrix instance_cost_matrix(std::span<const PredictedElement> preds,
                                std::span<const MapElement> gts,
                                const CostConfig& cfg,
                                PointOrdering ordering = PointOrdering::Equivalent);

InstanceAssignment instance_match(std::span<const PredictedElement> preds,
                                  std::span<const MapElement> gts,
                                  const CostConfig& cfg = {},
                                  PointOrdering ordering = PointOrdering::Equivalent);

// Instance-level matching followed by point-level matching of every pair.
HierarchicalMatch hierarchical_match(
    std::span<const PredictedElement> preds, std::span<const MapElement> gts,
    const CostConfig& cfg = {},
    PointOrdering ordering = PointOrdering::Equivalent);

}  // namespace vecmap
