#include "vecmap/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vecmap {
namespace {

void check_lengths(std::size_t pred, std::size_t gt) {
  if (pred != gt) {
    throw std::invalid_argument("predicted point count " + std::to_string(pred) +
                                " does not match ground truth count " +
                                std::to_string(gt));
  }
}

double directed_mean_nearest(std::span<const Point2D> from,
                             std::span<const Point2D> to) {
  double sum = 0.0;
  for (const auto& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : to) best = std::min(best, norm(a - b));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double manhattan_distance(Point2D a, Point2D b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double focal_class_cost(const std::array<double, kNumClasses>& scores,
                        ElementClass target, const CostConfig& cfg) {
  const double p = scores[class_index(target)];
  return focal_positive(p, cfg.focal()) - focal_negative(p, cfg.focal());
}

double ordered_point_cost(std::span<const Point2D> pred,
                          std::span<const Point2D> gt,
                          const PermutationDescriptor& perm) {
  check_lengths(pred.size(), gt.size());
  const int n = static_cast<int>(gt.size());
  double cost = 0.0;
  for (int j = 0; j < n; ++j) cost += manhattan_distance(pred[j], gt[perm.index(j, n)]);
  return cost;
}

PointAssignment point_level_match(std::span<const Point2D> pred_points,
                                  const MapElement& gt) {
  check_lengths(pred_points.size(), gt.points.size());
  const auto group =
      permutation_group(gt.kind, static_cast<int>(gt.points.size()));
  PointAssignment best{group.members.front(),
                       std::numeric_limits<double>::infinity()};
  for (const auto& perm : group.members) {
    const double cost = ordered_point_cost(pred_points, gt.points, perm);
    if (cost < best.cost) best = {perm, cost};
  }
  return best;
}

double chamfer_position_cost(std::span<const Point2D> pred_points,
                             std::span<const Point2D> gt_points) {
  if (pred_points.empty() || gt_points.empty()) {
    throw std::invalid_argument("chamfer distance of an empty point set");
  }
  return 0.5 * (directed_mean_nearest(pred_points, gt_points) +
                directed_mean_nearest(gt_points, pred_points));
}

CostMatrix instance_cost_matrix(std::span<const PredictedElement> preds,
                                std::span<const MapElement> gts,
                                const CostConfig& cfg, PointOrdering ordering) {
  CostMatrix cost(gts.size(), preds.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (std::size_t p = 0; p < preds.size(); ++p) {
      double position = 0.0;
      if (cfg.position_cost == PositionCost::Chamfer) {
        position = chamfer_position_cost(preds[p].points, gts[g].points);
      } else if (ordering == PointOrdering::Fixed) {
        position = ordered_point_cost(preds[p].points, gts[g].points, {});
      } else {
        position = point_level_match(preds[p].points, gts[g]).cost;
      }
      cost(g, p) = focal_class_cost(preds[p].scores, gts[g].cls, cfg) + position;
    }
  }
  return cost;
}

InstanceAssignment instance_match(std::span<const PredictedElement> preds,
                                  std::span<const MapElement> gts,
                                  const CostConfig& cfg, PointOrdering ordering) {
  if (preds.size() < gts.size()) {
    throw CapacityError(std::to_string(gts.size()) +
                        " ground-truth elements exceed " +
                        std::to_string(preds.size()) + " prediction slots");
  }
  const auto solved = solve_assignment(instance_cost_matrix(preds, gts, cfg, ordering));
  InstanceAssignment out;
  out.total_cost = solved.total_cost;
  out.pairs.reserve(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    out.pairs.push_back({solved.row_to_col[g], static_cast<int>(g)});
  }
  return out;
}

HierarchicalMatch hierarchical_match(std::span<const PredictedElement> preds,
                                     std::span<const MapElement> gts,
                                     const CostConfig& cfg,
                                     PointOrdering ordering) {
  HierarchicalMatch match;
  match.instance = instance_match(preds, gts, cfg, ordering);
  match.point_level.reserve(match.instance.pairs.size());
  for (const auto& pair : match.instance.pairs) {
    const auto& pred = preds[pair.pred].points;
    const auto& gt = gts[pair.gt];
    if (ordering == PointOrdering::Fixed) {
      match.point_level.push_back({{}, ordered_point_cost(pred, gt.points, {})});
    } else {
      match.point_level.push_back(point_level_match(pred, gt));
    }
  }
  return match;
}

}  // namespace vecmap
