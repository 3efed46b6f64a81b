#pragma once

#include <array>
#include <span>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

namespace vecmap {

struct LossWeights {
  double classification = 2.0;
  double point2point = 5.0;
  double direction = 5e-3;
};

struct LossBreakdown {
  double cls = 0.0;
  double p2p = 0.0;
  double dir = 0.0;
  double total = 0.0;
};

struct LossGradients {
  // d_points[i][j] = d total / d preds[i].points[j], per coordinate.
  std::vector<std::vector<Point2D>> d_points;
  // d_scores[i][c] = d total / d preds[i].scores[c].
  std::vector<std::array<double, kNumClasses>> d_scores;
};

// Edge norms below this make the cosine similarity (and its gradient) zero.
inline constexpr double kDegenerateEdgeNorm = 1e-8;

// Cosine similarity of two edges, 0 when either is degenerate.
double cosine_similarity(Point2D a, Point2D b);

// Sigmoid focal loss summed over every prediction and class slot. Matched
// predictions target their ground-truth class; the rest target nothing.
double classification_loss(std::span<const PredictedElement> preds,
                           std::span<const MapElement> gts,
                           const HierarchicalMatch& match,
                           const CostConfig& cfg = {});

// Manhattan distance between each matched predicted point and its
// permutation-aligned ground-truth point.
double point2point_loss(std::span<const PredictedElement> preds,
                        std::span<const MapElement> gts,
                        const HierarchicalMatch& match);

// Negative sum of cosine similarities between predicted edges and the edges
// of the permutation-aligned ground truth.
double edge_direction_loss(std::span<const PredictedElement> preds,
                           std::span<const MapElement> gts,
                           const HierarchicalMatch& match);

LossBreakdown total_loss(std::span<const PredictedElement> preds,
                         std::span<const MapElement> gts,
                         const HierarchicalMatch& match,
                         const LossWeights& weights = {},
                         const CostConfig& cfg = {});

// Analytic gradient of total_loss with the match held fixed. Manhattan
// subgradients use sign(0) = 0.
LossGradients loss_gradients(std::span<const PredictedElement> preds,
                             std::span<const MapElement> gts,
                             const HierarchicalMatch& match,
                             const LossWeights& weights = {},
                             const CostConfig& cfg = {});

}  // namespace vecmap
