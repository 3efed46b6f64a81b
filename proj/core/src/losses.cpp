#include "vecmap/losses.hpp"

#include <cmath>
#include <optional>

namespace vecmap {
namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Ground-truth class targeted by each prediction, if any.
std::vector<std::optional<ElementClass>> targets(
    std::size_t n_preds, std::span<const MapElement> gts,
    const HierarchicalMatch& match) {
  std::vector<std::optional<ElementClass>> out(n_preds);
  for (const auto& pair : match.instance.pairs) out[pair.pred] = gts[pair.gt].cls;
  return out;
}

std::vector<Point2D> aligned_gt(const MapElement& gt,
                                const PointAssignment& assignment) {
  return apply_permutation(gt.points, assignment.perm);
}

// d cos(a, b) / d a. In 2D the gradient is perpendicular to a with magnitude
// cross(a, b) / (|a|^3 |b|), which is exactly zero for parallel edges.
Point2D cosine_grad(Point2D a, Point2D b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na < kDegenerateEdgeNorm || nb < kDegenerateEdgeNorm) return {};
  const double scale = cross(a, b) / (na * na * na * nb);
  return Point2D{-a.y, a.x} * scale;
}

}  // namespace

double cosine_similarity(Point2D a, Point2D b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na < kDegenerateEdgeNorm || nb < kDegenerateEdgeNorm) return 0.0;
  return dot(a, b) / (na * nb);
}

double classification_loss(std::span<const PredictedElement> preds,
                           std::span<const MapElement> gts,
                           const HierarchicalMatch& match,
                           const CostConfig& cfg) {
  const auto target = targets(preds.size(), gts, match);
  double loss = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (int c = 0; c < kNumClasses; ++c) {
      const double p = preds[i].scores[c];
      const bool positive = target[i] && class_index(*target[i]) == c;
      loss += positive ? focal_positive(p, cfg.focal())
                       : focal_negative(p, cfg.focal());
    }
  }
  return loss;
}

double point2point_loss(std::span<const PredictedElement> preds,
                        std::span<const MapElement> gts,
                        const HierarchicalMatch& match) {
  double loss = 0.0;
  for (std::size_t k = 0; k < match.instance.pairs.size(); ++k) {
    const auto& pair = match.instance.pairs[k];
    loss += ordered_point_cost(preds[pair.pred].points, gts[pair.gt].points,
                               match.point_level[k].perm);
  }
  return loss;
}

double edge_direction_loss(std::span<const PredictedElement> preds,
                           std::span<const MapElement> gts,
                           const HierarchicalMatch& match) {
  double loss = 0.0;
  for (std::size_t k = 0; k < match.instance.pairs.size(); ++k) {
    const auto& pair = match.instance.pairs[k];
    const auto& gt = gts[pair.gt];
    const auto pred_edges = edges(preds[pair.pred].points, gt.kind);
    const auto gt_edges = edges(aligned_gt(gt, match.point_level[k]), gt.kind);
    for (std::size_t j = 0; j < pred_edges.size(); ++j) {
      loss -= cosine_similarity(pred_edges[j], gt_edges[j]);
    }
  }
  return loss;
}

LossBreakdown total_loss(std::span<const PredictedElement> preds,
                         std::span<const MapElement> gts,
                         const HierarchicalMatch& match,
                         const LossWeights& weights, const CostConfig& cfg) {
  LossBreakdown out;
  out.cls = classification_loss(preds, gts, match, cfg);
  out.p2p = point2point_loss(preds, gts, match);
  out.dir = edge_direction_loss(preds, gts, match);
  out.total = weights.classification * out.cls + weights.point2point * out.p2p +
              weights.direction * out.dir;
  return out;
}

LossGradients loss_gradients(std::span<const PredictedElement> preds,
                             std::span<const MapElement> gts,
                             const HierarchicalMatch& match,
                             const LossWeights& weights, const CostConfig& cfg) {
  LossGradients grads;
  grads.d_points.resize(preds.size());
  grads.d_scores.resize(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    grads.d_points[i].assign(preds[i].points.size(), Point2D{});
  }

  const auto target = targets(preds.size(), gts, match);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (int c = 0; c < kNumClasses; ++c) {
      const double p = preds[i].scores[c];
      const bool positive = target[i] && class_index(*target[i]) == c;
      const double g = positive ? focal_positive_grad(p, cfg.focal())
                                : focal_negative_grad(p, cfg.focal());
      grads.d_scores[i][c] = weights.classification * g;
    }
  }

  for (std::size_t k = 0; k < match.instance.pairs.size(); ++k) {
    const auto& pair = match.instance.pairs[k];
    const auto& gt = gts[pair.gt];
    const auto& pred = preds[pair.pred].points;
    const auto aligned = aligned_gt(gt, match.point_level[k]);
    auto& d = grads.d_points[pair.pred];

    for (std::size_t j = 0; j < pred.size(); ++j) {
      d[j].x += weights.point2point * sign(pred[j].x - aligned[j].x);
      d[j].y += weights.point2point * sign(pred[j].y - aligned[j].y);
    }

    // Edge j runs pred[j] - pred[j + 1]; the loss is -cos.
    const auto pred_edges = edges(pred, gt.kind);
    const auto gt_edges = edges(aligned, gt.kind);
    const std::size_t n = pred.size();
    for (std::size_t j = 0; j < pred_edges.size(); ++j) {
      const Point2D g = cosine_grad(pred_edges[j], gt_edges[j]) * -weights.direction;
      d[j] = d[j] + g;
      d[(j + 1) % n] = d[(j + 1) % n] - g;
    }
  }
  return grads;
}

}  // namespace vecmap
