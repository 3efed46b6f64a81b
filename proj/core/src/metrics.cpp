#include "vecmap/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vecmap {
namespace {

struct Candidate {
  std::size_t scene = 0;
  std::size_t pred = 0;
  double score = 0.0;
};

// distances[p][g]: Chamfer distance in meters between prediction p and GT g
// of one scene.
using SceneDistances = std::vector<std::vector<double>>;

SceneDistances scene_distances(const std::vector<PredictedElement>& preds,
                               const MapScene& gt) {
  SceneDistances out(preds.size());
  for (std::size_t p = 0; p < preds.size(); ++p) {
    const auto metric = denormalize(preds[p].points, gt.range);
    out[p].reserve(gt.elements.size());
    for (const auto& element : gt.elements) {
      out[p].push_back(chamfer_distance(metric, element.points));
    }
  }
  return out;
}

}  // namespace

void APConfig::validate() const {
  if (thresholds.empty()) throw std::invalid_argument("no AP thresholds");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0)) {
      throw std::invalid_argument("AP thresholds must be positive");
    }
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw std::invalid_argument("AP thresholds must be strictly increasing");
    }
  }
  if (interpolation_points < 2) {
    throw std::invalid_argument("need at least 2 interpolation points");
  }
}

double chamfer_distance(std::span<const Point2D> a, std::span<const Point2D> b) {
  return chamfer_position_cost(a, b);
}

double interpolated_ap(const std::vector<bool>& true_positive,
                       std::size_t n_ground_truth, int interpolation_points) {
  if (n_ground_truth == 0 || true_positive.empty()) return 0.0;
  std::vector<double> recall(true_positive.size());
  std::vector<double> precision(true_positive.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < true_positive.size(); ++k) {
    if (true_positive[k]) ++tp;
    recall[k] = static_cast<double>(tp) / static_cast<double>(n_ground_truth);
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
  }
  // Running max from the tail: best precision at recall >= recall[k].
  for (std::size_t k = precision.size() - 1; k-- > 0;) {
    precision[k] = std::max(precision[k], precision[k + 1]);
  }
  const int steps = interpolation_points - 1;
  double sum = 0.0;
  std::size_t k = 0;
  for (int i = 0; i <= steps; ++i) {
    const double level = static_cast<double>(i) / steps;
    while (k < recall.size() && recall[k] < level) ++k;
    if (k == recall.size()) break;
    sum += precision[k];
  }
  return sum / interpolation_points;
}

APReport evaluate_ap(std::span<const std::vector<PredictedElement>> pred_scenes,
                     std::span<const MapScene> gt_scenes, const APConfig& cfg) {
  cfg.validate();
  if (pred_scenes.size() != gt_scenes.size()) {
    throw std::invalid_argument("prediction and ground-truth scene counts differ");
  }

  std::vector<SceneDistances> distances;
  distances.reserve(gt_scenes.size());
  for (std::size_t s = 0; s < gt_scenes.size(); ++s) {
    distances.push_back(scene_distances(pred_scenes[s], gt_scenes[s]));
  }

  APReport report;
  report.thresholds = cfg.thresholds;
  for (int c = 0; c < kNumClasses; ++c) {
    const ElementClass cls = class_from_index(c);
    std::vector<Candidate> candidates;
    std::size_t n_gt = 0;
    for (std::size_t s = 0; s < gt_scenes.size(); ++s) {
      for (const auto& e : gt_scenes[s].elements) n_gt += e.cls == cls ? 1 : 0;
      for (std::size_t p = 0; p < pred_scenes[s].size(); ++p) {
        const double score = pred_scenes[s][p].scores[c];
        if (score > cfg.score_floor) candidates.push_back({s, p, score});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.score > b.score;
                     });

    for (double tau : cfg.thresholds) {
      std::vector<std::vector<char>> taken(gt_scenes.size());
      for (std::size_t s = 0; s < gt_scenes.size(); ++s) {
        taken[s].assign(gt_scenes[s].elements.size(), 0);
      }
      std::vector<bool> outcome;
      outcome.reserve(candidates.size());
      for (const auto& cand : candidates) {
        const auto& gts = gt_scenes[cand.scene].elements;
        const auto& row = distances[cand.scene][cand.pred];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_gt = gts.size();
        for (std::size_t g = 0; g < gts.size(); ++g) {
          if (gts[g].cls != cls || taken[cand.scene][g]) continue;
          if (row[g] < best) {
            best = row[g];
            best_gt = g;
          }
        }
        const bool hit = best_gt < gts.size() && best < tau;
        if (hit) taken[cand.scene][best_gt] = 1;
        outcome.push_back(hit);
      }
      report.per_class_per_threshold[c].push_back(
          interpolated_ap(outcome, n_gt, cfg.interpolation_points));
    }
    const auto& row = report.per_class_per_threshold[c];
    report.per_class_ap[c] =
        std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
  }
  report.map = std::accumulate(report.per_class_ap.begin(),
                               report.per_class_ap.end(), 0.0) /
               kNumClasses;
  return report;
}

}  // namespace vecmap
