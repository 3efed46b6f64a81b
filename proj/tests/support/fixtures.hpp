#pragma once

// Randomized scenes shared by unit and acceptance tests.

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "vecmap/losses.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/metrics.hpp"

namespace vecmap::testing {

struct LossConfiguration {
  std::vector<PredictedElement> preds;
  std::vector<MapElement> gts;
  HierarchicalMatch match;
};

// Random predictions and ground truth with the match computed once and
// frozen. Matched coordinates are pushed at least `kink_margin` away from
// their aligned ground-truth value so the Manhattan terms are differentiable.
inline LossConfiguration random_loss_configuration(std::mt19937_64& rng,
                                                   double kink_margin = 1e-3) {
  std::uniform_int_distribution<int> n_pred(3, 8);
  std::uniform_int_distribution<int> n_points(3, 8);
  std::uniform_int_distribution<int> cls(0, 2);
  std::uniform_real_distribution<double> score(0.05, 0.95);

  LossConfiguration cfg;
  const int np = n_pred(rng);
  const int nv = n_points(rng);
  std::uniform_int_distribution<int> n_gt(1, std::min(np, 4));
  const int ng = n_gt(rng);
  for (int i = 0; i < np; ++i) {
    PredictedElement p;
    for (auto& s : p.scores) s = score(rng);
    p.points = random_points(rng, nv);
    cfg.preds.push_back(std::move(p));
  }
  for (int g = 0; g < ng; ++g) {
    const ElementClass c = class_from_index(cls(rng));
    cfg.gts.push_back({c, kind_of(c), random_points(rng, nv)});
  }
  cfg.match = hierarchical_match(cfg.preds, cfg.gts);

  for (std::size_t k = 0; k < cfg.match.instance.pairs.size(); ++k) {
    const auto& pair = cfg.match.instance.pairs[k];
    const auto aligned =
        apply_permutation(cfg.gts[pair.gt].points, cfg.match.point_level[k].perm);
    auto& pts = cfg.preds[pair.pred].points;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      for (auto [v, ref] : {std::pair{&pts[j].x, aligned[j].x}, {&pts[j].y, aligned[j].y}}) {
        if (std::fabs(*v - ref) < kink_margin) {
          *v = ref + (*v >= ref ? 2.0 : -2.0) * kink_margin;
        }
      }
    }
  }
  return cfg;
}

// Flattens point coordinates (x, y per point, slot-major).
inline std::vector<double> flatten_points(const std::vector<PredictedElement>& preds) {
  std::vector<double> out;
  for (const auto& p : preds) {
    for (const auto& q : p.points) {
      out.push_back(q.x);
      out.push_back(q.y);
    }
  }
  return out;
}

inline std::vector<double> flatten_scores(const std::vector<PredictedElement>& preds) {
  std::vector<double> out;
  for (const auto& p : preds) out.insert(out.end(), p.scores.begin(), p.scores.end());
  return out;
}

inline std::vector<PredictedElement> with_points(std::vector<PredictedElement> preds,
                                                 const std::vector<double>& flat) {
  std::size_t i = 0;
  for (auto& p : preds) {
    for (auto& q : p.points) {
      q.x = flat[i++];
      q.y = flat[i++];
    }
  }
  return preds;
}

inline std::vector<PredictedElement> with_scores(std::vector<PredictedElement> preds,
                                                 const std::vector<double>& flat) {
  std::size_t i = 0;
  for (auto& p : preds) {
    for (auto& s : p.scores) s = flat[i++];
  }
  return preds;
}

struct GradientCheck {
  double points_error = 0.0;
  double scores_error = 0.0;
};

// Compares loss_gradients against central differences of total_loss with the
// match frozen.
inline GradientCheck check_gradients(const LossConfiguration& cfg, double h = 1e-5,
                                     const LossWeights& weights = {}) {
  const auto grads = loss_gradients(cfg.preds, cfg.gts, cfg.match, weights);
  std::vector<double> analytic_points;
  for (const auto& row : grads.d_points) {
    for (const auto& g : row) {
      analytic_points.push_back(g.x);
      analytic_points.push_back(g.y);
    }
  }
  std::vector<double> analytic_scores;
  for (const auto& row : grads.d_scores) {
    analytic_scores.insert(analytic_scores.end(), row.begin(), row.end());
  }

  const auto fd_points = central_differences(
      [&](const std::vector<double>& x) {
        return total_loss(with_points(cfg.preds, x), cfg.gts, cfg.match, weights).total;
      },
      flatten_points(cfg.preds), h);
  const auto fd_scores = central_differences(
      [&](const std::vector<double>& x) {
        return total_loss(with_scores(cfg.preds, x), cfg.gts, cfg.match, weights).total;
      },
      flatten_scores(cfg.preds), h);
  return {relative_error(analytic_points, fd_points),
          relative_error(analytic_scores, fd_scores)};
}

// A prediction that is a noisy copy of `gt` presented in a random equivalent
// ordering, so one ordering is clearly best.
inline PredictedElement noisy_copy(std::mt19937_64& rng, const MapElement& gt, double sigma) {
  const auto group = permutation_group(gt.kind, static_cast<int>(gt.points.size()));
  std::uniform_int_distribution<std::size_t> pick(0, group.members.size() - 1);
  std::normal_distribution<double> noise(0.0, sigma);
  PredictedElement p;
  p.scores = {0.3, 0.5, 0.2};
  p.points = apply_permutation(gt.points, group.members[pick(rng)]);
  for (auto& q : p.points) {
    q.x += noise(rng);
    q.y += noise(rng);
  }
  return p;
}

// Number of orderings attaining the minimum point cost.
inline int minimizer_count(const std::vector<Point2D>& pred, const MapElement& gt) {
  const auto orderings = enumerate_orderings(gt.kind, static_cast<int>(gt.points.size()));
  const double best = brute_point_match(pred, gt.points, gt.kind).cost;
  int count = 0;
  for (const auto& map : orderings) {
    double cost = 0.0;
    for (std::size_t j = 0; j < pred.size(); ++j) cost += l1(pred[j], gt.points[map[j]]);
    count += cost == best ? 1 : 0;
  }
  return count;
}

// Predictions equal to the ground truth with one-hot scores of 1.
inline std::vector<PredictedElement> perfect_predictions(const MapScene& scene) {
  std::vector<PredictedElement> out;
  for (const auto& e : scene.elements) {
    PredictedElement p;
    p.scores[class_index(e.cls)] = 1.0;
    p.points = normalize(e.points, scene.range);
    out.push_back(std::move(p));
  }
  return out;
}

// Two ground-truth dividers 20 m apart. The prediction scored 0.9 is exact;
// the one scored 0.8 is displaced 2 m sideways, beyond every threshold.
struct TwoDividerFixture {
  MapScene scene;
  std::vector<PredictedElement> preds;
};

inline TwoDividerFixture two_divider_fixture() {
  TwoDividerFixture f;
  auto line = [](double x) {
    std::vector<Point2D> pts;
    for (int j = 0; j < 20; ++j) pts.push_back({x, -19.0 + 2.0 * j});
    return pts;
  };
  f.scene.elements = {{ElementClass::Divider, ElementKind::Polyline, line(-10.0)},
                      {ElementClass::Divider, ElementKind::Polyline, line(10.0)}};
  PredictedElement exact;
  exact.scores = {0.0, 0.9, 0.0};
  exact.points = normalize(line(-10.0), f.scene.range);
  PredictedElement displaced;
  displaced.scores = {0.0, 0.8, 0.0};
  displaced.points = normalize(line(12.0), f.scene.range);
  f.preds = {exact, displaced};
  return f;
}

// Oracle value for the fixture: ranked outcomes [TP, FP] against 2 positives.
inline double two_divider_expected_ap() { return pr_curve_ap({1, 0}, 2, 101); }

}  // namespace vecmap::testing
