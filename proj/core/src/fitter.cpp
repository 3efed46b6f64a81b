#include "vecmap/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vecmap/random.hpp"
#include "vecmap/scenegen.hpp"

namespace vecmap {
namespace {

constexpr double kAdamEpsilon = 1e-8;
constexpr std::uint64_t kInitStream = 11;
constexpr std::uint64_t kReorderStream = 12;

// First and second moment estimates for one scalar parameter.
struct Moments {
  double m = 0.0;
  double v = 0.0;
};

class Adam {
 public:
  Adam(const FitConfig& cfg, std::size_t n_params)
      : cfg_(cfg), moments_(n_params) {}

  void next_step() {
    ++step_;
    correction_1_ = 1.0 - std::pow(cfg_.moment_decay_1, step_);
    correction_2_ = 1.0 - std::pow(cfg_.moment_decay_2, step_);
  }

  // Returns the update to add to parameter `index`.
  double delta(std::size_t index, double grad) {
    auto& mo = moments_[index];
    mo.m = cfg_.moment_decay_1 * mo.m + (1.0 - cfg_.moment_decay_1) * grad;
    mo.v = cfg_.moment_decay_2 * mo.v + (1.0 - cfg_.moment_decay_2) * grad * grad;
    const double m_hat = mo.m / correction_1_;
    const double v_hat = mo.v / correction_2_;
    return -cfg_.step_size * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
  }

 private:
  const FitConfig& cfg_;
  std::vector<Moments> moments_;
  int step_ = 0;
  double correction_1_ = 1.0;
  double correction_2_ = 1.0;
};

}  // namespace

void FitConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(step_size > 0.0)) throw std::invalid_argument("step size must be > 0");
  if (!(moment_decay_1 >= 0.0 && moment_decay_1 < 1.0) ||
      !(moment_decay_2 >= 0.0 && moment_decay_2 < 1.0)) {
    throw std::invalid_argument("moment decays must lie in [0, 1)");
  }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<PredictedElement> FitState::predictions() const {
  std::vector<PredictedElement> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i].points = points[i];
    for (int c = 0; c < kNumClasses; ++c) out[i].scores[c] = sigmoid(logits[i][c]);
  }
  return out;
}

FitState initial_state(const MapScene& gt, const FitConfig& cfg) {
  FitState state;
  state.points.resize(kNumInstanceSlots);
  state.logits.resize(kNumInstanceSlots);
  for (int i = 0; i < kNumInstanceSlots; ++i) {
    Rng rng(cfg.seed, {kInitStream, static_cast<std::uint64_t>(i)});
    for (int j = 0; j < gt.n_points; ++j) {
      const double x = rng.uniform();
      state.points[i].push_back({x, rng.uniform()});
    }
    state.logits[i].fill(cfg.initial_logit);
  }
  return state;
}

FitTrace fit(const MapScene& gt, const FitConfig& cfg) {
  return fit(gt, cfg, initial_state(gt, cfg));
}

FitTrace fit(const MapScene& gt, const FitConfig& cfg, FitState state) {
  cfg.validate();
  if (gt.elements.empty()) throw std::invalid_argument("ground-truth scene is empty");
  if (state.points.size() != state.logits.size()) {
    throw std::invalid_argument("fit state has mismatched slot counts");
  }
  const auto reference = normalized_elements(gt);
  auto gts = reference;
  const PointOrdering ordering = cfg.mode == FitMode::PermutationEquivalent
                                     ? PointOrdering::Equivalent
                                     : PointOrdering::Fixed;

  std::size_t n_params = 0;
  for (const auto& pts : state.points) n_params += 2 * pts.size() + kNumClasses;
  Adam adam(cfg, n_params);

  FitTrace trace;
  trace.losses.reserve(cfg.iterations);
  for (int it = 0; it < cfg.iterations; ++it) {
    if (cfg.reorder_annotations) {
      for (std::size_t g = 0; g < gts.size(); ++g) {
        Rng rng(cfg.seed, {kReorderStream, static_cast<std::uint64_t>(it), g});
        const auto group = permutation_group(
            gts[g].kind, static_cast<int>(reference[g].points.size()));
        const auto& perm = group.members[rng.uniform_int(
            static_cast<int>(group.members.size()))];
        gts[g].points = apply_permutation(reference[g].points, perm);
      }
    }
    const auto preds = state.predictions();
    const auto match = hierarchical_match(preds, gts, cfg.cost, ordering);
    trace.losses.push_back(total_loss(preds, gts, match, cfg.weights, cfg.cost));
    const auto grads = loss_gradients(preds, gts, match, cfg.weights, cfg.cost);

    adam.next_step();
    std::size_t index = 0;
    for (std::size_t i = 0; i < state.points.size(); ++i) {
      for (std::size_t j = 0; j < state.points[i].size(); ++j) {
        auto& p = state.points[i][j];
        const auto& g = grads.d_points[i][j];
        p.x = std::clamp(p.x + adam.delta(index++, g.x), 0.0, 1.0);
        p.y = std::clamp(p.y + adam.delta(index++, g.y), 0.0, 1.0);
      }
      for (int c = 0; c < kNumClasses; ++c) {
        const double s = preds[i].scores[c];
        state.logits[i][c] += adam.delta(index++, grads.d_scores[i][c] * s * (1.0 - s));
      }
    }
  }

  trace.final_predictions = state.predictions();
  const std::vector<std::vector<PredictedElement>> pred_scenes{trace.final_predictions};
  trace.report = evaluate_ap(pred_scenes, std::span<const MapScene>(&gt, 1));
  return trace;
}

}  // namespace vecmap
