#include "vecmap/scenegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vecmap/random.hpp"

namespace vecmap {
namespace {

// Sub-stream ids. Each element of each category gets its own stream.
enum Stream : std::uint64_t {
  kPedStream = 1,
  kDividerStream = 2,
  kBoundaryStream = 3,
  kPerturbStream = 4,
  kFalsePositiveStream = 5,
};

Point2D clamp_to(Point2D p, const SceneRange& r) {
  return {std::clamp(p.x, r.x_min, r.x_max), std::clamp(p.y, r.y_min, r.y_max)};
}

// Random reordering from the element's equivalence group.
std::vector<Point2D> random_ordering(const std::vector<Point2D>& points,
                                     ElementKind kind, Rng& rng) {
  PermutationDescriptor perm;
  perm.direction = rng.bernoulli(0.5) ? Direction::Reverse : Direction::Forward;
  if (kind == ElementKind::Polygon) {
    perm.offset = rng.uniform_int(static_cast<int>(points.size()));
  }
  return apply_permutation(points, perm);
}

MapElement make_ped_crossing(const SceneRange& r, int n_points, Rng& rng) {
  const double w = r.x_max - r.x_min;
  const double h = r.y_max - r.y_min;
  const Point2D center{rng.uniform(r.x_min + 0.2 * w, r.x_max - 0.2 * w),
                       rng.uniform(r.y_min + 0.1 * h, r.y_max - 0.1 * h)};
  const double half_w = rng.uniform(0.05, 0.13) * w;
  const double half_d = rng.uniform(0.02, 0.05) * h;
  const double theta = rng.uniform(-0.3, 0.3);
  const double jitter = 0.1 * std::min(half_w, half_d);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<Point2D> corners;
  for (auto [sx, sy] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
    const double lx = sx * half_w + rng.uniform(-jitter, jitter);
    const double ly = sy * half_d + rng.uniform(-jitter, jitter);
    corners.push_back(clamp_to({center.x + c * lx - s * ly, center.y + s * lx + c * ly}, r));
  }
  auto points = resample(corners, ElementKind::Polygon, n_points);
  return {ElementClass::PedCrossing, ElementKind::Polygon,
          random_ordering(points, ElementKind::Polygon, rng)};
}

// A smooth curve along the long (y) axis around lateral offset x0.
MapElement make_long_polyline(ElementClass cls, const SceneRange& r, double x0,
                              double amplitude, int n_points, Rng& rng) {
  const double h = r.y_max - r.y_min;
  const double y_start = r.y_min + rng.uniform(0.0, 0.15) * h;
  const double y_end = r.y_max - rng.uniform(0.0, 0.15) * h;
  const double freq = rng.uniform(0.2, 0.8);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  constexpr int kRawVertices = 12;
  std::vector<Point2D> raw;
  for (int k = 0; k < kRawVertices; ++k) {
    const double t = static_cast<double>(k) / (kRawVertices - 1);
    const double x = x0 + amplitude * std::sin(2.0 * std::numbers::pi * freq * t + phase);
    raw.push_back(clamp_to({x, y_start + t * (y_end - y_start)}, r));
  }
  auto points = resample(raw, ElementKind::Polyline, n_points);
  return {cls, ElementKind::Polyline,
          random_ordering(points, ElementKind::Polyline, rng)};
}

MapElement make_divider(const SceneRange& r, int n_points, Rng& rng) {
  const double w = r.x_max - r.x_min;
  const double x0 = rng.uniform(r.x_min + 0.2 * w, r.x_max - 0.2 * w);
  return make_long_polyline(ElementClass::Divider, r, x0,
                            rng.uniform(0.0, 0.05) * w, n_points, rng);
}

MapElement make_boundary(const SceneRange& r, int n_points, Rng& rng) {
  const double w = r.x_max - r.x_min;
  const double inset = rng.uniform(0.03, 0.08) * w;
  const double x0 = rng.bernoulli(0.5) ? r.x_min + inset : r.x_max - inset;
  return make_long_polyline(ElementClass::Boundary, r, x0,
                            rng.uniform(0.0, 0.02) * w, n_points, rng);
}

MapElement make_element(ElementClass cls, const SceneRange& r, int n_points,
                        Rng& rng) {
  switch (cls) {
    case ElementClass::PedCrossing:
      return make_ped_crossing(r, n_points, rng);
    case ElementClass::Divider:
      return make_divider(r, n_points, rng);
    case ElementClass::Boundary:
      return make_boundary(r, n_points, rng);
  }
  throw std::logic_error("unreachable element class");
}

}  // namespace

void SceneSpec::validate() const {
  if (n_ped < 0 || n_divider < 0 || n_boundary < 0) {
    throw std::invalid_argument("element counts must be non-negative");
  }
  if (n_ped + n_divider + n_boundary > kNumInstanceSlots) {
    throw std::invalid_argument("scene holds at most " +
                                std::to_string(kNumInstanceSlots) + " elements");
  }
  if (!range.valid()) throw std::invalid_argument("invalid scene range");
  if (n_points < min_points(ElementKind::Polygon)) {
    throw std::invalid_argument("n_points must be at least 3");
  }
}

void PerturbSpec::validate() const {
  if (!(point_noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigma must be non-negative");
  }
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) {
    throw std::invalid_argument("drop probability must lie in [0, 1]");
  }
  if (false_positive_count < 0) {
    throw std::invalid_argument("false positive count must be non-negative");
  }
}

MapScene generate_scene(const SceneSpec& spec) {
  spec.validate();
  MapScene scene{spec.range, spec.n_points, {}};
  const struct {
    ElementClass cls;
    int count;
    Stream stream;
  } plan[] = {{ElementClass::PedCrossing, spec.n_ped, kPedStream},
              {ElementClass::Divider, spec.n_divider, kDividerStream},
              {ElementClass::Boundary, spec.n_boundary, kBoundaryStream}};
  for (const auto& entry : plan) {
    for (int i = 0; i < entry.count; ++i) {
      Rng rng(spec.seed, {entry.stream, static_cast<std::uint64_t>(i)});
      scene.elements.push_back(make_element(entry.cls, spec.range, spec.n_points, rng));
    }
  }
  return scene;
}

std::vector<PredictedElement> perturb(const MapScene& scene,
                                      const PerturbSpec& spec) {
  spec.validate();
  const SceneRange& range = scene.range;
  std::vector<PredictedElement> out;

  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    const auto& element = scene.elements[i];
    Rng rng(spec.seed, {kPerturbStream, i});
    if (rng.bernoulli(spec.drop_prob)) continue;
    PredictedElement pred;
    double displacement = 0.0;
    for (const auto& p : element.points) {
      const Point2D noisy = clamp_to(
          {p.x + spec.point_noise_sigma * rng.normal(),
           p.y + spec.point_noise_sigma * rng.normal()},
          range);
      displacement += norm(noisy - p);
      pred.points.push_back(normalize(noisy, range));
    }
    displacement /= static_cast<double>(element.points.size());
    const int c = class_index(element.cls);
    if (spec.score_model == ScoreModel::Oracle) {
      pred.scores[c] = 1.0;
    } else {
      pred.scores[c] = 0.05 + 0.9 * std::exp(-displacement) * rng.uniform(0.8, 1.0);
      for (int k = 0; k < kNumClasses; ++k) {
        if (k != c) pred.scores[k] = 0.05 * rng.uniform();
      }
    }
    out.push_back(std::move(pred));
  }

  if (out.size() + static_cast<std::size_t>(spec.false_positive_count) >
      static_cast<std::size_t>(kNumInstanceSlots)) {
    throw std::invalid_argument("predictions exceed " +
                                std::to_string(kNumInstanceSlots) + " slots");
  }
  for (int j = 0; j < spec.false_positive_count; ++j) {
    Rng rng(spec.seed, {kFalsePositiveStream, static_cast<std::uint64_t>(j)});
    const ElementClass cls = class_from_index(rng.uniform_int(kNumClasses));
    const auto element = make_element(cls, range, scene.n_points, rng);
    PredictedElement pred;
    pred.points = normalize(element.points, range);
    pred.scores[class_index(cls)] = rng.uniform(0.01, 0.3);
    out.push_back(std::move(pred));
  }

  PredictedElement padding;
  padding.scores.fill(kPaddingScore);
  padding.points.assign(scene.n_points, Point2D{0.5, 0.5});
  out.resize(kNumInstanceSlots, padding);
  return out;
}

SceneSpec benchmark_scene_spec(std::uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  spec.n_ped = 2;
  spec.n_divider = 3;
  spec.n_boundary = 2;
  return spec;
}

}  // namespace vecmap
