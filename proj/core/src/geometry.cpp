#include "vecmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vecmap {

double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }

double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

double norm(Point2D a) { return std::hypot(a.x, a.y); }

ElementKind kind_of(ElementClass cls) {
  return cls == ElementClass::PedCrossing ? ElementKind::Polygon
                                          : ElementKind::Polyline;
}

int class_index(ElementClass cls) { return static_cast<int>(cls); }

ElementClass class_from_index(int index) {
  if (index < 0 || index >= kNumClasses) {
    throw std::invalid_argument("class index out of range: " +
                                std::to_string(index));
  }
  return static_cast<ElementClass>(index);
}

std::string_view to_string(ElementKind kind) {
  return kind == ElementKind::Polygon ? "polygon" : "polyline";
}

std::string_view to_string(ElementClass cls) {
  switch (cls) {
    case ElementClass::PedCrossing:
      return "ped_crossing";
    case ElementClass::Divider:
      return "divider";
    case ElementClass::Boundary:
      return "boundary";
  }
  return "unknown";
}

ElementKind parse_kind(std::string_view name) {
  if (name == "polyline") return ElementKind::Polyline;
  if (name == "polygon") return ElementKind::Polygon;
  throw std::invalid_argument("unknown element kind '" + std::string(name) +
                              "'");
}

ElementClass parse_class(std::string_view name) {
  for (int c = 0; c < kNumClasses; ++c) {
    if (to_string(class_from_index(c)) == name) return class_from_index(c);
  }
  throw std::invalid_argument("unknown element class '" + std::string(name) +
                              "'");
}

int min_points(ElementKind kind) {
  return kind == ElementKind::Polygon ? 3 : 2;
}

void validate_element(const MapElement& element) {
  if (element.kind != kind_of(element.cls)) {
    throw std::invalid_argument(std::string(to_string(element.cls)) +
                                " must be a " +
                                std::string(to_string(kind_of(element.cls))));
  }
  if (static_cast<int>(element.points.size()) < min_points(element.kind)) {
    throw std::invalid_argument("too few points for a " +
                                std::string(to_string(element.kind)));
  }
  for (const auto& p : element.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("non-finite point coordinate");
    }
  }
}

int PermutationDescriptor::index(int j, int n_points) const {
  const int shifted = (j + offset) % n_points;
  return direction == Direction::Forward ? shifted : (n_points - 1) - shifted;
}

std::vector<int> PermutationDescriptor::index_map(int n_points) const {
  std::vector<int> map(n_points);
  for (int j = 0; j < n_points; ++j) map[j] = index(j, n_points);
  return map;
}

std::string to_string(const PermutationDescriptor& perm) {
  return std::string(perm.direction == Direction::Forward ? "forward"
                                                          : "reverse") +
         "-" + std::to_string(perm.offset);
}

PermutationGroup permutation_group(ElementKind kind, int n_points) {
  if (n_points < min_points(kind)) {
    throw std::invalid_argument("permutation group needs at least " +
                                std::to_string(min_points(kind)) +
                                " points for a " + std::string(to_string(kind)));
  }
  PermutationGroup group{kind, n_points, {}};
  const int shifts = kind == ElementKind::Polygon ? n_points : 1;
  group.members.reserve(2 * shifts);
  for (Direction dir : {Direction::Forward, Direction::Reverse}) {
    for (int k = 0; k < shifts; ++k) group.members.push_back({dir, k});
  }
  return group;
}

std::vector<Point2D> apply_permutation(std::span<const Point2D> points,
                                       const PermutationDescriptor& perm) {
  const int n = static_cast<int>(points.size());
  if (n == 0 || perm.offset < 0 || perm.offset >= n) {
    throw std::invalid_argument("permutation offset " +
                                std::to_string(perm.offset) +
                                " does not fit a point set of size " +
                                std::to_string(n));
  }
  std::vector<Point2D> out(n);
  for (int j = 0; j < n; ++j) out[j] = points[perm.index(j, n)];
  return out;
}

std::vector<Point2D> resample(std::span<const Point2D> raw_vertices,
                              ElementKind kind, int n_points) {
  if (raw_vertices.size() < 2) {
    throw std::invalid_argument("resample needs at least 2 vertices");
  }
  if (n_points < min_points(kind)) {
    throw std::invalid_argument("resample point count below minimum for " +
                                std::string(to_string(kind)));
  }
  std::vector<Point2D> path(raw_vertices.begin(), raw_vertices.end());
  if (kind == ElementKind::Polygon) path.push_back(raw_vertices.front());

  std::vector<double> cumulative(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + norm(path[i] - path[i - 1]);
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    throw DegenerateShapeError("shape has zero boundary length");
  }

  const int intervals = kind == ElementKind::Polygon ? n_points : n_points - 1;
  std::vector<Point2D> out(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double target = total * k / intervals;
    // First segment whose end lies strictly beyond the target, so targets
    // that land on a vertex reproduce it exactly.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) {
      out[k] = path.back();
      continue;
    }
    const std::size_t seg = static_cast<std::size_t>(it - cumulative.begin()) - 1;
    const double length = cumulative[seg + 1] - cumulative[seg];
    const double t = (target - cumulative[seg]) / length;
    out[k] = t == 0.0 ? path[seg] : path[seg] + (path[seg + 1] - path[seg]) * t;
  }
  out.front() = raw_vertices.front();
  if (kind == ElementKind::Polyline) out.back() = raw_vertices.back();
  return out;
}

Point2D normalize(Point2D p, const SceneRange& range) {
  return {(p.x - range.x_min) / (range.x_max - range.x_min),
          (p.y - range.y_min) / (range.y_max - range.y_min)};
}

Point2D denormalize(Point2D p, const SceneRange& range) {
  return {range.x_min + p.x * (range.x_max - range.x_min),
          range.y_min + p.y * (range.y_max - range.y_min)};
}

std::vector<Point2D> normalize(std::span<const Point2D> points,
                               const SceneRange& range) {
  if (!range.valid()) throw std::invalid_argument("invalid scene range");
  std::vector<Point2D> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normalize(p, range));
  return out;
}

std::vector<Point2D> denormalize(std::span<const Point2D> points,
                                 const SceneRange& range) {
  if (!range.valid()) throw std::invalid_argument("invalid scene range");
  std::vector<Point2D> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(denormalize(p, range));
  return out;
}

std::size_t count_outside_unit_square(std::span<const Point2D> points) {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](Point2D p) {
        return p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0;
      }));
}

std::vector<MapElement> normalized_elements(const MapScene& scene) {
  std::vector<MapElement> out;
  out.reserve(scene.elements.size());
  for (const auto& e : scene.elements) {
    out.push_back({e.cls, e.kind, normalize(e.points, scene.range)});
  }
  return out;
}

std::vector<Point2D> edges(std::span<const Point2D> points, ElementKind kind) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("edges need at least 2 points");
  const std::size_t count = kind == ElementKind::Polygon ? n : n - 1;
  std::vector<Point2D> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j] = points[j] - points[(j + 1) % n];
  }
  return out;
}

}  // namespace vecmap
