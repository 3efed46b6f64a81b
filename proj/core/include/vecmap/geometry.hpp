#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vecmap {

// Points per element after resampling.
inline constexpr int kDefaultPointsPerElement = 20;
inline constexpr int kNumClasses = 3;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator*(Point2D a, double s) { return {a.x * s, a.y * s}; }
inline Point2D operator*(double s, Point2D a) { return a * s; }

double dot(Point2D a, Point2D b);
// z-component of the 3D cross product.
double cross(Point2D a, Point2D b);
double norm(Point2D a);

enum class ElementKind { Polyline, Polygon };

enum class ElementClass { PedCrossing = 0, Divider = 1, Boundary = 2 };

// Pedestrian crossings are closed shapes; dividers and boundaries are open.
ElementKind kind_of(ElementClass cls);
int class_index(ElementClass cls);
ElementClass class_from_index(int index);

std::string_view to_string(ElementKind kind);
std::string_view to_string(ElementClass cls);
// Throw std::invalid_argument on unknown names.
ElementKind parse_kind(std::string_view name);
ElementClass parse_class(std::string_view name);

// Smallest point count that describes a shape of this kind.
int min_points(ElementKind kind);

struct MapElement {
  ElementClass cls = ElementClass::Divider;
  ElementKind kind = ElementKind::Polyline;
  std::vector<Point2D> points;

  friend bool operator==(const MapElement&, const MapElement&) = default;
};

// Thrown when a shape has no extent (zero boundary length).
class DegenerateShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Checks class/kind consistency, point count, and finiteness.
void validate_element(const MapElement& element);

enum class Direction { Forward, Reverse };

// One equivalent ordering of a point set. Forward with offset k maps
// j -> (j + k) mod n; Reverse with offset k maps j -> (n - 1) - (j + k) mod n.
struct PermutationDescriptor {
  Direction direction = Direction::Forward;
  int offset = 0;

  int index(int j, int n_points) const;
  std::vector<int> index_map(int n_points) const;

  friend bool operator==(const PermutationDescriptor&,
                         const PermutationDescriptor&) = default;
};

std::string to_string(const PermutationDescriptor& perm);

struct PermutationGroup {
  ElementKind kind = ElementKind::Polyline;
  int n_points = 0;
  // Enumeration order: Forward with ascending offset, then Reverse with
  // ascending offset.
  std::vector<PermutationDescriptor> members;
};

struct SceneRange {
  double x_min = -15.0;
  double x_max = 15.0;
  double y_min = -30.0;
  double y_max = 30.0;

  bool valid() const { return x_min < x_max && y_min < y_max; }
  bool contains(Point2D p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const SceneRange&, const SceneRange&) = default;
};

// A ground-truth scene in metric BEV coordinates.
struct MapScene {
  SceneRange range;
  int n_points = kDefaultPointsPerElement;
  std::vector<MapElement> elements;

  friend bool operator==(const MapScene&, const MapScene&) = default;
};

// Two members for polylines, 2 * n_points for polygons.
PermutationGroup permutation_group(ElementKind kind, int n_points);

std::vector<Point2D> apply_permutation(std::span<const Point2D> points,
                                       const PermutationDescriptor& perm);

// Samples n_points uniformly by arc length along the boundary. Polylines keep
// both raw endpoints; polygons are closed and keep the first raw vertex.
std::vector<Point2D> resample(std::span<const Point2D> raw_vertices,
                              ElementKind kind, int n_points);

// Maps the scene range onto [0,1]^2. Points outside the range land outside
// the unit square; they are not clamped.
Point2D normalize(Point2D p, const SceneRange& range);
Point2D denormalize(Point2D p, const SceneRange& range);
std::vector<Point2D> normalize(std::span<const Point2D> points,
                               const SceneRange& range);
std::vector<Point2D> denormalize(std::span<const Point2D> points,
                                 const SceneRange& range);
std::size_t count_outside_unit_square(std::span<const Point2D> points);

// Returns the scene's elements with normalized coordinates.
std::vector<MapElement> normalized_elements(const MapScene& scene);

// edge[j] = points[j] - points[(j + 1) mod n]. Polylines drop the closing
// edge between the last and first point.
std::vector<Point2D> edges(std::span<const Point2D> points, ElementKind kind);

}  // namespace vecmap
