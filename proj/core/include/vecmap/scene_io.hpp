#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

namespace vecmap {

// Line-oriented scene document:
//
//   vecmap-scene 1
//   range <x_min> <x_max> <y_min> <y_max>
//   n_points <n>
//   element <class> <kind>
//   scores <ped_crossing> <divider> <boundary>     (prediction files only)
//   point <x> <y>                                  (n times, meters)
//   end
//
// '#' starts a comment. Numbers are written in the shortest form that reads
// back to the same double.

enum class SceneFileRole { GroundTruth, Prediction };

struct SceneFileElement {
  ElementClass cls = ElementClass::Divider;
  ElementKind kind = ElementKind::Polyline;
  std::vector<Point2D> points;
  std::optional<std::array<double, kNumClasses>> scores;

  friend bool operator==(const SceneFileElement&, const SceneFileElement&) = default;
};

struct SceneFile {
  SceneRange range;
  int n_points = kDefaultPointsPerElement;
  std::vector<SceneFileElement> elements;

  friend bool operator==(const SceneFile&, const SceneFile&) = default;
};

class SceneFormatError : public std::runtime_error {
 public:
  SceneFormatError(std::string source, int line, const std::string& what);

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

std::string format_scene(const SceneFile& file);

// Ground-truth documents must not carry scores and keep every point inside
// the range; prediction documents need scores on every element.
SceneFile parse_scene(std::string_view text, SceneFileRole role,
                      const std::string& source = "<memory>");

SceneFile read_scene_file(const std::filesystem::path& path, SceneFileRole role);
// Throws std::runtime_error when the file cannot be written.
void write_scene_file(const std::filesystem::path& path, const SceneFile& file);

SceneFile to_scene_file(const MapScene& scene);
MapScene to_map_scene(const SceneFile& file);

// Predictions are stored in meters with class = highest score.
SceneFile to_scene_file(const std::vector<PredictedElement>& preds,
                        const SceneRange& range, int n_points);
std::vector<PredictedElement> to_predictions(const SceneFile& file);

}  // namespace vecmap
