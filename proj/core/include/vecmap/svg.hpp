#pragma once

#include <string>
#include <vector>

#include "vecmap/geometry.hpp"
#include "vecmap/matching.hpp"

namespace vecmap::svg {

struct Series {
  std::string label;
  std::vector<double> values;
};

// Standalone line chart of one or more series against iteration index.
std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& y_label);

struct OverlayOptions {
  // Predictions whose best score is below this are not drawn.
  double min_score = 0.3;
  double pixels_per_meter = 10.0;
};

// Top-down view of a scene: ground truth dashed, predictions solid, one fixed
// color per class.
std::string scene_overlay(const MapScene& gt,
                          const std::vector<PredictedElement>& preds,
                          const OverlayOptions& options = {});

std::string class_color(ElementClass cls);

}  // namespace vecmap::svg
