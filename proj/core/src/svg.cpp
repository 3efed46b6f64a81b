#include "vecmap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace vecmap::svg {
namespace {

const char* const kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string open_document(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& body,
                 const std::string& extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\"" + extra + ">" +
         escape(body) + "</text>\n";
}

}  // namespace

std::string class_color(ElementClass cls) {
  switch (cls) {
    case ElementClass::PedCrossing: return "#1f77b4";
    case ElementClass::Divider: return "#ff7f0e";
    case ElementClass::Boundary: return "#2ca02c";
  }
  return "#000000";
}

std::string line_chart(const std::vector<Series>& series, const std::string& title,
                       const std::string& y_label) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t longest = 1;
  for (const auto& s : series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    longest = std::max(longest, s.values.size());
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) hi = lo + 1.0;

  const auto sx = [&](std::size_t i) {
    return kLeft + plot_w * (longest > 1 ? static_cast<double>(i) / (longest - 1) : 0.0);
  };
  const auto sy = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::string doc = open_document(kWidth, kHeight);
  doc += text(kLeft, 24, title, " font-weight=\"bold\"");
  doc += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    doc += text(4, sy(v) + 4, num(v));
  }
  doc += text(kLeft, kHeight - 10, "iteration (0 .. " + std::to_string(longest - 1) +
                                       ")   y: " + y_label);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kSeriesColors[s % std::size(kSeriesColors)];
    std::string pts;
    for (std::size_t i = 0; i < series[s].values.size(); ++i) {
      pts += num(sx(i)) + "," + num(sy(series[s].values[i])) + " ";
    }
    doc += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(s);
    doc += "<line x1=\"" + num(kWidth - kRight + 10) + "\" y1=\"" + num(ly - 4) +
           "\" x2=\"" + num(kWidth - kRight + 30) + "\" y2=\"" + num(ly - 4) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    doc += text(kWidth - kRight + 36, ly, series[s].label);
  }
  doc += "</svg>\n";
  return doc;
}

std::string scene_overlay(const MapScene& gt,
                          const std::vector<PredictedElement>& preds,
                          const OverlayOptions& options) {
  const SceneRange& r = gt.range;
  const double scale = options.pixels_per_meter;
  const double margin = 20;
  const double width = (r.x_max - r.x_min) * scale + 2 * margin;
  const double height = (r.y_max - r.y_min) * scale + 2 * margin;
  // y grows upward in the scene and downward in SVG.
  const auto to_px = [&](Point2D p) {
    return num(margin + (p.x - r.x_min) * scale) + "," +
           num(margin + (r.y_max - p.y) * scale);
  };
  const auto shape = [&](const std::vector<Point2D>& pts, ElementKind kind,
                         const std::string& color, bool dashed) {
    std::string coords;
    for (const auto& p : pts) coords += to_px(p) + " ";
    return std::string("<") + (kind == ElementKind::Polygon ? "polygon" : "polyline") +
           " fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"" +
           (dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + coords +
           "\"/>\n";
  };

  std::string doc = open_document(width, height);
  doc += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" +
         num(width - 2 * margin) + "\" height=\"" + num(height - 2 * margin) +
         "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (const auto& e : gt.elements) {
    doc += shape(e.points, e.kind, class_color(e.cls), true);
  }
  for (const auto& p : preds) {
    const auto best = std::max_element(p.scores.begin(), p.scores.end());
    if (*best < options.min_score) continue;
    const ElementClass cls = class_from_index(static_cast<int>(best - p.scores.begin()));
    doc += shape(denormalize(p.points, r), kind_of(cls), class_color(cls), false);
  }
  doc += text(margin, 14, "ground truth dashed, predictions solid");
  doc += "</svg>\n";
  return doc;
}

}  // namespace vecmap::svg
