#include "vecmap/scene_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vecmap {
namespace {

constexpr std::string_view kHeader = "vecmap-scene";
constexpr std::string_view kVersion = "1";

void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#') {
      ++i;
    }
    tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

class Parser {
 public:
  Parser(std::string source, SceneFileRole role)
      : source_(std::move(source)), role_(role) {}

  SceneFile run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      ++line_;
      handle(tokenize(text.substr(pos, end - pos)));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!seen_header_) fail("missing '" + std::string(kHeader) + "' header");
    if (in_element_) fail("element not closed with 'end'");
    if (!seen_range_ || !seen_n_points_) {
      fail("missing 'range' or 'n_points' line");
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SceneFormatError(source_, line_, what);
  }

  void expect_args(const std::vector<std::string_view>& t, std::size_t n) const {
    if (t.size() != n + 1) {
      fail("'" + std::string(t[0]) + "' takes " + std::to_string(n) + " value(s)");
    }
  }

  double number(std::string_view token) const {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      fail("invalid number '" + std::string(token) + "'");
    }
    return v;
  }

  void handle(const std::vector<std::string_view>& t) {
    if (t.empty()) return;
    const std::string_view key = t[0];
    if (!seen_header_) {
      if (key != kHeader) fail("expected '" + std::string(kHeader) + "' header");
      expect_args(t, 1);
      if (t[1] != kVersion) fail("unsupported version '" + std::string(t[1]) + "'");
      seen_header_ = true;
      return;
    }
    if (in_element_) {
      handle_element_line(t);
      return;
    }
    if (key == "range") {
      if (seen_range_) fail("duplicate 'range'");
      if (!file_.elements.empty()) fail("'range' must precede elements");
      expect_args(t, 4);
      file_.range = {number(t[1]), number(t[2]), number(t[3]), number(t[4])};
      if (!file_.range.valid()) fail("range needs x_min < x_max and y_min < y_max");
      seen_range_ = true;
    } else if (key == "n_points") {
      if (seen_n_points_) fail("duplicate 'n_points'");
      if (!file_.elements.empty()) fail("'n_points' must precede elements");
      expect_args(t, 1);
      const double n = number(t[1]);
      if (n != std::floor(n) || n < 2 || n > 1e6) fail("invalid n_points");
      file_.n_points = static_cast<int>(n);
      seen_n_points_ = true;
    } else if (key == "element") {
      if (!seen_range_ || !seen_n_points_) {
        fail("'range' and 'n_points' must precede elements");
      }
      expect_args(t, 2);
      SceneFileElement e;
      try {
        e.cls = parse_class(t[1]);
        e.kind = parse_kind(t[2]);
      } catch (const std::invalid_argument& err) {
        fail(err.what());
      }
      if (e.kind != kind_of(e.cls)) {
        fail(std::string(t[1]) + " must be a " + std::string(to_string(kind_of(e.cls))));
      }
      file_.elements.push_back(std::move(e));
      in_element_ = true;
      element_line_ = line_;
    } else {
      fail("unknown field '" + std::string(key) + "'");
    }
  }

  void handle_element_line(const std::vector<std::string_view>& t) {
    auto& e = file_.elements.back();
    const std::string_view key = t[0];
    if (key == "point") {
      expect_args(t, 2);
      const Point2D p{number(t[1]), number(t[2])};
      if (role_ == SceneFileRole::GroundTruth && !file_.range.contains(p)) {
        fail("point lies outside the scene range");
      }
      if (static_cast<int>(e.points.size()) == file_.n_points) {
        fail("element has more than " + std::to_string(file_.n_points) + " points");
      }
      e.points.push_back(p);
    } else if (key == "scores") {
      if (role_ == SceneFileRole::GroundTruth) {
        fail("ground-truth elements do not carry scores");
      }
      if (e.scores) fail("duplicate 'scores'");
      expect_args(t, kNumClasses);
      std::array<double, kNumClasses> s{};
      for (int c = 0; c < kNumClasses; ++c) {
        s[c] = number(t[c + 1]);
        if (s[c] < 0.0 || s[c] > 1.0) fail("scores must lie in [0, 1]");
      }
      e.scores = s;
    } else if (key == "end") {
      expect_args(t, 0);
      if (static_cast<int>(e.points.size()) != file_.n_points) {
        fail("element has " + std::to_string(e.points.size()) + " points, expected " +
             std::to_string(file_.n_points));
      }
      if (role_ == SceneFileRole::Prediction && !e.scores) {
        line_ = element_line_;
        fail("prediction element has no 'scores'");
      }
      in_element_ = false;
    } else {
      fail("unknown element field '" + std::string(key) + "'");
    }
  }

  std::string source_;
  SceneFileRole role_;
  SceneFile file_;
  int line_ = 0;
  int element_line_ = 0;
  bool seen_header_ = false;
  bool seen_range_ = false;
  bool seen_n_points_ = false;
  bool in_element_ = false;
};

}  // namespace

SceneFormatError::SceneFormatError(std::string source, int line,
                                   const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

std::string format_scene(const SceneFile& file) {
  std::string out;
  out += std::string(kHeader) + " " + std::string(kVersion) + "\nrange";
  for (double v : {file.range.x_min, file.range.x_max, file.range.y_min, file.range.y_max}) {
    out += ' ';
    append_number(out, v);
  }
  out += "\nn_points " + std::to_string(file.n_points) + "\n";
  for (const auto& e : file.elements) {
    out += "element ";
    out += to_string(e.cls);
    out += ' ';
    out += to_string(e.kind);
    out += '\n';
    if (e.scores) {
      out += "scores";
      for (double s : *e.scores) {
        out += ' ';
        append_number(out, s);
      }
      out += '\n';
    }
    for (const auto& p : e.points) {
      out += "point ";
      append_number(out, p.x);
      out += ' ';
      append_number(out, p.y);
      out += '\n';
    }
    out += "end\n";
  }
  return out;
}

SceneFile parse_scene(std::string_view text, SceneFileRole role,
                      const std::string& source) {
  return Parser(source, role).run(text);
}

SceneFile read_scene_file(const std::filesystem::path& path, SceneFileRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneFormatError(path.string(), 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), role, path.string());
}

void write_scene_file(const std::filesystem::path& path, const SceneFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_scene(file);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SceneFile to_scene_file(const MapScene& scene) {
  SceneFile file{scene.range, scene.n_points, {}};
  for (const auto& e : scene.elements) {
    file.elements.push_back({e.cls, e.kind, e.points, std::nullopt});
  }
  return file;
}

MapScene to_map_scene(const SceneFile& file) {
  MapScene scene{file.range, file.n_points, {}};
  for (const auto& e : file.elements) {
    scene.elements.push_back({e.cls, e.kind, e.points});
  }
  return scene;
}

SceneFile to_scene_file(const std::vector<PredictedElement>& preds,
                        const SceneRange& range, int n_points) {
  SceneFile file{range, n_points, {}};
  for (const auto& p : preds) {
    const auto best = std::max_element(p.scores.begin(), p.scores.end());
    const ElementClass cls =
        class_from_index(static_cast<int>(best - p.scores.begin()));
    file.elements.push_back(
        {cls, kind_of(cls), denormalize(p.points, range), p.scores});
  }
  return file;
}

std::vector<PredictedElement> to_predictions(const SceneFile& file) {
  std::vector<PredictedElement> out;
  out.reserve(file.elements.size());
  for (const auto& e : file.elements) {
    PredictedElement p;
    if (e.scores) p.scores = *e.scores;
    p.points = normalize(e.points, file.range);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace vecmap
