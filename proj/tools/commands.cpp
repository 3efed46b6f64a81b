#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vecmap/scene_io.hpp"
#include "vecmap/svg.hpp"

namespace vecmap::cli {
namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw InputError("failed writing " + path);
}

void save_scene(const std::string& path, const SceneFile& file) {
  try {
    write_scene_file(path, file);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

MapScene load_gt(const std::string& path) {
  return to_map_scene(read_scene_file(path, SceneFileRole::GroundTruth));
}

std::vector<PredictedElement> load_pred(const std::string& path,
                                        const MapScene& gt) {
  const auto file = read_scene_file(path, SceneFileRole::Prediction);
  if (!(file.range == gt.range)) {
    throw SceneFormatError(path, 2, "range differs from the ground truth");
  }
  if (!file.elements.empty() && file.n_points != gt.n_points) {
    throw SceneFormatError(path, 3, "n_points differs from the ground truth");
  }
  return to_predictions(file);
}

std::string mode_name(FitMode mode) {
  return mode == FitMode::PermutationEquivalent ? "permutation-equivalent"
                                                : "fixed-order";
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  const auto stem = p.stem().string();
  const auto ext = p.extension().string();
  return (p.parent_path() / (stem + suffix + (ext.empty() ? ".svg" : ext))).string();
}

}  // namespace

void cmd_generate(const GenerateOptions& opts, std::ostream& out) {
  const MapScene scene = generate_scene(opts.spec);
  save_scene(opts.out, to_scene_file(scene));
  out << "wrote " << scene.elements.size() << " elements to " << opts.out << "\n";
}

void cmd_perturb(const PerturbOptions& opts, std::ostream& out) {
  const MapScene gt = load_gt(opts.gt);
  const auto preds = perturb(gt, opts.spec);
  save_scene(opts.out, to_scene_file(preds, gt.range, gt.n_points));
  out << "wrote " << preds.size() << " predictions to " << opts.out << "\n";
}

std::string format_report(const APReport& report) {
  std::ostringstream os;
  os << "class         tau    AP\n";
  for (int c = 0; c < kNumClasses; ++c) {
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
      std::string name(to_string(class_from_index(c)));
      name.resize(14, ' ');
      os << name << fixed(report.thresholds[t], 1) << "    "
         << fixed(report.per_class_per_threshold[c][t], 3) << "\n";
    }
  }
  os << "mAP                  " << fixed(report.map, 3) << "\n";
  return os.str();
}

std::string report_json(const APReport& report) {
  nlohmann::json doc;
  doc["thresholds"] = report.thresholds;
  for (int c = 0; c < kNumClasses; ++c) {
    const std::string name(to_string(class_from_index(c)));
    doc["classes"][name]["ap_per_threshold"] = report.per_class_per_threshold[c];
    doc["classes"][name]["ap"] = report.per_class_ap[c];
  }
  doc["map"] = report.map;
  return doc.dump(2) + "\n";
}

APReport cmd_eval(const EvalOptions& opts, std::ostream& out) {
  if (opts.gt.size() != opts.pred.size()) {
    throw InputError("--gt and --pred need the same number of files");
  }
  std::vector<MapScene> gts;
  std::vector<std::vector<PredictedElement>> preds;
  for (std::size_t i = 0; i < opts.gt.size(); ++i) {
    gts.push_back(load_gt(opts.gt[i]));
    preds.push_back(load_pred(opts.pred[i], gts.back()));
  }
  const APReport report = evaluate_ap(preds, gts);
  out << format_report(report);
  if (!opts.json.empty()) write_text(opts.json, report_json(report));
  return report;
}

HierarchicalMatch cmd_match(const MatchOptions& opts, std::ostream& out) {
  const MapScene gt = load_gt(opts.gt);
  const auto preds = load_pred(opts.pred, gt);
  const auto gts = normalized_elements(gt);
  const auto match = hierarchical_match(preds, gts, opts.cost);
  const auto costs = instance_cost_matrix(preds, gts, opts.cost);

  out << "pred  gt  class         perm         instance_cost  point_cost\n";
  for (std::size_t k = 0; k < match.instance.pairs.size(); ++k) {
    const auto& pair = match.instance.pairs[k];
    std::string name(to_string(gts[pair.gt].cls));
    name.resize(14, ' ');
    std::string perm = to_string(match.point_level[k].perm);
    perm.resize(13, ' ');
    char idx[32];
    std::snprintf(idx, sizeof(idx), "%4d %3d  ", pair.pred, pair.gt);
    out << idx << name << perm << fixed(costs(pair.gt, pair.pred), 6) << "  "
        << fixed(match.point_level[k].cost, 6) << "\n";
  }
  out << "total_instance_cost " << fixed(match.instance.total_cost, 6) << "\n";
  out << "unmatched_predictions " << preds.size() - match.instance.pairs.size() << "\n";
  return match;
}

std::string format_trace(const FitTrace& trace) {
  std::ostringstream os;
  os << "iteration cls p2p dir total\n";
  char line[160];
  for (std::size_t i = 0; i < trace.losses.size(); ++i) {
    const auto& l = trace.losses[i];
    std::snprintf(line, sizeof(line), "%zu %.9g %.9g %.9g %.9g\n", i, l.cls, l.p2p,
                  l.dir, l.total);
    os << line;
  }
  return os.str();
}

std::vector<FitTrace> cmd_fit(const FitOptions& opts, std::ostream& out) {
  std::vector<FitMode> modes;
  if (opts.mode == "pe" || opts.mode == "both") modes.push_back(FitMode::PermutationEquivalent);
  if (opts.mode == "fixed" || opts.mode == "both") modes.push_back(FitMode::FixedOrder);
  if (modes.empty()) throw InputError("--mode must be pe, fixed, or both");

  const MapScene gt =
      opts.gt.empty() ? generate_scene(benchmark_scene_spec(opts.seed)) : load_gt(opts.gt);

  std::vector<FitTrace> traces;
  std::string table;
  for (FitMode mode : modes) {
    FitConfig cfg;
    cfg.mode = mode;
    cfg.iterations = opts.iterations;
    cfg.step_size = opts.step_size;
    cfg.seed = opts.seed;
    cfg.reorder_annotations = !opts.static_order;
    traces.push_back(fit(gt, cfg));
    if (modes.size() > 1) table += "# mode " + mode_name(mode) + "\n";
    table += format_trace(traces.back());
  }

  if (opts.trace.empty()) {
    out << table;
  } else {
    write_text(opts.trace, table);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto& last = traces[m].losses.back();
      out << mode_name(modes[m]) << ": final total " << fixed(last.total, 6)
          << " p2p " << fixed(last.p2p, 6) << " mAP "
          << fixed(traces[m].report.map, 3) << "\n";
    }
  }

  if (!opts.svg.empty()) {
    std::vector<svg::Series> series;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      svg::Series s{mode_name(modes[m]), {}};
      for (const auto& l : traces[m].losses) s.values.push_back(l.total);
      series.push_back(std::move(s));
    }
    write_text(opts.svg, svg::line_chart(series, "Convergence of total loss", "total loss"));
    for (std::size_t m = 0; m < modes.size(); ++m) {
      write_text(sibling_path(opts.svg, "_overlay_" + mode_name(modes[m])),
                 svg::scene_overlay(gt, traces[m].final_predictions));
    }
  }
  return traces;
}

void cmd_render(const RenderOptions& opts, std::ostream& out) {
  const MapScene gt = load_gt(opts.gt);
  std::vector<PredictedElement> preds;
  if (!opts.pred.empty()) preds = load_pred(opts.pred, gt);
  svg::OverlayOptions overlay;
  overlay.min_score = opts.min_score;
  write_text(opts.out, svg::scene_overlay(gt, preds, overlay));
  out << "wrote " << opts.out << "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation-equivalent map element matching, losses, and evaluation", "vecmap"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic ground-truth scene");
  generate->add_option("--seed", gen.spec.seed, "Scene seed")->required();
  generate->add_option("--ped", gen.spec.n_ped, "Pedestrian crossings")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--divider", gen.spec.n_divider, "Lane dividers")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--boundary", gen.spec.n_boundary, "Road boundaries")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--n-points", gen.spec.n_points, "Points per element")
      ->check(CLI::Range(3, 1000));
  generate->add_option("--out", gen.out, "Output scene file")->required();

  PerturbOptions pert;
  std::string score_model = "oracle";
  auto* perturb_cmd = app.add_subcommand("perturb", "Derive noisy predictions from a scene");
  perturb_cmd->add_option("--gt", pert.gt, "Ground-truth scene file")->required();
  perturb_cmd->add_option("--seed", pert.spec.seed, "Perturbation seed");
  perturb_cmd->add_option("--sigma", pert.spec.point_noise_sigma, "Point noise in meters")
      ->check(CLI::NonNegativeNumber);
  perturb_cmd->add_option("--drop", pert.spec.drop_prob, "Drop probability")
      ->check(CLI::Range(0.0, 1.0));
  perturb_cmd->add_option("--fp", pert.spec.false_positive_count, "False positives")
      ->check(CLI::NonNegativeNumber);
  perturb_cmd->add_option("--score-model", score_model, "oracle or noisy")
      ->check(CLI::IsMember({"oracle", "noisy"}));
  perturb_cmd->add_option("--out", pert.out, "Output prediction file")->required();

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Chamfer-distance AP of predictions");
  eval->add_option("--gt", ev.gt, "Ground-truth scene files")->required();
  eval->add_option("--pred", ev.pred, "Prediction files, aligned with --gt")->required();
  eval->add_option("--json", ev.json, "Also write the report as JSON");

  MatchOptions mo;
  std::string position = "p2p";
  auto* match = app.add_subcommand("match", "Dump the hierarchical assignment");
  match->add_option("--gt", mo.gt, "Ground-truth scene file")->required();
  match->add_option("--pred", mo.pred, "Prediction file")->required();
  match->add_option("--position-cost", position, "p2p or chamfer")
      ->check(CLI::IsMember({"p2p", "chamfer"}));

  FitOptions fo;
  auto* fit_cmd = app.add_subcommand("fit", "Fit prediction slots to a scene by gradient descent");
  fit_cmd->add_option("--gt", fo.gt, "Ground-truth scene (default: benchmark scene for --seed)");
  fit_cmd->add_option("--mode", fo.mode, "pe, fixed, or both")
      ->check(CLI::IsMember({"pe", "fixed", "both"}));
  fit_cmd->add_option("--iterations", fo.iterations, "Iterations")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--step-size", fo.step_size, "Adam step size")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--seed", fo.seed, "Initialization seed");
  fit_cmd->add_flag("--static-order", fo.static_order,
                    "Keep the stored ground-truth point order fixed across iterations");
  fit_cmd->add_option("--trace", fo.trace, "Trace table path (default: stdout)");
  fit_cmd->add_option("--svg", fo.svg, "Convergence plot path; overlays are written beside it");

  RenderOptions ro;
  auto* render = app.add_subcommand("render", "Render a scene (and predictions) as SVG");
  render->add_option("--gt", ro.gt, "Ground-truth scene file")->required();
  render->add_option("--pred", ro.pred, "Prediction file");
  render->add_option("--min-score", ro.min_score, "Hide predictions below this score");
  render->add_option("--out", ro.out, "Output SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*generate) {
      cmd_generate(gen, out);
    } else if (*perturb_cmd) {
      pert.spec.score_model =
          score_model == "noisy" ? ScoreModel::NoisyConfidence : ScoreModel::Oracle;
      cmd_perturb(pert, out);
    } else if (*eval) {
      cmd_eval(ev, out);
    } else if (*match) {
      mo.cost.position_cost =
          position == "chamfer" ? PositionCost::Chamfer : PositionCost::Point2Point;
      cmd_match(mo, out);
    } else if (*fit_cmd) {
      cmd_fit(fo, out);
    } else if (*render) {
      cmd_render(ro, out);
    }
  } catch (const SceneFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace vecmap::cli
