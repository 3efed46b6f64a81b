#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vecmap/fitter.hpp"
#include "vecmap/matching.hpp"
#include "vecmap/metrics.hpp"
#include "vecmap/scenegen.hpp"

namespace vecmap::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kInternalError = 2 };

// Thrown for problems with user-supplied paths or flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  SceneSpec spec;
  std::string out;
};

struct PerturbOptions {
  std::string gt;
  PerturbSpec spec;
  std::string out;
};

struct EvalOptions {
  std::vector<std::string> gt;
  std::vector<std::string> pred;
  std::string json;  // optional machine-readable report path
};

struct MatchOptions {
  std::string gt;
  std::string pred;
  CostConfig cost;
};

struct FitOptions {
  std::string gt;  // empty: generate the benchmark scene for `seed`
  std::string mode = "pe";  // pe | fixed | both
  int iterations = 500;
  double step_size = 0.01;
  std::uint64_t seed = 0;
  bool static_order = false;
  std::string trace;  // empty: table to stdout
  std::string svg;
};

struct RenderOptions {
  std::string gt;
  std::string pred;
  std::string out;
  double min_score = 0.3;
};

void cmd_generate(const GenerateOptions& opts, std::ostream& out);
void cmd_perturb(const PerturbOptions& opts, std::ostream& out);
APReport cmd_eval(const EvalOptions& opts, std::ostream& out);
HierarchicalMatch cmd_match(const MatchOptions& opts, std::ostream& out);
std::vector<FitTrace> cmd_fit(const FitOptions& opts, std::ostream& out);
void cmd_render(const RenderOptions& opts, std::ostream& out);

// Fixed-column report: class, tau, AP rows followed by the mAP line.
std::string format_report(const APReport& report);
std::string report_json(const APReport& report);

// Columnar trace: iteration cls p2p dir total.
std::string format_trace(const FitTrace& trace);

// Parses argv-style arguments (without the program name), runs the command,
// and maps failures to exit codes. Errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecmap::cli
