#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxdicut/graph.hpp"
#include "maxdicut/params.hpp"

// Pipeline orchestration behind the command-line tool: wire the reduction
// chain, run the requested algorithms, and assemble a plain-text report with
// a stable key order so identical (input, flags, seed) produce byte-identical
// output. Wall-clock time is recorded only on request, keeping the default
// reports diffable.
namespace maxdicut {

struct RunOptions {
  // Input graph: a file path, or an in-memory edge list (tests, benchmarks).
  std::string graph_path;
  std::optional<EdgeList> graph_inline;
  std::string input_label;  // report descriptor; defaults to the path/"inline"

  // Vertex colors: a table from a file or inline (1-based colors, at most
  // params.k of them), or — when neither is given — a hashed coloring over
  // params.k colors, with the monochromatic-edge filter in the chain.
  std::string colors_path;
  std::optional<std::vector<int>> colors_inline;

  std::string mode = "stream";  // stream | offline | exact | compare

  // Reduction chain. Each stage can be skipped independently; the subsample
  // and flip stages also stay off at their identity settings.
  double keep_prob = 1.0;
  double flip_prob = 0.0;
  bool skip_subsample = false;
  bool skip_flip = false;
  bool skip_color_filter = false;

  ParamSet params;  // practical mode; build with practical_params
  std::uint64_t seed = 0;
  bool timing = false;          // record wall time (breaks byte-reproducibility)
  std::size_t exact_limit = 24;  // refusal bound for the exhaustive solver

  // Assignment emission (offline/exact/compare modes only — they materialize
  // the graph). Each writes n lines, one value per vertex; isolated vertices
  // get 0.
  std::string assignment_out;  // the recursive fractional assignment
  std::string tpos_out;        // its closed-form counterpart
};

struct RunReport {
  std::string input;
  std::string mode;
  std::uint64_t seed = 0;
  ParamSet params;
  double keep_prob = 1.0;
  double flip_prob = 0.0;

  bool ran_subsample = false;
  bool ran_flip = false;
  bool ran_color_filter = false;
  std::uint64_t stage_seen = 0;     // edges entering the subsample stage
  std::uint64_t stage_kept = 0;     // edges surviving subsampling
  std::uint64_t stage_flipped = 0;  // edges whose orientation was reversed
  std::uint64_t stage_dropped = 0;  // monochromatic edges removed

  bool has_stream = false;
  std::uint64_t stream_length = 0;
  double cut_val = 0.0;
  double fail_fraction = 0.0;
  double rescaled = 0.0;  // cut_val * stream_length / keep_prob
  std::uint64_t w_size = 0;
  std::uint64_t b_size = 0;
  std::uint64_t c_size = 0;
  bool reservoir_partial = false;
  std::uint64_t peak_bytes = 0;

  bool has_offline = false;
  std::uint64_t offline_edges = 0;
  double offline_cut = 0.0;
  double offline_rescaled = 0.0;

  bool has_exact = false;
  double exact_maxval = 0.0;
  std::uint64_t exact_crossing = 0;

  double wall_ms = -1.0;  // negative = not recorded, omitted from the text

  // One key=value per line, fixed order; absent sections omitted wholesale.
  std::string to_text() const;
};

RunReport run_pipeline(const RunOptions& opt);

// Benchmark sweep: one parameter axis varied over a grid, `trials` seeded
// runs per point, CSV rows param_point,trial,cut_val,err_vs_offline,
// peak_bytes,wall_ms. The reduction chain is limited to the color filter (the
// sweep measures the estimator, not the reductions); the offline reference is
// computed once on the filtered graph. wall_ms is 0 unless timing is set.
struct BenchOptions {
  RunOptions base;          // graph, coloring, params, seed
  std::string grid_axis;    // "" | "d" | "vertex-prob" | "edge-prob" | "eval-size"
  std::vector<double> grid_values;
  std::uint64_t trials = 1;
};

std::string run_bench_csv(const BenchOptions& opt);

}  // namespace maxdicut
