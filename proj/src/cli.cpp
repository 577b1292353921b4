#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxdicut/gen.hpp"
#include "maxdicut/params.hpp"
#include "maxdicut/runner.hpp"

namespace {

using namespace maxdicut;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& tok : split_commas(s)) {
    if (tok.empty()) throw ParamError(std::string("empty entry in ") + what);
    out.push_back(parse_double(tok));
  }
  if (out.empty()) throw ParamError(std::string(what) + " needs at least one value");
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw FormatError("failed writing " + path);
}

// Flags shared by run and bench that assemble the practical parameter set.
struct ParamFlags {
  std::string params_path;
  int colors = 3;
  double alpha = -1.0;  // sentinel: pick a default valid for k
  std::uint64_t d = 2;
  double vertex_prob = 1.0;
  double edge_prob = 1.0;
  std::uint64_t eval_size = 1000;
  std::string thresholds = "0";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--params", params_path,
                    "Parameter file (overridden by explicit flags below)");
    cmd->add_option("--colors", colors, "Number of colors k")->check(CLI::Range(1, 64));
    cmd->add_option("--alpha", alpha,
                    "Low-degree mixing weight (default scales with k)");
    cmd->add_option("--d", d, "Neighbor samples per side");
    cmd->add_option("--vertex-prob", vertex_prob, "Vertex sampling probability");
    cmd->add_option("--edge-prob", edge_prob, "Edge sampling probability");
    cmd->add_option("--eval-size", eval_size, "Evaluation reservoir capacity");
    cmd->add_option("--thresholds", thresholds,
                    "Comma list of per-color degree thresholds (single value "
                    "broadcasts; 'inf' forces low-degree)");
  }

  ParamSet build(const CLI::App* cmd) const {
    ParamSet base;
    bool have_base = false;
    if (!params_path.empty()) {
      base = load_params(params_path);
      if (base.mode != ParamSet::Mode::practical)
        throw ParamError("parameter file is not a practical-mode set");
      have_base = true;
    }
    const auto given = [&](const char* name) { return cmd->count(name) > 0; };

    const int k = given("--colors") || !have_base ? colors : base.k;
    double a = given("--alpha") ? alpha : (have_base ? base.alpha : -1.0);
    if (a < 0.0) a = k >= 2 ? std::min(0.1, 0.5 / (k - 1)) : 0.1;
    const std::uint64_t dd = given("--d") || !have_base ? d : base.d;
    const double vp =
        given("--vertex-prob") || !have_base ? vertex_prob : base.vertex_sample_prob;
    const double ep =
        given("--edge-prob") || !have_base ? edge_prob : base.edge_sample_prob;
    const std::uint64_t es =
        given("--eval-size") || !have_base ? eval_size : base.eval_reservoir_size;

    std::vector<double> th;
    if (given("--thresholds") || !have_base) {
      th = parse_double_list(thresholds, "--thresholds");
      if (th.size() == 1) th.assign(static_cast<std::size_t>(k), th[0]);
      if (th.size() != static_cast<std::size_t>(k))
        throw ParamError("--thresholds needs one value or one per color");
    } else {
      th = base.thresholds;
      if (th.size() != static_cast<std::size_t>(k))
        throw ParamError("--colors disagrees with the parameter file's thresholds");
    }
    return practical_params(k, a, dd, vp, ep, es, th);
  }
};

int cmd_gen(const std::string& kind, std::size_t n, std::size_t m,
            std::uint64_t seed, double plant_fraction, int layers,
            double exponent, const std::string& out_path) {
  const GenResult r = generate(kind, n, m, seed, plant_fraction, layers, exponent);
  {
    std::ofstream out(out_path);
    if (!out) throw FormatError("cannot open " + out_path + " for writing");
    write_edge_list(out, r.graph, r.comments);
  }
  std::cout << "wrote " << out_path << " (n=" << r.graph.n
            << ", m=" << r.graph.edges.size() << ")\n";
  if (!r.coloring.empty()) {
    const std::string cpath = out_path + ".colors";
    std::ofstream out(cpath);
    if (!out) throw FormatError("cannot open " + cpath + " for writing");
    write_coloring(out, r.coloring);
    std::cout << "wrote " << cpath << " (colors=" << r.num_colors << ")\n";
  }
  if (kind == "planted-dicut")
    std::cout << "planted_crossing=" << r.planted_crossing << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Single-pass streaming estimation of maximum directed cuts: input "
      "reductions, sketch + recursive estimator, offline and exact references"};
  app.require_subcommand(1);

  // --- gen -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  std::string gen_kind = "uniform-random", gen_out;
  std::size_t gen_n = 100, gen_m = 500;
  std::uint64_t gen_seed = 1;
  double gen_plant = 0.9, gen_exponent = 2.0;
  int gen_layers = 3;
  gen->add_option("--kind", gen_kind, "Graph family")
      ->check(CLI::IsMember({"uniform-random", "planted-dicut", "layered-dag",
                             "power-law-out"}));
  gen->add_option("--n", gen_n, "Vertices")->required();
  gen->add_option("--m", gen_m, "Edges")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--plant-fraction", gen_plant, "planted-dicut: crossing fraction");
  gen->add_option("--layers", gen_layers, "layered-dag: layer count");
  gen->add_option("--exponent", gen_exponent, "power-law-out: source exponent");
  gen->add_option("--out", gen_out, "Output edge-list path")->required();

  // --- run -------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run the pipeline on a graph file");
  RunOptions opt;
  ParamFlags pf;
  std::string skip_steps, run_out, colors_file;
  run->add_option("--graph", opt.graph_path, "Edge-list file")->required();
  run->add_option("--colors-file", colors_file,
                  "Vertex color table (1-based, one per line); default is a "
                  "seeded hash coloring plus the monochromatic filter");
  run->add_option("--mode", opt.mode, "stream | offline | exact | compare")
      ->check(CLI::IsMember({"stream", "offline", "exact", "compare"}));
  run->add_option("--seed", opt.seed, "Run seed");
  run->add_option("--keep-prob", opt.keep_prob, "Subsampling keep probability");
  run->add_option("--flip-prob", opt.flip_prob, "Orientation flip probability");
  run->add_option("--skip-preprocess", skip_steps,
                  "Comma list of stages to skip: subsample,flip,color");
  run->add_option("--exact-limit", opt.exact_limit,
                  "Largest n the exhaustive solver accepts");
  run->add_flag("--timing", opt.timing, "Record wall time in the report");
  run->add_option("--assignment-out", opt.assignment_out,
                  "Write the fractional assignment (one value per vertex; "
                  "offline/exact/compare modes)");
  run->add_option("--tpos-out", opt.tpos_out,
                  "Write the closed-form per-vertex assignment (same format)");
  run->add_option("--out", run_out, "Write the report here instead of stdout");
  pf.add_to(run);

  // --- bench -----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Parameter sweep, CSV output");
  BenchOptions bopt;
  ParamFlags bpf;
  std::string bench_out, bench_colors_file;
  std::string bench_kind;
  std::size_t bench_n = 1000, bench_m = 5000;
  double bench_plant = 0.9, bench_exponent = 2.0;
  int bench_layers = 3;
  std::string grid_d, grid_vp, grid_ep, grid_es;
  bench->add_option("--graph", bopt.base.graph_path, "Edge-list file input");
  bench->add_option("--kind", bench_kind,
                    "Generate the input instead: graph family")
      ->check(CLI::IsMember({"uniform-random", "planted-dicut", "layered-dag",
                             "power-law-out"}));
  bench->add_option("--n", bench_n, "Generated vertices");
  bench->add_option("--m", bench_m, "Generated edges");
  bench->add_option("--plant-fraction", bench_plant, "planted-dicut fraction");
  bench->add_option("--layers", bench_layers, "layered-dag layers");
  bench->add_option("--exponent", bench_exponent, "power-law-out exponent");
  bench->add_option("--colors-file", bench_colors_file, "Vertex color table");
  bench->add_option("--seed", bopt.base.seed, "Base seed");
  bench->add_option("--trials", bopt.trials, "Seeded trials per grid point");
  bench->add_option("--grid-d", grid_d, "Comma list of d values");
  bench->add_option("--grid-vertex-prob", grid_vp, "Comma list of W probabilities");
  bench->add_option("--grid-edge-prob", grid_ep, "Comma list of B probabilities");
  bench->add_option("--grid-eval-size", grid_es, "Comma list of |C| capacities");
  bench->add_flag("--timing", bopt.base.timing, "Fill the wall_ms column");
  bench->add_option("--out", bench_out, "Write the CSV here instead of stdout");
  bpf.add_to(bench);

  try {
    app.parse(argc, argv);

    if (gen->parsed())
      return cmd_gen(gen_kind, gen_n, gen_m, gen_seed, gen_plant, gen_layers,
                     gen_exponent, gen_out);

    if (run->parsed()) {
      opt.colors_path = colors_file;
      opt.params = pf.build(run);
      for (const std::string& step : split_commas(skip_steps)) {
        if (step == "subsample") opt.skip_subsample = true;
        else if (step == "flip") opt.skip_flip = true;
        else if (step == "color") opt.skip_color_filter = true;
        else if (!step.empty())
          throw ParamError("unknown preprocessing stage: " + step);
      }
      const RunReport report = run_pipeline(opt);
      if (report.has_stream && report.reservoir_partial)
        std::cerr << "warning: the stream ended before the evaluation reservoir "
                     "filled; the estimate averages over "
                  << report.c_size << " edges\n";
      if (run_out.empty()) std::cout << report.to_text();
      else write_text_file(run_out, report.to_text());
      return 0;
    }

    // bench
    if (!bench_kind.empty()) {
      if (!bopt.base.graph_path.empty())
        throw ParamError("give either --graph or --kind, not both");
      const GenResult g = generate(bench_kind, bench_n, bench_m, bopt.base.seed,
                                   bench_plant, bench_layers, bench_exponent);
      bopt.base.graph_inline = g.graph;
      bopt.base.input_label = bench_kind;
      if (!g.coloring.empty()) bopt.base.colors_inline = g.coloring;
    } else if (bopt.base.graph_path.empty()) {
      throw ParamError("bench needs --graph or --kind");
    }
    bopt.base.colors_path = bench_colors_file;
    bopt.base.params = bpf.build(bench);
    int axes = 0;
    if (!grid_d.empty()) { bopt.grid_axis = "d"; bopt.grid_values = parse_double_list(grid_d, "--grid-d"); ++axes; }
    if (!grid_vp.empty()) { bopt.grid_axis = "vertex-prob"; bopt.grid_values = parse_double_list(grid_vp, "--grid-vertex-prob"); ++axes; }
    if (!grid_ep.empty()) { bopt.grid_axis = "edge-prob"; bopt.grid_values = parse_double_list(grid_ep, "--grid-edge-prob"); ++axes; }
    if (!grid_es.empty()) { bopt.grid_axis = "eval-size"; bopt.grid_values = parse_double_list(grid_es, "--grid-eval-size"); ++axes; }
    if (axes > 1) throw ParamError("pick at most one grid axis");
    const std::string csv = run_bench_csv(bopt);
    if (bench_out.empty()) std::cout << csv;
    else write_text_file(bench_out, csv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  } catch (const ParamError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
