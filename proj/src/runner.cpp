#include "maxdicut/runner.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "maxdicut/offline.hpp"
#include "maxdicut/preprocess.hpp"
#include "maxdicut/streaming.hpp"

namespace maxdicut {

namespace {

void require_practical(const ParamSet& p) {
  if (p.mode != ParamSet::Mode::practical)
    throw ParamError("the pipeline executes practical-mode parameters only");
  if (p.thresholds.size() != static_cast<std::size_t>(p.k))
    throw ParamError("parameter set not initialized; build it with practical_params");
}

std::string bool01(bool b) { return b ? "1" : "0"; }

std::string join_thresholds(const std::vector<double>& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += format_double(t[i]);
  }
  return out;
}

struct Chain {
  std::unique_ptr<EdgeSource> head;
  SubsampleSource* sub = nullptr;
  FlipSource* flip = nullptr;
  ColorFilterSource* filter = nullptr;
  Coloring coloring;

  Chain(std::unique_ptr<EdgeSource> src, const RunOptions& opt,
        const std::optional<std::vector<int>>& table)
      : coloring(table ? Coloring::table(opt.params.k, *table)
                       : Coloring::hashed(opt.params.k, opt.seed)) {
    head = std::move(src);
    if (!opt.skip_subsample && opt.keep_prob < 1.0) {
      auto s = std::make_unique<SubsampleSource>(std::move(head), opt.keep_prob,
                                                 opt.seed);
      sub = s.get();
      head = std::move(s);
    }
    if (!opt.skip_flip && opt.flip_prob > 0.0) {
      auto f = std::make_unique<FlipSource>(std::move(head), opt.flip_prob,
                                            opt.seed);
      flip = f.get();
      head = std::move(f);
    }
    // The monochromatic-edge filter belongs to the hashed-coloring path; a
    // supplied color table is expected to be proper already.
    if (!table && !opt.skip_color_filter) {
      auto c = std::make_unique<ColorFilterSource>(std::move(head), opt.params.k,
                                                   opt.seed);
      filter = c.get();
      coloring = c->coloring();
      head = std::move(c);
    }
  }

  void record(RunReport& r) const {
    if (sub) {
      r.ran_subsample = true;
      r.stage_seen = sub->seen();
      r.stage_kept = sub->kept();
    }
    if (flip) {
      r.ran_flip = true;
      r.stage_flipped = flip->flipped();
      if (!sub) {
        r.stage_seen = flip->seen();
        r.stage_kept = flip->seen();
      }
    }
    if (filter) {
      r.ran_color_filter = true;
      r.stage_dropped = filter->dropped();
      if (!sub && !flip) {
        r.stage_seen = filter->seen();
        r.stage_kept = filter->seen();
      }
    }
  }
};

std::optional<std::vector<int>> load_color_table(const RunOptions& opt,
                                                 std::size_t n) {
  if (opt.colors_inline) {
    if (opt.colors_inline->size() != n)
      throw ParamError("inline coloring size does not match the vertex count");
    return opt.colors_inline;
  }
  if (!opt.colors_path.empty()) return load_coloring(opt.colors_path, n);
  return std::nullopt;
}

std::unique_ptr<EdgeSource> open_input(const RunOptions& opt, std::string& label) {
  if (opt.graph_inline) {
    label = opt.input_label.empty()
                ? "inline:" + std::to_string(opt.graph_inline->n) + "v," +
                      std::to_string(opt.graph_inline->edges.size()) + "e"
                : opt.input_label;
    return std::make_unique<VectorSource>(*opt.graph_inline);
  }
  if (opt.graph_path.empty()) throw ParamError("no input graph given");
  label = opt.input_label.empty() ? opt.graph_path : opt.input_label;
  return std::make_unique<FileSource>(opt.graph_path);
}

void write_assignment_file(const std::string& path, const FractionalAssignment& f) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  write_assignment(out, f);
  if (!out) throw FormatError("failed writing " + path);
}

void fill_stream_results(RunReport& r, const StreamState& st, double keep_prob) {
  const FinalizeResult fin = st.finalize();
  r.has_stream = true;
  r.stream_length = st.stream_length();
  r.cut_val = fin.cut_val;
  r.fail_fraction = fin.fail_fraction();
  r.rescaled = fin.cut_val * static_cast<double>(st.stream_length()) / keep_prob;
  r.w_size = st.w_size();
  r.b_size = st.b_edges().size();
  r.c_size = st.c_items().size();
  r.reservoir_partial = fin.reservoir_partial;
  r.peak_bytes = st.peak_tracked_bytes();
}

}  // namespace

RunReport run_pipeline(const RunOptions& opt) {
  require_practical(opt.params);
  if (opt.mode != "stream" && opt.mode != "offline" && opt.mode != "exact" &&
      opt.mode != "compare")
    throw ParamError("mode must be one of stream, offline, exact, compare");
  if (!(opt.keep_prob > 0.0 && opt.keep_prob <= 1.0))
    throw ParamError("keep probability must lie in (0, 1]");
  if (!(opt.flip_prob >= 0.0 && opt.flip_prob < 1.0))
    throw ParamError("flip probability must lie in [0, 1)");
  if (opt.mode == "stream" &&
      (!opt.assignment_out.empty() || !opt.tpos_out.empty()))
    throw ParamError(
        "assignment emission needs the materialized graph; use offline, exact, "
        "or compare mode");

  const auto t0 = std::chrono::steady_clock::now();

  RunReport r;
  r.mode = opt.mode;
  r.seed = opt.seed;
  r.params = opt.params;
  r.keep_prob = opt.keep_prob;
  r.flip_prob = opt.flip_prob;

  std::unique_ptr<EdgeSource> src = open_input(opt, r.input);
  const std::size_t n = src->vertex_count();
  const std::optional<std::vector<int>> table = load_color_table(opt, n);
  Chain chain(std::move(src), opt, table);

  const double keep = (chain.sub != nullptr) ? opt.keep_prob : 1.0;

  if (opt.mode == "stream") {
    StreamState st = process_stream(*chain.head, chain.coloring, opt.params,
                                    opt.seed);
    if (chain.sub) st.set_scale_factor(chain.sub->scale_factor());
    chain.record(r);
    fill_stream_results(r, st, keep);
  } else {
    // offline / exact / compare all need the preprocessed graph in memory.
    ColoredDigraph g = materialize(*chain.head, chain.coloring);
    chain.record(r);

    if (opt.mode == "compare") {
      VectorSource replay(g.vertex_count(), g.edges());
      StreamState st =
          process_stream(replay, chain.coloring, opt.params, opt.seed);
      if (chain.sub) st.set_scale_factor(chain.sub->scale_factor());
      fill_stream_results(r, st, keep);
    }

    r.has_offline = true;
    r.offline_edges = g.edge_count();
    const FractionalAssignment pos = compute_pos(g, opt.params.alpha);
    if (g.edge_count() > 0) {
      r.offline_cut = cut_value(g, pos);
      r.offline_rescaled =
          r.offline_cut * static_cast<double>(g.edge_count()) / keep;
    }
    if (!opt.assignment_out.empty()) write_assignment_file(opt.assignment_out, pos);
    if (!opt.tpos_out.empty()) {
      FractionalAssignment tp;
      tp.value.assign(g.vertex_count(), 0.0);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > 0)
          tp.value[v] = compute_tpos(g, v, opt.params.alpha, pos);
      write_assignment_file(opt.tpos_out, tp);
    }

    const bool want_exact = opt.mode == "exact" || opt.mode == "compare";
    if (opt.mode == "exact" && g.vertex_count() > opt.exact_limit)
      throw ParamError("exact mode enumerates all 2^n assignments; refusing n=" +
                       std::to_string(g.vertex_count()) + " > " +
                       std::to_string(opt.exact_limit));
    if (want_exact && g.vertex_count() <= opt.exact_limit &&
        g.edge_count() > 0) {
      const ExactCut ex = exact_maxdicut(g, opt.exact_limit);
      r.has_exact = true;
      r.exact_maxval = ex.value;
      r.exact_crossing = ex.crossing_edges;
    }
  }

  if (opt.timing) {
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 -
                                                                               t0)
            .count();
  }
  return r;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "input=" << input << "\n";
  out << "mode=" << mode << "\n";
  out << "seed=" << seed << "\n";
  out << "params.k=" << params.k << "\n";
  out << "params.alpha=" << format_double(params.alpha) << "\n";
  out << "params.d=" << params.d << "\n";
  out << "params.vertex_sample_prob=" << format_double(params.vertex_sample_prob)
      << "\n";
  out << "params.edge_sample_prob=" << format_double(params.edge_sample_prob)
      << "\n";
  out << "params.eval_reservoir_size=" << params.eval_reservoir_size << "\n";
  out << "params.thresholds=" << join_thresholds(params.thresholds) << "\n";
  out << "reduce.keep_prob=" << format_double(keep_prob) << "\n";
  out << "reduce.flip_prob=" << format_double(flip_prob) << "\n";
  out << "reduce.ran_subsample=" << bool01(ran_subsample) << "\n";
  out << "reduce.ran_flip=" << bool01(ran_flip) << "\n";
  out << "reduce.ran_color_filter=" << bool01(ran_color_filter) << "\n";
  out << "reduce.seen=" << stage_seen << "\n";
  out << "reduce.kept=" << stage_kept << "\n";
  out << "reduce.flipped=" << stage_flipped << "\n";
  out << "reduce.dropped_monochromatic=" << stage_dropped << "\n";
  if (has_stream) {
    out << "stream.length=" << stream_length << "\n";
    out << "stream.cut_val=" << format_double(cut_val) << "\n";
    out << "stream.fail_fraction=" << format_double(fail_fraction) << "\n";
    out << "stream.rescaled=" << format_double(rescaled) << "\n";
    out << "stream.w_size=" << w_size << "\n";
    out << "stream.b_size=" << b_size << "\n";
    out << "stream.c_size=" << c_size << "\n";
    out << "stream.reservoir_partial=" << bool01(reservoir_partial) << "\n";
    out << "stream.peak_tracked_bytes=" << peak_bytes << "\n";
  }
  if (has_offline) {
    out << "offline.edges=" << offline_edges << "\n";
    out << "offline.cut_value=" << format_double(offline_cut) << "\n";
    out << "offline.rescaled=" << format_double(offline_rescaled) << "\n";
  }
  if (has_exact) {
    out << "exact.maxval=" << format_double(exact_maxval) << "\n";
    out << "exact.crossing=" << exact_crossing << "\n";
  }
  if (wall_ms >= 0.0) out << "wall_ms=" << format_double(wall_ms) << "\n";
  return out.str();
}

std::string run_bench_csv(const BenchOptions& opt) {
  require_practical(opt.base.params);
  if (opt.trials < 1) throw ParamError("bench needs at least one trial");
  const bool has_axis = !opt.grid_axis.empty();
  if (has_axis && opt.grid_values.empty())
    throw ParamError("a grid axis needs at least one value");
  if (has_axis && opt.grid_axis != "d" && opt.grid_axis != "vertex-prob" &&
      opt.grid_axis != "edge-prob" && opt.grid_axis != "eval-size")
    throw ParamError("unknown grid axis: " + opt.grid_axis);

  // Materialize once, color filter included (the sweep varies estimator
  // parameters; pos and the graph stay fixed across the grid).
  std::string label;
  std::unique_ptr<EdgeSource> src = open_input(opt.base, label);
  const std::size_t n = src->vertex_count();
  const std::optional<std::vector<int>> table = load_color_table(opt.base, n);
  RunOptions chain_opt = opt.base;
  chain_opt.skip_subsample = true;
  chain_opt.skip_flip = true;
  Chain chain(std::move(src), chain_opt, table);
  const ColoredDigraph g = materialize(*chain.head, chain.coloring);

  double offline_cut = 0.0;
  if (g.edge_count() > 0) {
    const FractionalAssignment pos = compute_pos(g, opt.base.params.alpha);
    offline_cut = cut_value(g, pos);
  }

  std::vector<std::pair<std::string, ParamSet>> points;
  if (!has_axis) {
    points.emplace_back("base", opt.base.params);
  } else {
    for (const double v : opt.grid_values) {
      ParamSet p = opt.base.params;
      std::string point = opt.grid_axis + "=";
      if (opt.grid_axis == "d") {
        if (!(v >= 1.0)) throw ParamError("d grid values must be >= 1");
        // Rebuild rather than poke the field: the padded tree sizes are (2d)^a
        // and must follow d across the grid.
        p = practical_params(p.k, p.alpha, static_cast<std::uint64_t>(v),
                             p.vertex_sample_prob, p.edge_sample_prob,
                             p.eval_reservoir_size, p.thresholds);
        point += std::to_string(p.d);
      } else if (opt.grid_axis == "vertex-prob") {
        if (!(v >= 0.0 && v <= 1.0))
          throw ParamError("vertex-prob grid values must lie in [0, 1]");
        p.vertex_sample_prob = v;
        point += format_double(v);
      } else if (opt.grid_axis == "edge-prob") {
        if (!(v >= 0.0 && v <= 1.0))
          throw ParamError("edge-prob grid values must lie in [0, 1]");
        p.edge_sample_prob = v;
        point += format_double(v);
      } else {  // eval-size
        if (!(v >= 1.0)) throw ParamError("eval-size grid values must be >= 1");
        p.eval_reservoir_size = static_cast<std::uint64_t>(v);
        point += std::to_string(p.eval_reservoir_size);
      }
      points.emplace_back(point, p);
    }
  }

  std::ostringstream csv;
  csv << "param_point,trial,cut_val,err_vs_offline,peak_bytes,wall_ms\n";
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      const std::uint64_t trial_seed =
          rng::keyed_u64(opt.base.seed, rng::Tag::trial, pi, t);
      const auto t0 = std::chrono::steady_clock::now();
      VectorSource replay(g.vertex_count(), g.edges());
      const StreamState st =
          process_stream(replay, chain.coloring, points[pi].second, trial_seed);
      const FinalizeResult fin = st.finalize();
      double ms = 0.0;
      if (opt.base.timing) {
        const auto t1 = std::chrono::steady_clock::now();
        ms = std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
                 t1 - t0)
                 .count();
      }
      csv << points[pi].first << ',' << t << ',' << format_double(fin.cut_val)
          << ',' << format_double(fin.cut_val - offline_cut) << ','
          << st.peak_tracked_bytes() << ',' << format_double(ms) << "\n";
    }
  }
  return csv.str();
}

}  // namespace maxdicut
