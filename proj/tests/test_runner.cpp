#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "maxdicut/gen.hpp"
#include "maxdicut/offline.hpp"
#include "maxdicut/runner.hpp"

using namespace maxdicut;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

EdgeList single_edge() {
  EdgeList el;
  el.n = 2;
  el.edges.push_back({0, 1});
  return el;
}

RunOptions base_options(const EdgeList& el, std::vector<int> colors, int k) {
  RunOptions opt;
  opt.graph_inline = el;
  opt.colors_inline = std::move(colors);
  opt.params = practical_params(
      k, 0.05, 2, 1.0, 1.0, 1000,
      std::vector<double>(static_cast<std::size_t>(k), kInf));
  return opt;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name) : path("/tmp/maxdicut_test_" + name) {}
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("single edge compare mode ties all three evaluations") {
  RunOptions opt = base_options(single_edge(), {1, 2}, 2);
  opt.mode = "compare";
  const RunReport r = run_pipeline(opt);
  CHECK(r.has_stream);
  CHECK(r.has_offline);
  CHECK(r.has_exact);
  CHECK(r.cut_val == 1.0);
  CHECK(r.offline_cut == 1.0);
  CHECK(r.exact_maxval == 1.0);
  CHECK(r.exact_crossing == 1);
  CHECK(r.fail_fraction == 0.0);
  CHECK(r.stream_length == 1);
}

TEST_CASE("reports are byte-identical across reruns") {
  const GenResult g = gen_planted_dicut(24, 80, 0.8, 3);
  RunOptions opt = base_options(g.graph, g.coloring, 3);
  opt.mode = "compare";
  opt.seed = 17;
  const std::string a = run_pipeline(opt).to_text();
  const std::string b = run_pipeline(opt).to_text();
  CHECK(a == b);
  CHECK(a.find("wall_ms") == std::string::npos);
  // Timing mode adds the one non-reproducible line.
  opt.timing = true;
  const std::string timed = run_pipeline(opt).to_text();
  CHECK(timed.find("wall_ms=") != std::string::npos);
}

TEST_CASE("compare mode replays the identical stream") {
  // The stream section of a compare run must match a plain stream run with
  // the same seed and flags (the replay feeds the same edges in the same
  // order to the same sketch).
  const GenResult g = gen_uniform_random(30, 120, 8);
  RunOptions opt;
  opt.graph_inline = g.graph;
  opt.params = practical_params(3, 0.05, 2, 0.5, 0.5, 60, {kInf, kInf, kInf});
  opt.seed = 99;
  opt.mode = "stream";
  const RunReport stream_run = run_pipeline(opt);
  opt.mode = "compare";
  const RunReport compare_run = run_pipeline(opt);
  CHECK(stream_run.cut_val == compare_run.cut_val);
  CHECK(stream_run.w_size == compare_run.w_size);
  CHECK(stream_run.b_size == compare_run.b_size);
  CHECK(stream_run.c_size == compare_run.c_size);
  CHECK(stream_run.fail_fraction == compare_run.fail_fraction);
  CHECK(stream_run.stream_length == compare_run.stream_length);
}

TEST_CASE("compare mode sandwiches the offline value on small instances") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const GenResult g = gen_uniform_random(7, 18, 100 + s);
    RunOptions opt;
    opt.graph_inline = g.graph;
    opt.params = practical_params(3, 0.05, 2, 1.0, 1.0, 18,
                                  {kInf, kInf, kInf});
    opt.seed = s;
    opt.mode = "compare";
    const RunReport r = run_pipeline(opt);
    REQUIRE(r.has_offline);
    REQUIRE(r.has_exact);
    CHECK(r.offline_cut <= r.exact_maxval + 1e-12);
    CHECK(r.offline_cut >= (0.5 - opt.params.alpha) * r.exact_maxval - 1e-12);
  }
}

TEST_CASE("exact mode refuses large instances") {
  const GenResult g = gen_uniform_random(25, 40, 5);
  RunOptions opt;
  opt.graph_inline = g.graph;
  opt.params = practical_params(3, 0.05, 1, 1.0, 1.0, 10, {kInf, kInf, kInf});
  opt.mode = "exact";
  opt.exact_limit = 24;
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
  opt.exact_limit = 25;
  CHECK_NOTHROW(run_pipeline(opt));
}

TEST_CASE("option validation") {
  RunOptions opt = base_options(single_edge(), {1, 2}, 2);
  opt.mode = "banana";
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
  opt = base_options(single_edge(), {1, 2}, 2);
  opt.keep_prob = 0.0;
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
  opt = base_options(single_edge(), {1, 2}, 2);
  opt.flip_prob = 1.0;
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
  // Theory-mode parameter sets never execute.
  opt = base_options(single_edge(), {1, 2}, 2);
  opt.params = derive_theory_params(0.1, 100);
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
  // No input at all.
  opt = RunOptions{};
  opt.params = practical_params(2, 0.05, 1, 1.0, 1.0, 1, {kInf, kInf});
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
}

TEST_CASE("rescaled estimates divide by the keep probability") {
  const GenResult g = gen_uniform_random(100, 4000, 21);
  RunOptions opt;
  opt.graph_inline = g.graph;
  opt.params = practical_params(3, 0.05, 1, 1.0, 1.0, 4000, {kInf, kInf, kInf});
  opt.seed = 2;
  opt.keep_prob = 0.5;
  const RunReport r = run_pipeline(opt);
  CHECK(r.ran_subsample);
  CHECK(r.ran_color_filter);
  CHECK(r.stage_seen == 4000);
  CHECK(r.stage_kept < 4000);
  // The color filter removes its monochromatic share after subsampling.
  CHECK(r.stream_length == r.stage_kept - r.stage_dropped);
  CHECK(r.rescaled ==
        r.cut_val * static_cast<double>(r.stream_length) / 0.5);
  // Skipping the stage restores the identity scale.
  opt.skip_subsample = true;
  const RunReport s = run_pipeline(opt);
  CHECK_FALSE(s.ran_subsample);
  CHECK(s.stream_length >= r.stream_length);
  CHECK(s.rescaled == s.cut_val * static_cast<double>(s.stream_length));
}

TEST_CASE("hashed coloring with filter handles uncolored input") {
  const GenResult g = gen_uniform_random(50, 600, 31);
  RunOptions opt;
  opt.graph_inline = g.graph;
  opt.params = practical_params(4, 0.05, 1, 1.0, 1.0, 600,
                                {kInf, kInf, kInf, kInf});
  opt.seed = 12;
  const RunReport r = run_pipeline(opt);
  CHECK(r.ran_color_filter);
  CHECK(r.stage_dropped > 0);  // ~1/4 of 600 monochromatic edges removed
  CHECK(r.stream_length == 600 - r.stage_dropped);
  // Explicitly skipping the filter on uncolored input fails fast: the
  // hashed coloring leaves monochromatic edges the sketch must reject.
  opt.skip_color_filter = true;
  CHECK_THROWS_AS(run_pipeline(opt), ParamError);
}

TEST_CASE("assignment emission writes one value per vertex") {
  const TempPath pos_path("pos.txt"), tpos_path("tpos.txt");
  // 3 vertices with an isolated one: its closed form is reported as 0.
  EdgeList el;
  el.n = 3;
  el.edges.push_back({0, 1});
  RunOptions opt = base_options(el, {1, 2, 1}, 2);
  opt.mode = "offline";
  opt.assignment_out = pos_path.path;
  opt.tpos_out = tpos_path.path;
  const RunReport r = run_pipeline(opt);
  CHECK(r.has_offline);

  const ColoredDigraph g(el.n, el.edges, {1, 2, 1}, 2);
  const FractionalAssignment pos = compute_pos(g, opt.params.alpha);
  std::istringstream pos_in(slurp(pos_path.path));
  const FractionalAssignment pos_read = [&] {
    FractionalAssignment f;
    std::string line;
    while (std::getline(pos_in, line)) f.value.push_back(parse_double(line));
    return f;
  }();
  REQUIRE(pos_read.size() == 3);
  for (std::size_t v = 0; v < 3; ++v) CHECK(pos_read.value[v] == pos[v]);

  std::istringstream tpos_in(slurp(tpos_path.path));
  std::vector<double> tpos_read;
  std::string line;
  while (std::getline(tpos_in, line)) tpos_read.push_back(parse_double(line));
  REQUIRE(tpos_read.size() == 3);
  CHECK(tpos_read[0] == compute_tpos(g, 0, opt.params.alpha, pos));
  CHECK(tpos_read[1] == compute_tpos(g, 1, opt.params.alpha, pos));
  CHECK(tpos_read[2] == 0.0);  // isolated

  // Stream mode cannot emit assignments (nothing is materialized).
  RunOptions bad = base_options(el, {1, 2, 1}, 2);
  bad.assignment_out = pos_path.path;
  CHECK_THROWS_AS(run_pipeline(bad), ParamError);
}

TEST_CASE("bench sweeps produce a full grid") {
  const GenResult g = gen_planted_dicut(30, 120, 0.8, 7);
  BenchOptions b;
  b.base.graph_inline = g.graph;
  b.base.colors_inline = g.coloring;
  b.base.params = practical_params(3, 0.05, 2, 0.5, 0.5, 60,
                                   {kInf, kInf, kInf});
  b.base.seed = 5;
  b.grid_axis = "d";
  b.grid_values = {1.0, 2.0, 4.0};
  b.trials = 10;
  const std::string csv = run_bench_csv(b);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "param_point,trial,cut_val,err_vs_offline,peak_bytes,wall_ms");
  std::size_t rows = 0;
  std::size_t d4_rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("d=4,", 0) == 0) ++d4_rows;
  }
  CHECK(rows == 30);
  CHECK(d4_rows == 10);
  // Deterministic.
  CHECK(run_bench_csv(b) == csv);
}

TEST_CASE("bench grid validation") {
  BenchOptions b;
  b.base.graph_inline = single_edge();
  b.base.colors_inline = std::vector<int>{1, 2};
  b.base.params = practical_params(2, 0.05, 1, 1.0, 1.0, 1, {kInf, kInf});
  b.grid_axis = "vertex-prob";
  b.grid_values = {0.5, 1.5};
  CHECK_THROWS_AS(run_bench_csv(b), ParamError);
  b.grid_axis = "d";
  b.grid_values = {0.0};
  CHECK_THROWS_AS(run_bench_csv(b), ParamError);
  b.grid_axis = "mystery";
  b.grid_values = {1.0};
  CHECK_THROWS_AS(run_bench_csv(b), ParamError);
  b.grid_axis = "eval-size";
  b.grid_values = {};
  CHECK_THROWS_AS(run_bench_csv(b), ParamError);
  b.grid_values = {1.0};
  b.trials = 0;
  CHECK_THROWS_AS(run_bench_csv(b), ParamError);
}

TEST_CASE("bench eval-size axis reports non-decreasing peak memory") {
  // Full sampling keeps the ingest footprint identical across grid points,
  // so only the evaluation reservoir and memo drive the peak.
  const GenResult g = gen_uniform_random(60, 800, 13);
  BenchOptions b;
  b.base.graph_inline = g.graph;
  b.base.params = practical_params(3, 0.05, 1, 1.0, 1.0, 1,
                                   {kInf, kInf, kInf});
  b.base.seed = 3;
  b.grid_axis = "eval-size";
  b.grid_values = {8, 64, 512};
  b.trials = 1;
  std::istringstream in(run_bench_csv(b));
  std::string line;
  std::getline(in, line);  // header
  std::uint64_t prev_peak = 0;
  while (std::getline(in, line)) {
    // peak_bytes is the fifth field.
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(ls, field, ',');
    const std::uint64_t peak = std::stoull(field);
    CHECK(peak >= prev_peak);
    prev_peak = peak;
  }
}
