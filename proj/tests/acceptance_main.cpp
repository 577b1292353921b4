// End-to-end acceptance checks for the streaming directed-cut pipeline.
// Each criterion prints exactly one PASS/FAIL line and enforces its own
// wall-clock budget; the process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxdicut/gen.hpp"
#include "maxdicut/offline.hpp"
#include "maxdicut/oracle.hpp"
#include "maxdicut/preprocess.hpp"
#include "maxdicut/rng.hpp"
#include "maxdicut/runner.hpp"
#include "maxdicut/streaming.hpp"

using namespace maxdicut;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// --- tiny harness -----------------------------------------------------------

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

int g_failures = 0;

void run_criterion(int id, const std::string& label, double budget_s,
                   const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration_cast<std::chrono::duration<double>>(
          std::chrono::steady_clock::now() - t0)
          .count();
  if (out.ok && secs > budget_s) {
    out = fail("exceeded time budget");
  }
  std::ostringstream line;
  line << (out.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << label;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << secs << "s, budget " << budget_s << "s)";
  if (!out.ok) line << " -- " << out.detail;
  std::puts(line.str().c_str());
  if (!out.ok) ++g_failures;
}

// --- shared instance builders ------------------------------------------------

// Random properly-colored multigraph (duplicate edges allowed).
ColoredDigraph random_colored(std::uint64_t seed, std::size_t max_n,
                              std::size_t max_m, int k) {
  rng::SplitMix64 gen(seed);
  const auto n = 2 + gen.next_below(max_n - 1);
  std::vector<int> colors(n);
  while (true) {
    for (auto& c : colors) c = 1 + static_cast<int>(gen.next_below(k));
    bool mixed = false;
    for (std::size_t v = 1; v < n; ++v) mixed = mixed || colors[v] != colors[0];
    if (mixed) break;
  }
  const auto m = 1 + gen.next_below(max_m);
  std::vector<Edge> edges;
  while (edges.size() < m) {
    const auto u = static_cast<VertexId>(gen.next_below(n));
    const auto v = static_cast<VertexId>(gen.next_below(n));
    if (u == v || colors[u] == colors[v]) continue;
    edges.push_back({u, v});
  }
  return ColoredDigraph(n, edges, colors, k);
}

// Two-class instance for the resampling criteria: 30 vertices (colors 1 and
// 2 under k = 3 so the dependency trees stay small enough to observe), 60
// keyed random cross-class edges in both directions.
ColoredDigraph two_class_graph() {
  const std::size_t n = 30, m = 60;
  std::vector<int> colors(n);
  for (std::size_t v = 0; v < n; ++v) colors[v] = v < n / 2 ? 1 : 2;
  std::vector<Edge> edges;
  rng::SplitMix64 gen(20260501);
  while (edges.size() < m) {
    const auto u = static_cast<VertexId>(gen.next_below(n));
    const auto v = static_cast<VertexId>(gen.next_below(n));
    if (u == v || colors[u] == colors[v]) continue;
    edges.push_back({u, v});
  }
  return ColoredDigraph(n, edges, colors, 3);
}

StreamState stream_graph(const ColoredDigraph& g, const ParamSet& p,
                         std::uint64_t seed) {
  std::vector<int> colors(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) colors[v] = g.color(v);
  VectorSource src(g.vertex_count(), g.edges());
  return process_stream(src, Coloring::table(g.num_colors(), colors), p, seed);
}

struct RunningStats {
  // Welford accumulation.
  std::uint64_t n = 0;
  double mean = 0.0, m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double stddev() const {
    return n < 2 ? 0.0 : std::sqrt(m2 / static_cast<double>(n - 1));
  }
  double se() const { return stddev() / std::sqrt(static_cast<double>(n)); }
};

// --- criteria ----------------------------------------------------------------

Outcome criterion1_sandwich() {
  const double alphas[] = {0.01, 0.05, 0.1};
  const int ks[] = {2, 3, 4};
  for (std::uint64_t i = 0; i < 500; ++i) {
    const ColoredDigraph g = random_colored(1000 + i, 8, 20, ks[i % 3]);
    const double opt = exact_maxdicut(g).value;
    for (const double alpha : alphas) {
      const double val = cut_value(g, compute_pos(g, alpha));
      if (val > opt + 1e-12)
        return fail("assignment value exceeded the optimum on instance " +
                    std::to_string(i));
      if (val < (0.5 - alpha) * opt - 1e-12)
        return fail("assignment value fell below (1/2 - alpha) * optimum on "
                    "instance " +
                    std::to_string(i));
    }
  }
  return {};
}

Outcome criterion2_top_color_identity() {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int k = 2 + static_cast<int>(i % 3);
    const ColoredDigraph g = random_colored(40000 + i, 10, 30, k);
    const FractionalAssignment pos = compute_pos(g, 0.05);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.color(v) != k || g.degree(v) == 0) continue;
      const double t = compute_tpos(g, v, 0.05, pos);
      if (std::abs(t - pos[v]) > 1e-12)
        return fail("closed form deviates at vertex " + std::to_string(v) +
                    " of instance " + std::to_string(i));
    }
  }
  return {};
}

Outcome criterion3_reservoir_uniformity() {
  std::vector<std::uint64_t> hits(10, 0);
  const std::size_t trials = 100000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    Reservoir r(1, seed, rng::Tag::eval_accept, rng::Tag::eval_slot);
    for (VertexId i = 0; i < 10; ++i)
      r.update({i, static_cast<VertexId>(i + 10)});
    ++hits[r.items()[0].source];
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const double f = static_cast<double>(hits[i]) / trials;
    if (f < 0.09 || f > 0.11)
      return fail("item " + std::to_string(i) + " retained with frequency " +
                  std::to_string(f));
  }
  return {};
}

Outcome criterion4_ht_contract() {
  if (ht_avg({}) != 0.0) return fail("empty input did not average to 0");
  const double values[] = {0.2, 0.7, 0.9};
  const double probs[] = {0.5, 0.25, 1.0};
  RunningStats stats;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    std::vector<HTEntry> entries;
    for (int i = 0; i < 3; ++i) {
      const bool seen =
          rng::keyed_unit(t, rng::Tag::trial, static_cast<std::uint64_t>(i)) <
          probs[i];
      entries.push_back(seen ? HTEntry::of(values[i], probs[i])
                             : HTEntry::fail());
    }
    stats.add(ht_avg(entries));
  }
  const double dev = std::abs(stats.mean - 0.6);
  if (dev > 3.0 * stats.se())
    return fail("mean " + std::to_string(stats.mean) +
                " deviates from 0.6 by more than 3 standard errors");
  return {};
}

Outcome criterion5_exact_reproduction() {
  EdgeList el;
  el.n = 10;
  std::vector<int> colors(10);
  for (VertexId v = 0; v < 10; ++v) {
    if (v + 1 < 10) el.edges.push_back({v, v + 1});
    colors[v] = static_cast<int>(v) + 1;
  }
  const ParamSet p = practical_params(10, 0.05, 2, 1.0, 1.0, el.edges.size(),
                                      std::vector<double>(10, kInf));
  VectorSource src(el.n, el.edges);
  const StreamState st =
      process_stream(src, Coloring::table(10, colors), p, 7);
  const FinalizeResult fin = st.finalize();
  const ColoredDigraph g(el.n, el.edges, colors, 10);
  const double want = cut_value(g, compute_pos(g, p.alpha));
  if (std::abs(fin.cut_val - want) > 1e-12)
    return fail("streamed value " + std::to_string(fin.cut_val) +
                " differs from offline value " + std::to_string(want));
  if (fin.failures != 0) return fail("estimates failed at full sampling");
  return {};
}

Outcome criterion6_conditional_unbiasedness() {
  const ColoredDigraph g = two_class_graph();
  const ParamSet p = practical_params(3, 0.05, 2, 1.0, 1.0, g.edge_count(),
                                      {kInf, kInf, kInf});
  const StreamState st = stream_graph(g, p, 606);
  const double full = st.finalize().cut_val;
  RunningStats stats;
  const std::size_t trials = 20000;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const StreamState rs =
        st.with_resampled_w(rng::keyed_u64(606, rng::Tag::trial, t), 0.6);
    stats.add(rs.finalize().cut_val);
  }
  const double dev = std::abs(stats.mean - full);
  if (dev > 4.0 * stats.se())
    return fail("resampled mean " + std::to_string(stats.mean) +
                " deviates from the full-sampling value " +
                std::to_string(full) + " by more than 4 standard errors");
  return {};
}

Outcome criterion7_success_probability_law() {
  const ColoredDigraph g = two_class_graph();
  const ParamSet p = practical_params(3, 0.05, 2, 1.0, 1.0, g.edge_count(),
                                      {kInf, kInf, kInf});
  const StreamState st = stream_graph(g, p, 606);
  // A color-2 vertex whose realized dependency tree hits the padded size
  // exactly (no overshoot), so the survival probability is exactly
  // w_prob^tree_size(2).
  std::optional<VertexId> target;
  for (VertexId v = 0; v < g.vertex_count() && !target; ++v) {
    if (g.color(v) != 2 || g.degree(v) == 0) continue;
    const Estimate& est = st.vertex_estimate(v);
    if (est.ok && est.tree.size() == p.tree_size(2)) target = v;
  }
  if (!target) return fail("no color-2 vertex with an exactly padded tree");

  const double w_prob = 0.6;
  const double expect =
      std::pow(w_prob, static_cast<double>(p.tree_size(2)));
  const std::size_t trials = 20000;
  std::size_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const StreamState rs =
        st.with_resampled_w(rng::keyed_u64(707, rng::Tag::trial, t), w_prob);
    successes += rs.vertex_estimate(*target).ok;
  }
  const double rate = static_cast<double>(successes) / trials;
  const double se = std::sqrt(expect * (1.0 - expect) / trials);
  if (std::abs(rate - expect) > 4.0 * se)
    return fail("success rate " + std::to_string(rate) + " vs expected " +
                std::to_string(expect) + " (" + std::to_string(successes) +
                " successes)");
  return {};
}

Outcome criterion8_drop_rate() {
  const GenResult g = gen_uniform_random(1000, 100000, 88);
  RunningStats stats;
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto src = std::make_unique<VectorSource>(g.graph.n, g.graph.edges);
    ColorFilterSource filter(std::move(src), 4, 8800 + s);
    while (filter.next()) {
    }
    stats.add(static_cast<double>(filter.dropped()) /
              static_cast<double>(filter.seen()));
  }
  const double dev = std::abs(stats.mean - 0.25);
  if (dev > 3.0 * stats.se())
    return fail("mean dropped fraction " + std::to_string(stats.mean) +
                " deviates from 1/4 by more than 3 standard errors");
  return {};
}

Outcome criterion9_differential_oracle() {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const ColoredDigraph g = random_colored(90000 + i, 30, 80, 3);
    // Alternate threshold shapes so both estimator branches are exercised.
    const std::vector<double> thresholds =
        i % 2 ? std::vector<double>{kInf, 2.0, 0.0}
              : std::vector<double>{kInf, kInf, kInf};
    const ParamSet p =
        practical_params(3, 0.05, 2, 1.0, 1.0, g.edge_count(), thresholds);
    const StreamState st = stream_graph(g, p, 2000 + i);
    const SelectionFixture fx = extract_fixture(st);
    const FractionalAssignment est = intermediate_estimator(g, fx, p);
    const double streamed = st.finalize().cut_val;
    const double reference = cut_value(g, est);
    if (std::abs(streamed - reference) > 1e-12)
      return fail("streamed value " + std::to_string(streamed) +
                  " differs from the reference " + std::to_string(reference) +
                  " on fixture " + std::to_string(i));
  }
  return {};
}

Outcome criterion10_space_law() {
  // Fixed sampling parameters; only the stream length grows. The sketch is
  // population-bound (vertex sample over a fixed n), B is tiny at this edge
  // probability, and C is capacity-bound, so peak memory must flatten.
  const ParamSet p =
      practical_params(3, 0.05, 4, 0.02, 1e-4, 2000, {kInf, kInf, kInf});
  std::vector<std::size_t> peaks;
  for (const std::size_t m : {100000ull / 10, 100000ull, 1000000ull}) {
    const GenResult g = gen_uniform_random(5000, m, 55);
    auto src = std::make_unique<VectorSource>(g.graph.n, g.graph.edges);
    ColorFilterSource filter(std::move(src), 3, 555);
    const Coloring coloring = filter.coloring();
    const StreamState st = process_stream(filter, coloring, p, 5555);
    peaks.push_back(st.peak_tracked_bytes());
  }
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    const double ratio =
        static_cast<double>(peaks[i]) / static_cast<double>(peaks[i - 1]);
    if (ratio > 1.2)
      return fail("peak memory grew " + std::to_string(ratio) +
                  "x over one decade of stream length (" +
                  std::to_string(peaks[i - 1]) + " -> " +
                  std::to_string(peaks[i]) + " bytes)");
  }
  return {};
}

Outcome criterion11_end_to_end() {
  const GenResult g = gen_planted_dicut(2000, 20000, 0.9, 1234);
  const double planted = static_cast<double>(g.planted_crossing);
  RunningStats stats;
  for (std::uint64_t t = 0; t < 20; ++t) {
    RunOptions opt;
    opt.graph_inline = g.graph;
    opt.colors_inline = g.coloring;
    opt.params =
        practical_params(3, 0.1, 4, 0.1, 0.1, 2000, {0.0, 0.0, 0.0});
    opt.seed = 30000 + t;
    opt.mode = "stream";
    stats.add(run_pipeline(opt).rescaled);
  }
  if (stats.mean < 0.5 * planted || stats.mean > 1.1 * planted)
    return fail("mean rescaled estimate " + std::to_string(stats.mean) +
                " lies outside [0.5, 1.1] x " + std::to_string(planted));
  return {};
}

}  // namespace

int main() {
  run_criterion(1, "offline assignment is sandwiched by the optimum", 30,
                criterion1_sandwich);
  run_criterion(2, "closed form matches the recursion at the top color", 10,
                criterion2_top_color_identity);
  run_criterion(3, "capacity-1 reservoir is uniform", 5,
                criterion3_reservoir_uniformity);
  run_criterion(4, "weighted average is exact on empty input and unbiased", 5,
                criterion4_ht_contract);
  run_criterion(5, "full-sampling stream reproduces the offline value", 1,
                criterion5_exact_reproduction);
  run_criterion(6, "estimate mean is invariant under vertex resampling", 60,
                criterion6_conditional_unbiasedness);
  run_criterion(7, "survival follows the padded-tree power law", 60,
                criterion7_success_probability_law);
  run_criterion(8, "color filter drops a 1/k share", 30, criterion8_drop_rate);
  run_criterion(9, "streaming agrees with the reference estimator", 30,
                criterion9_differential_oracle);
  run_criterion(10, "peak memory is sketch-bound, not stream-bound", 300,
                criterion10_space_law);
  run_criterion(11, "planted-cut smoke run lands in the expected band", 120,
                criterion11_end_to_end);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::puts("all criteria passed");
  return 0;
}
