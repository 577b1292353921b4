#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxdicut/graph.hpp"
#include "maxdicut/params.hpp"
#include "maxdicut/stream.hpp"

// Input reductions, applied as single-pass stream transforms: edge
// subsampling, random orientation flipping, and random vertex coloring with
// removal of monochromatic edges. Each wrapper inspects every upstream edge
// exactly once and holds O(1) state. The structural assumptions the
// downstream analysis leans on are *checked* (reported with witnesses), never
// enforced.
namespace maxdicut {

// Keeps each edge independently with probability keep_prob (decision keyed by
// the edge's stream ordinal). keep_prob = 1 is the verbatim identity.
class SubsampleSource final : public EdgeSource {
 public:
  SubsampleSource(std::unique_ptr<EdgeSource> upstream, double keep_prob,
                  std::uint64_t seed);

  std::size_t vertex_count() const override { return upstream_->vertex_count(); }
  std::optional<Edge> next() override;

  // Multiply estimates on the subsampled stream by this to get back to the
  // input stream's scale.
  double scale_factor() const { return 1.0 / keep_prob_; }
  std::uint64_t seen() const { return seen_; }
  std::uint64_t kept() const { return kept_; }

 private:
  std::unique_ptr<EdgeSource> upstream_;
  double keep_prob_;
  std::uint64_t seed_;
  std::uint64_t seen_ = 0;
  std::uint64_t kept_ = 0;
};

// Reverses each edge's orientation independently with probability flip_prob.
class FlipSource final : public EdgeSource {
 public:
  FlipSource(std::unique_ptr<EdgeSource> upstream, double flip_prob,
             std::uint64_t seed);

  std::size_t vertex_count() const override { return upstream_->vertex_count(); }
  std::optional<Edge> next() override;

  std::uint64_t seen() const { return seen_; }
  std::uint64_t flipped() const { return flipped_; }

 private:
  std::unique_ptr<EdgeSource> upstream_;
  double flip_prob_;
  std::uint64_t seed_;
  std::uint64_t seen_ = 0;
  std::uint64_t flipped_ = 0;
};

// Colors every vertex uniformly from {1..k} (pseudo-random function of the
// seed and vertex id — no stored table) and drops monochromatic edges. The
// expected drop rate on self-loop-free input is exactly 1/k.
class ColorFilterSource final : public EdgeSource {
 public:
  ColorFilterSource(std::unique_ptr<EdgeSource> upstream, int k, std::uint64_t seed);

  std::size_t vertex_count() const override { return upstream_->vertex_count(); }
  std::optional<Edge> next() override;

  const Coloring& coloring() const { return coloring_; }
  std::uint64_t seen() const { return seen_; }
  std::uint64_t dropped() const { return dropped_; }

 private:
  std::unique_ptr<EdgeSource> upstream_;
  Coloring coloring_;
  std::uint64_t seen_ = 0;
  std::uint64_t dropped_ = 0;
};

// --- structural assumption checks -------------------------------------------

struct AssumptionConfig {
  // Bound on the edge count (the analysis wants at most ~n/eps^4 after
  // subsampling; the caller picks the number).
  double edge_bound = std::numeric_limits<double>::infinity();
  // Vertices with degree >= degree_cutoff are in scope for the balance and
  // per-color checks below.
  double degree_cutoff = 0.0;
  // Both in- and out-degree must reach balance_factor * degree.
  double balance_factor = 0.0;
  // Per-color in/out degrees may deviate from degree/(k-1) by at most
  // color_dev_factor * degree / (k-1).
  double color_dev_factor = std::numeric_limits<double>::infinity();
};

struct AssumptionReport {
  bool edge_count_ok = true;
  std::uint64_t edge_count = 0;

  bool balance_ok = true;
  std::optional<VertexId> balance_witness;
  double balance_worst = 1.0;  // min over in-scope vertices of min(din,dout)/d

  bool color_balance_ok = true;
  std::optional<VertexId> color_witness;
  int color_witness_color = 0;
  double color_worst_dev = 0.0;  // worst |d_a - d/(k-1)| * (k-1) / d seen

  bool all_ok() const { return edge_count_ok && balance_ok && color_balance_ok; }
  std::string to_string() const;
};

// Checks the materialized graph against the configured bounds. Requires a
// proper coloring (throws ParamError otherwise). k = 1 leaves the per-color
// check vacuously true.
AssumptionReport check_assumptions(const ColoredDigraph& g,
                                   const AssumptionConfig& config);

// --- guess ladder ------------------------------------------------------------
//
// The subsampling rate depends on the (unknown) final edge count, so the
// pipeline runs parallel copies, one per power-of-two guess; once the stream
// ends the copy whose guess brackets the true count is the one reported.

struct LadderRung {
  std::uint64_t guess = 1;     // hypothesized edge count, 2^i
  double keep_prob = 1.0;      // min(1, target_edges / guess)
};

struct GuessLadder {
  std::vector<LadderRung> rungs;

  // Index of the rung with guess <= m < 2*guess; the last rung (with a
  // warning flag at the call site) when m exceeds every guess.
  std::size_t select(std::uint64_t m) const;
};

// Rungs for guesses 2^0 .. 2^ceil(log2(m_max)); target_edges is the edge
// budget the subsampling aims at (keep probabilities are capped at 1, so
// small guesses keep everything).
GuessLadder build_guess_ladder(std::uint64_t m_max, double target_edges);

}  // namespace maxdicut
