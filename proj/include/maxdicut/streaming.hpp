#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "maxdicut/params.hpp"
#include "maxdicut/stream.hpp"

// The single-pass sketch and the estimators evaluated over it.
//
// Ingest keeps: W (a sampled vertex set, membership decided by a keyed hash
// of the seed and vertex id — never stored), per-W-member exact degree-split
// counters plus d size-1 reservoirs per side fed only by lower-colored
// edges, an i.i.d. edge sample B, and a capacity-|C| reservoir of evaluation
// edges. Memory is proportional to |W| d + |B| + |C| plus counters.
//
// Evaluation runs the recursive per-vertex estimator over the frozen sketch:
// high-degree vertices (many sampled B edges) are estimated from degree
// ratios and a Horvitz-Thompson average over their lower-colored B-neighbors
// and never fail; low-degree vertices require their own W membership, every
// reservoir child to succeed, and a run of dummy coin flips that pads the
// dependency tree T(v), making success probability depend only on |T(v)|.
namespace maxdicut {

// One Horvitz-Thompson input: a value observed with known success
// probability, or a failed observation (which still counts in the divisor).
struct HTEntry {
  bool failed = true;
  double value = 0.0;
  double success_prob = 1.0;

  static HTEntry fail() { return {}; }
  static HTEntry of(double value, double success_prob) {
    return {false, value, success_prob};
  }
};

// (1/|entries|) * sum over non-failed of value/success_prob; empty input is 0
// (never a division by zero). A non-failed entry with success_prob <= 0
// throws ParamError.
double ht_avg(const std::vector<HTEntry>& entries);

// Uniform reservoir sample of a stream, capacity fixed up front. All coin
// flips are keyed by (seed, tags, id, update ordinal), so a reservoir is a
// pure function of the stream prefix it has seen.
class Reservoir {
 public:
  Reservoir(std::size_t capacity, std::uint64_t seed, rng::Tag accept_tag,
            rng::Tag slot_tag, std::uint64_t id = 0);

  void update(const Edge& e);
  // Stored items; a prefix of length min(seen, capacity), uniform over the
  // updates seen so far.
  const std::vector<Edge>& items() const { return items_; }
  std::uint64_t seen() const { return count_ - 1; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::uint64_t seed_;
  rng::Tag accept_tag_;
  rng::Tag slot_tag_;
  std::uint64_t id_;
  std::uint64_t count_ = 1;  // update ordinal, 1-based as in the update rule
  std::vector<Edge> items_;
};

// Per-W-member sketch: exact degree-split counters and d with-replacement
// neighbor samples per side (d independent size-1 reservoirs; the in side
// sees only lower-colored in-edges, the out side only lower-colored
// out-edges).
struct VertexSketch {
  std::uint64_t in_lo = 0;
  std::uint64_t out_lo = 0;
  std::uint64_t in_hi = 0;
  std::uint64_t out_hi = 0;
  std::vector<Edge> in_slots;   // size d once in_lo >= 1, else empty
  std::vector<Edge> out_slots;  // size d once out_lo >= 1, else empty
};

// A vertex estimate: either Fail, or a position in [0,1] plus the dependency
// tree T(v) whose members all had to be sampled for the estimate to exist.
// Tree nodes are real vertex ids or synthetic dummy-padding ids; the vector
// is sorted and duplicate-free so unions dedupe shared subtrees.
struct Estimate {
  bool ok = false;
  double value = 0.0;
  std::vector<std::uint64_t> tree;

  static Estimate fail() { return {}; }
};

constexpr std::uint64_t dummy_node(VertexId owner, std::uint64_t ordinal) {
  return (1ull << 63) | (static_cast<std::uint64_t>(owner) << 31) | ordinal;
}
constexpr bool is_dummy_node(std::uint64_t id) { return id >> 63; }

struct FinalizeResult {
  double cut_val = 0.0;
  std::size_t evaluated = 0;   // entries fed to the HT average (= |C| filled)
  std::size_t failures = 0;    // of which Fail
  bool reservoir_partial = false;  // stream ended before C filled

  double fail_fraction() const {
    return evaluated == 0 ? 1.0 : static_cast<double>(failures) /
                                      static_cast<double>(evaluated);
  }
};

class StreamState {
 public:
  std::size_t vertex_count() const { return n_; }
  const ParamSet& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_length() const { return stream_length_; }
  int color(VertexId v) const { return coloring_(v); }

  // Scale factor attached by upstream subsampling (1 when none); multiply
  // cut_val * stream_length by it for an absolute-scale estimate.
  double scale_factor() const { return scale_factor_; }
  void set_scale_factor(double s) { scale_factor_ = s; }

  // W membership for the evaluation phase (a pure function of w_seed/w_prob;
  // equals the ingest-time membership unless resampled).
  bool in_w(VertexId v) const {
    return rng::keyed_unit(w_seed_, rng::Tag::vertex_sample, v) < w_prob_;
  }
  double w_prob() const { return w_prob_; }

  std::size_t w_size() const { return sketches_.size(); }
  const std::unordered_map<VertexId, VertexSketch>& sketches() const {
    return sketches_;
  }
  const std::vector<Edge>& b_edges() const { return b_edges_; }
  const std::vector<Edge>& c_items() const { return c_.items(); }
  std::uint64_t c_seen() const { return c_.seen(); }

  std::uint64_t b_degree(VertexId v) const;      // B edges incident to v
  std::uint64_t b_out_degree(VertexId v) const;  // of which outgoing

  // Memoized estimators. Estimates are write-once per vertex: repeated calls
  // return the identical cached result, including cached failures.
  const Estimate& vertex_estimate(VertexId v) const;
  Estimate edge_estimate(const Edge& e) const;
  const std::unordered_map<VertexId, Estimate>& memo() const { return memo_; }

  // HT average of the estimated edge values over the evaluation reservoir.
  FinalizeResult finalize() const;

  // Copy of this sketch with W membership (and the dummy coins) redrawn from
  // a fresh seed/probability and the memo cleared. Meaningful when the ingest
  // ran with vertex_sample_prob = 1, so sketch data exists for every vertex
  // the resampled W can select.
  StreamState with_resampled_w(std::uint64_t w_seed, double w_prob) const;

  // Bytes pinned by the sketch (counters, reservoirs, B, C, coloring table,
  // and during evaluation the memo trees), tracked formulaically.
  std::size_t tracked_bytes() const;
  std::size_t peak_tracked_bytes() const { return peak_bytes_; }

 private:
  friend StreamState process_stream(EdgeSource&, const Coloring&, const ParamSet&,
                                    std::uint64_t);

  StreamState(std::size_t n, const Coloring& coloring, const ParamSet& params,
              std::uint64_t seed);

  void ingest(const Edge& e);
  void note_peak() const;
  const Estimate& estimate_impl(VertexId v, int depth) const;
  double success_prob(std::size_t tree_size) const;
  void build_b_index() const;

  std::size_t n_;
  Coloring coloring_;
  ParamSet params_;
  std::uint64_t seed_;
  std::uint64_t w_seed_;
  double w_prob_;
  std::uint64_t stream_length_ = 0;
  double scale_factor_ = 1.0;

  std::unordered_map<VertexId, VertexSketch> sketches_;
  std::size_t sketch_bytes_ = 0;  // incremental; avoids O(|W|) rescans per edge
  std::vector<Edge> b_edges_;
  Reservoir c_;

  // Evaluation-phase structures (derived from the frozen sketch).
  mutable bool b_index_built_ = false;
  mutable std::unordered_map<VertexId, std::vector<std::uint32_t>> b_adj_;
  mutable std::unordered_map<VertexId, std::uint64_t> b_deg_, b_out_deg_;
  mutable std::unordered_map<VertexId, Estimate> memo_;
  mutable std::size_t memo_bytes_ = 0;
  mutable std::size_t peak_bytes_ = 0;
};

// One pass over the stream. The stream must be properly colored under
// `coloring` (monochromatic edges throw — run the color filter first) and
// every endpoint must lie below the source's vertex count (FormatError).
// Identical (stream, params, seed) produce identical states.
StreamState process_stream(EdgeSource& stream, const Coloring& coloring,
                           const ParamSet& params, std::uint64_t seed);

}  // namespace maxdicut
