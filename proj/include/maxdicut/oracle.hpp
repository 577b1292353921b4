#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "maxdicut/graph.hpp"
#include "maxdicut/params.hpp"
#include "maxdicut/streaming.hpp"

// Test oracles and diagnostics: a frozen-selection fixture type, the
// all-vertices-succeed reference estimator evaluated over such a fixture, a
// dependency-tree containment diagnostic, and a small Monte-Carlo harness.
//
// The reference estimator is deliberately an independent implementation of
// the estimate the streaming module computes when every sampling coin lands
// heads; differential tests check the two agree bit-for-bit at sampling
// probabilities 1, which catches transcription bugs in either.
namespace maxdicut {

// The d neighbor selections per side for one vertex. Slot lists are either
// empty (the vertex has no lower-colored edges on that side) or exactly d
// entries drawn with replacement from the lower-colored edge set.
struct VertexSelection {
  std::vector<Edge> in_slots;
  std::vector<Edge> out_slots;
};

// Frozen selection randomness: per-vertex neighbor choices plus the sampled
// edge set B. Reproducible from a seed (sample_fixture) or lifted out of an
// actual streaming run (extract_fixture).
struct SelectionFixture {
  std::uint64_t d = 1;
  std::unordered_map<VertexId, VertexSelection> selections;
  std::vector<Edge> b_edges;

  bool covers(VertexId v) const { return selections.count(v) != 0; }
};

// Copies the neighbor reservoirs and B out of a finished streaming pass.
// Covers exactly the vertices the pass kept sketches for (all non-isolated
// vertices when the pass ran with vertex_sample_prob = 1).
SelectionFixture extract_fixture(const StreamState& state);

// Draws a fixture directly from an in-memory graph: for every non-isolated
// vertex, d independent uniform picks per side from its lower-colored edge
// sets (the same per-slot distribution the streaming reservoirs converge to),
// plus an i.i.d. B draw at params.edge_sample_prob keyed by edge position.
SelectionFixture sample_fixture(const ColoredDigraph& g, const ParamSet& params,
                                std::uint64_t seed);

// Text form for regression tests: selections and B stored as indices into
// g.edges(). Parallel edges are interchangeable, so writing resolves an edge
// to the first index with its endpoints.
void write_fixture(std::ostream& out, const SelectionFixture& f,
                   const ColoredDigraph& g);
SelectionFixture parse_fixture(std::istream& in, const ColoredDigraph& g);

// Reference estimate over a fixture, computed for every vertex by dynamic
// programming in ascending color order. Low-degree vertices (d_B at or below
// threshold, measured on the fixture's B) use the slot sums scaled by
// |E^lo|/d; high-degree vertices use sampled degree ratios and the plain mean
// over their lower-colored B-neighborhood. Nothing fails: this is the
// estimate in the hypothetical world where every vertex is sampled.
// Isolated vertices stay 0. Throws ParamError on an improper coloring or
// when the fixture misses a required low-degree vertex.
FractionalAssignment intermediate_estimator(const ColoredDigraph& g,
                                            const SelectionFixture& fixture,
                                            const ParamSet& params);

// For every real vertex u, the number of evaluated vertices v whose
// dependency tree contains u (dummy padding nodes are skipped). Only
// consults the memoized estimates, so run the estimators first.
std::unordered_map<VertexId, std::uint64_t> tree_containment_histogram(
    const StreamState& state);

// Vertices whose containment count exceeds bound(color), ascending order.
std::vector<VertexId> containment_flags(
    const std::unordered_map<VertexId, std::uint64_t>& counts,
    const StreamState& state, const std::function<double(int)>& bound);

// Sample mean and normal-approximation confidence half-width of `run` over
// `trials` invocations (run receives the trial index). trials must be >= 2;
// zero variance yields half_width 0.
struct MonteCarlo {
  double mean = 0.0;
  double half_width = 0.0;
  double stddev = 0.0;
};
MonteCarlo monte_carlo_mean(const std::function<double(std::uint64_t)>& run,
                            std::uint64_t trials, double confidence = 0.99);

// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9
// relative error). p must lie strictly inside (0, 1).
double normal_quantile(double p);

}  // namespace maxdicut
