#pragma once

#include <cstdint>
#include <vector>

#include "maxdicut/graph.hpp"

// Offline algorithms on a materialized properly-colored multigraph: the
// recursive fractional assignment `pos`, its per-vertex closed form `tpos`,
// a brute-force exact optimum for small n, and rounding of fractional
// assignments to boolean ones.
namespace maxdicut {

struct YPair {
  double y_in = 0.0;
  double y_out = 0.0;
};

// y_in = max(|in_hi|, alpha * |in_lo|), y_out = max(|out_hi|, alpha * |out_lo|).
YPair y_pair(const ColoredDigraph& g, VertexId v, double alpha);

// The fractional assignment built color level by color level:
//   pos(v) = clamp((y_out + z_out_lo - z_in_lo) / (y_in + y_out))
// where z_in_lo sums pos(u) over lower-colored in-edges (u,v) and z_out_lo
// sums 1 - pos(u) over lower-colored out-edges (v,u), each in edge-input
// order (the canonical summation order all evaluators share). Isolated
// vertices get 0. Requires a proper coloring and alpha > 0.
FractionalAssignment compute_pos(const ColoredDigraph& g, double alpha);

struct ExactCut {
  double value = 0.0;                 // max crossing fraction, >= 1/4 for m >= 1
  std::uint64_t crossing_edges = 0;   // numerator at the optimum
  std::vector<char> side;             // witness: 1 = source side
};

// Exhaustive maximum directed cut via a Gray-code sweep over all 2^n subsets
// (each step toggles one vertex and adjusts the crossing count from its
// incident edges). Throws ParamError for n > max_n or an empty edge set.
ExactCut exact_maxdicut(const ColoredDigraph& g, std::size_t max_n = 24);

// Mean of pos over all lower-colored neighbors of v, both directions, with
// edge multiplicity; 0 when there are none.
double zbar(const ColoredDigraph& g, VertexId v, const FractionalAssignment& pos);

// Closed-form counterpart of pos(v) that consults only degree ratios and the
// lower-neighbor mean zbar:
//   color k:   clamp((alpha+1)/alpha * d_out/d - zbar/alpha)
//   otherwise: clamp((k-1)/(k-chi) * d_out/d - (chi-1)/(k-chi) * zbar)
// For color-k vertices this equals pos(v) identically (checked by tests).
// Requires degree(v) >= 1.
double compute_tpos(const ColoredDigraph& g, VertexId v, double alpha,
                    const FractionalAssignment& pos);

// Deterministic rounding: sweep vertices in index order, fixing each to the
// boolean choice that does not decrease the cut value (cut_value is affine in
// every coordinate, so one of the two choices is at least as good). The
// result satisfies cut_value(g, result) >= cut_value(g, f).
FractionalAssignment round_condexp(const ColoredDigraph& g,
                                   const FractionalAssignment& f);

// Independent randomized rounding: each vertex goes to the source side with
// probability f(v). Matches f in expectation, useful as a sampling baseline.
FractionalAssignment round_random(const FractionalAssignment& f, std::uint64_t seed);

}  // namespace maxdicut
