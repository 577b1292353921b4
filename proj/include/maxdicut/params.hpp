#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxdicut/graph.hpp"

// Parameter sets for the pipeline. Two modes:
//
//  - practical: every knob supplied by the caller at desk scale; this is the
//    only mode the algorithms actually execute. All downstream code consumes
//    these fields directly and never re-derives anything from epsilon.
//
//  - theory: derived from (epsilon, n) by the closed-form recipe. The derived
//    sizes are astronomically large for every admissible epsilon, so the set
//    is constructible but flagged non-executable; quantities that overflow
//    native doubles are exposed through base-2 / base-n logarithm accessors
//    recomputed from the stored primaries (epsilon, n, k).
namespace maxdicut {

struct ParamSet {
  enum class Mode { practical, theory };

  Mode mode = Mode::practical;

  // Theory-mode primaries. epsilon in (0, 0.1]; n >= 2 is the instance size
  // the sampling probabilities refer to.
  double epsilon = 0.0;
  std::uint64_t n = 0;
  double executability_bound = 0x1p40;

  // Fields consumed by the algorithms.
  int k = 1;                         // number of colors
  double alpha = 0.25;               // low/high degree mixing weight
  std::uint64_t d = 1;               // neighbor samples per side
  std::vector<double> delta;         // indices 0..k+1, strictly increasing
  std::vector<double> sigma;         // sigma[a] = delta[a]^2
  double q = 0.0;                    // 2^-(k+1)
  double c = 0.0;                    // sampling exponent (theory only)
  double vertex_sample_prob = 1.0;   // probability a vertex joins W, in [0,1]
  double edge_sample_prob = 1.0;     // probability an edge joins B, in [0,1]
  std::uint64_t eval_reservoir_size = 1;  // capacity of the evaluation reservoir C
  std::vector<double> thresholds;    // size k, 1-based color a -> thresholds[a-1]; +inf ok
  bool executable = true;

  double threshold(int color) const { return thresholds.at(color - 1); }

  // (2d)^a. Valid for a in [0, k]; in practical mode these are exact u64
  // (construction fails if they would overflow), in non-executable theory
  // mode use logn_tree_size instead.
  std::uint64_t tree_size(int a) const { return tree_sizes_.at(a); }
  const std::vector<std::uint64_t>& tree_sizes() const { return tree_sizes_; }

  // --- log-space accessors (theory mode) ------------------------------------
  // Base-2 and base-n logarithms recomputed from primaries, so serialization
  // round-trips bit-exactly and products that cancel symbolically stay exact.
  double log2_n() const;
  double log2_q() const;                 // -(k+1), exact
  double log2_d() const;                 // 4^(k+3) * log2(1/epsilon)
  double log2_2d() const;                // 1 + log2_d
  double log2_delta(int a) const;        // 4^(k+2-a) * log2(epsilon)
  double logn_d() const;
  double logn_2d() const;
  double logn_tree_size(int a) const;    // a * logn_2d
  double logn_q_over_10() const;
  // Base-n exponent of c * tree_size(a); at a == k this is exactly
  // logn_q_over_10() — the q/10 identity holds with no rounding.
  double logn_c_tree(int a) const;
  double logn_c() const;                 // logn_c_tree(0)
  double logn_threshold(int a) const;    // q * 2^a, the exponent in n^(q 2^a)

  friend bool operator==(const ParamSet& a, const ParamSet& b);

  // Internal: populated by the factory functions below.
  std::vector<std::uint64_t> tree_sizes_;
};

// Builds a validated practical-mode set. thresholds has one entry per color
// (1..k); pass +inf to force every vertex low-degree, 0 to classify every
// vertex with at least one sampled edge high-degree. delta/sigma are filled
// from eps_equiv (they only drive diagnostics and test tolerances, never the
// algorithms). Throws ParamError on any violated range.
ParamSet practical_params(int k, double alpha, std::uint64_t d,
                          double vertex_sample_prob, double edge_sample_prob,
                          std::uint64_t eval_reservoir_size,
                          std::vector<double> thresholds, double eps_equiv = 0.1);

// Derives the closed-form theory set from epsilon in (0, 0.1] and n >= 2:
// k = ceil(1/eps^2), alpha = eps^4, delta_a = eps^(4^(k+2-a)), d = eps^(-4^(k+3)),
// tree sizes (2d)^a, q = 2^-(k+1), c = q/(10 (2d)^k), sampling probabilities
// n^-c, reservoir capacity n^(1-c), thresholds n^(q 2^a). Values beyond
// native range are carried by the log accessors; the set is flagged
// non-executable when d or the top tree size exceeds executability_bound.
ParamSet derive_theory_params(double epsilon, std::uint64_t n,
                              double executability_bound = 0x1p40);

// Plain-text key=value serialization. Theory mode stores only primaries as
// keys (derived magnitudes appear as '#'-comments, including the
// {base:"n",exp:...} form for out-of-range values) and re-derives on parse,
// so round-trips reproduce an identical structure in both modes.
std::string serialize_params(const ParamSet& p);
ParamSet parse_params(std::istream& in);
ParamSet load_params(const std::string& path);

}  // namespace maxdicut
