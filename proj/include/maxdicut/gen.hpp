#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxdicut/graph.hpp"

// Deterministic graph generators for tests and benchmarks. All kinds emit
// simple directed graphs (no self-loops, no duplicate ordered pairs) and are
// pure functions of their arguments.
namespace maxdicut {

struct GenResult {
  EdgeList graph;
  std::vector<int> coloring;  // empty when the kind defines no natural coloring
  int num_colors = 0;
  std::vector<std::string> comments;  // '#' metadata lines for the output file
  std::uint64_t planted_crossing = 0;  // planted-dicut only
};

// m uniform random distinct ordered pairs. Requires m <= n(n-1).
GenResult gen_uniform_random(std::size_t n, std::size_t m, std::uint64_t seed);

// Splits vertices into S (first half) and T, plants round(m * plant_fraction)
// edges S->T and the rest T->S, so exactly the planted edges cross the
// (S, T) cut and the crossing count recorded in the comments is exact.
// Comes with a proper 3-coloring: S alternates colors 1/2, T is color 3.
GenResult gen_planted_dicut(std::size_t n, std::size_t m, double plant_fraction,
                            std::uint64_t seed);

// Round-robin layer assignment (layer = vertex mod layers), edges only from
// lower to higher layers; the layer index (1-based) is a proper coloring.
GenResult gen_layered_dag(std::size_t n, std::size_t m, int layers,
                          std::uint64_t seed);

// Sources drawn with probability proportional to (vertex+1)^-exponent,
// targets uniform; produces a few heavy out-hubs.
GenResult gen_power_law_out(std::size_t n, std::size_t m, double exponent,
                            std::uint64_t seed);

// Dispatcher over kind in {uniform-random, planted-dicut, layered-dag,
// power-law-out}; unknown kinds throw ParamError.
GenResult generate(const std::string& kind, std::size_t n, std::size_t m,
                   std::uint64_t seed, double plant_fraction = 0.9,
                   int layers = 3, double exponent = 2.0);

}  // namespace maxdicut
