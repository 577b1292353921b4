#include "maxdicut/gen.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "maxdicut/rng.hpp"

namespace maxdicut {

namespace {

class EdgePlacer {
 public:
  explicit EdgePlacer(std::size_t m) { seen_.reserve(m * 2); }

  bool place(std::vector<Edge>& edges, VertexId u, VertexId v) {
    if (u == v) return false;
    if (!seen_.insert((static_cast<std::uint64_t>(u) << 32) | v).second)
      return false;
    edges.push_back({u, v});
    return true;
  }

  // Rejection-sampling guard; densities used here keep acceptance high, so
  // hitting this indicates a caller bug, not bad luck.
  void attempt(std::size_t m) {
    if (++attempts_ > 200 * m + 10000)
      throw ParamError("graph generator stalled placing distinct edges");
  }

 private:
  std::unordered_set<std::uint64_t> seen_;
  std::size_t attempts_ = 0;
};

void check_common(std::size_t n, std::size_t m) {
  if (n < 2) throw ParamError("generators need at least 2 vertices");
  if (m < 1) throw ParamError("generators need at least 1 edge");
  if (n > (std::size_t(1) << 31)) throw ParamError("vertex count too large");
}

std::string meta(const std::string& kind, std::size_t n, std::size_t m,
                 std::uint64_t seed) {
  return "kind=" + kind + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
         " seed=" + std::to_string(seed);
}

}  // namespace

GenResult gen_uniform_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_common(n, m);
  if (m > n * (n - 1))
    throw ParamError("too many edges for a simple digraph on " +
                     std::to_string(n) + " vertices");
  GenResult r;
  r.graph.n = n;
  rng::SplitMix64 gen(rng::keyed_u64(seed, rng::Tag::gen, 1));
  EdgePlacer placer(m);
  while (r.graph.edges.size() < m) {
    placer.attempt(m);
    const VertexId u = static_cast<VertexId>(gen.next_below(n));
    const VertexId v = static_cast<VertexId>(gen.next_below(n));
    placer.place(r.graph.edges, u, v);
  }
  r.comments.push_back(meta("uniform-random", n, m, seed));
  return r;
}

GenResult gen_planted_dicut(std::size_t n, std::size_t m, double plant_fraction,
                            std::uint64_t seed) {
  check_common(n, m);
  if (!(plant_fraction >= 0.0 && plant_fraction <= 1.0))
    throw ParamError("plant fraction must lie in [0, 1]");
  const std::size_t s_size = n / 2;
  const std::size_t t_size = n - s_size;
  if (s_size == 0) throw ParamError("planted cut needs both sides nonempty");
  const std::size_t plant =
      static_cast<std::size_t>(std::llround(plant_fraction * static_cast<double>(m)));
  const std::size_t noise = m - plant;
  if (plant > s_size * t_size || noise > s_size * t_size)
    throw ParamError("too many edges for the planted-cut side sizes");

  GenResult r;
  r.graph.n = n;
  rng::SplitMix64 gen(rng::keyed_u64(seed, rng::Tag::gen, 2));
  EdgePlacer placer(m);
  while (r.graph.edges.size() < plant) {  // S -> T, the crossing edges
    placer.attempt(m);
    const VertexId u = static_cast<VertexId>(gen.next_below(s_size));
    const VertexId v = static_cast<VertexId>(s_size + gen.next_below(t_size));
    placer.place(r.graph.edges, u, v);
  }
  while (r.graph.edges.size() < m) {  // noise strictly T -> S, never crossing
    placer.attempt(m);
    const VertexId u = static_cast<VertexId>(s_size + gen.next_below(t_size));
    const VertexId v = static_cast<VertexId>(gen.next_below(s_size));
    placer.place(r.graph.edges, u, v);
  }

  r.coloring.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    r.coloring[v] = v < s_size ? 1 + static_cast<int>(v & 1) : 3;
  r.num_colors = 3;
  r.planted_crossing = plant;
  r.comments.push_back(meta("planted-dicut", n, m, seed) +
                       " plant_fraction=" + format_double(plant_fraction));
  r.comments.push_back("planted_crossing=" + std::to_string(plant));
  return r;
}

GenResult gen_layered_dag(std::size_t n, std::size_t m, int layers,
                          std::uint64_t seed) {
  check_common(n, m);
  if (layers < 2 || static_cast<std::size_t>(layers) > n)
    throw ParamError("layer count must lie in [2, n]");
  const std::size_t L = static_cast<std::size_t>(layers);
  // Round-robin layer sizes; count ordered cross-layer pairs (low -> high).
  std::vector<std::size_t> size(L);
  for (std::size_t v = 0; v < n; ++v) ++size[v % L];
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) pairs += size[i] * size[j];
  if (m > pairs)
    throw ParamError("too many edges for " + std::to_string(layers) + " layers");

  GenResult r;
  r.graph.n = n;
  rng::SplitMix64 gen(rng::keyed_u64(seed, rng::Tag::gen, 3));
  EdgePlacer placer(m);
  while (r.graph.edges.size() < m) {
    placer.attempt(m);
    const VertexId u = static_cast<VertexId>(gen.next_below(n));
    const VertexId v = static_cast<VertexId>(gen.next_below(n));
    if (u % L >= v % L) continue;
    placer.place(r.graph.edges, u, v);
  }
  r.coloring.resize(n);
  for (std::size_t v = 0; v < n; ++v) r.coloring[v] = 1 + static_cast<int>(v % L);
  r.num_colors = layers;
  r.comments.push_back(meta("layered-dag", n, m, seed) +
                       " layers=" + std::to_string(layers));
  return r;
}

GenResult gen_power_law_out(std::size_t n, std::size_t m, double exponent,
                            std::uint64_t seed) {
  check_common(n, m);
  if (!(exponent >= 0.0)) throw ParamError("exponent must be nonnegative");
  if (m > n * (n - 1))
    throw ParamError("too many edges for a simple digraph on " +
                     std::to_string(n) + " vertices");
  std::vector<double> cdf(n);
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    total += std::pow(static_cast<double>(v + 1), -exponent);
    cdf[v] = total;
  }

  GenResult r;
  r.graph.n = n;
  rng::SplitMix64 gen(rng::keyed_u64(seed, rng::Tag::gen, 4));
  EdgePlacer placer(m);
  while (r.graph.edges.size() < m) {
    placer.attempt(m);
    const double x = gen.next_unit() * total;
    const VertexId u = static_cast<VertexId>(
        std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    const VertexId v = static_cast<VertexId>(gen.next_below(n));
    placer.place(r.graph.edges, std::min<VertexId>(u, n - 1), v);
  }
  r.comments.push_back(meta("power-law-out", n, m, seed) +
                       " exponent=" + format_double(exponent));
  return r;
}

GenResult generate(const std::string& kind, std::size_t n, std::size_t m,
                   std::uint64_t seed, double plant_fraction, int layers,
                   double exponent) {
  if (kind == "uniform-random") return gen_uniform_random(n, m, seed);
  if (kind == "planted-dicut") return gen_planted_dicut(n, m, plant_fraction, seed);
  if (kind == "layered-dag") return gen_layered_dag(n, m, layers, seed);
  if (kind == "power-law-out") return gen_power_law_out(n, m, exponent, seed);
  throw ParamError("unknown generator kind: " + kind);
}

}  // namespace maxdicut
