#include "maxdicut/offline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "maxdicut/rng.hpp"

namespace maxdicut {

YPair y_pair(const ColoredDigraph& g, VertexId v, double alpha) {
  const DegreeSplit s = degree_split(g, v);
  YPair y;
  y.y_in = std::max(static_cast<double>(s.in_hi), alpha * static_cast<double>(s.in_lo));
  y.y_out =
      std::max(static_cast<double>(s.out_hi), alpha * static_cast<double>(s.out_lo));
  return y;
}

FractionalAssignment compute_pos(const ColoredDigraph& g, double alpha) {
  if (!(alpha > 0.0)) throw ParamError("alpha must be positive");
  if (!g.is_proper()) throw ParamError("compute_pos requires a proper coloring");

  const std::size_t n = g.vertex_count();
  FractionalAssignment pos;
  pos.value.assign(n, 0.0);

  // Vertices grouped by color level; lower levels are fully assigned before
  // any higher level reads them.
  std::vector<std::vector<VertexId>> by_color(
      static_cast<std::size_t>(g.num_colors()) + 1);
  for (VertexId v = 0; v < n; ++v) by_color[g.color(v)].push_back(v);

  for (int a = 1; a <= g.num_colors(); ++a) {
    for (VertexId v : by_color[a]) {
      if (g.degree(v) == 0) continue;  // isolated: stays 0, never read
      const YPair y = y_pair(g, v, alpha);
      // z sums in edge-input order — the canonical order.
      double z_in_lo = 0.0;
      for (std::uint32_t i : g.in_edges(v)) {
        const Edge& e = g.edges()[i];
        if (g.color(e.source) < a) z_in_lo += pos.value[e.source];
      }
      double z_out_lo = 0.0;
      for (std::uint32_t i : g.out_edges(v)) {
        const Edge& e = g.edges()[i];
        if (g.color(e.target) < a) z_out_lo += 1.0 - pos.value[e.target];
      }
      pos.value[v] = clamp01((y.y_out + z_out_lo - z_in_lo) / (y.y_in + y.y_out));
    }
  }
  return pos;
}

ExactCut exact_maxdicut(const ColoredDigraph& g, std::size_t max_n) {
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) throw ParamError("exact cut undefined on an empty edge set");
  if (n > max_n)
    throw ParamError("exact solver refuses n = " + std::to_string(n) + " > " +
                     std::to_string(max_n));

  // Gray-code walk: consecutive subsets differ in one vertex, so the crossing
  // count is adjusted from that vertex's incident edges only.
  std::vector<char> side(n, 0);  // side[v] = 1 means source side
  std::uint64_t crossing = 0;    // crossing count of all-zero assignment = 0
  std::uint64_t best = 0;
  std::vector<char> best_side = side;

  const std::uint64_t total = 1ull << n;
  for (std::uint64_t it = 1; it < total; ++it) {
    const unsigned v = std::countr_zero(it);  // vertex toggled by this Gray step
    // Remove v's current contribution, toggle, add the new one.
    std::int64_t delta = 0;
    for (std::uint32_t i : g.out_edges(v)) {
      const Edge& e = g.edges()[i];
      const bool before = side[v] && !side[e.target];
      const bool after = !side[v] && !side[e.target];
      delta += static_cast<int>(after) - static_cast<int>(before);
    }
    for (std::uint32_t i : g.in_edges(v)) {
      const Edge& e = g.edges()[i];
      const bool before = side[e.source] && !side[v];
      const bool after = side[e.source] && side[v];
      delta += static_cast<int>(after) - static_cast<int>(before);
    }
    side[v] ^= 1;
    crossing = static_cast<std::uint64_t>(static_cast<std::int64_t>(crossing) + delta);
    if (crossing > best) {
      best = crossing;
      best_side = side;
    }
  }

  ExactCut result;
  result.crossing_edges = best;
  result.value = static_cast<double>(best) / static_cast<double>(g.edge_count());
  result.side = std::move(best_side);
  return result;
}

double zbar(const ColoredDigraph& g, VertexId v, const FractionalAssignment& pos) {
  const int a = g.color(v);
  double sum = 0.0;
  std::uint64_t count = 0;
  for (std::uint32_t i : g.in_edges(v)) {
    const Edge& e = g.edges()[i];
    if (g.color(e.source) < a) {
      sum += pos.value[e.source];
      ++count;
    }
  }
  for (std::uint32_t i : g.out_edges(v)) {
    const Edge& e = g.edges()[i];
    if (g.color(e.target) < a) {
      sum += pos.value[e.target];
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double compute_tpos(const ColoredDigraph& g, VertexId v, double alpha,
                    const FractionalAssignment& pos) {
  if (!(alpha > 0.0)) throw ParamError("alpha must be positive");
  const double deg = static_cast<double>(g.degree(v));
  if (deg == 0.0) throw ParamError("tpos undefined on an isolated vertex");
  const int k = g.num_colors();
  const int chi = g.color(v);
  const double ratio = static_cast<double>(g.out_degree(v)) / deg;
  const double zb = zbar(g, v, pos);
  if (chi == k)
    return clamp01((alpha + 1.0) / alpha * ratio - zb / alpha);
  return clamp01(static_cast<double>(k - 1) / static_cast<double>(k - chi) * ratio -
                 static_cast<double>(chi - 1) / static_cast<double>(k - chi) * zb);
}

FractionalAssignment round_condexp(const ColoredDigraph& g,
                                   const FractionalAssignment& f) {
  if (f.size() != g.vertex_count())
    throw ParamError("assignment size does not match vertex count");
  FractionalAssignment out = f;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    // Contribution of v's incident edges under out with out[v] = t is affine
    // in t; evaluate both endpoints and keep the better.
    double value_at[2] = {0.0, 0.0};
    for (int t = 0; t <= 1; ++t) {
      const double tv = static_cast<double>(t);
      double sum = 0.0;
      for (std::uint32_t i : g.out_edges(v))
        sum += tv * (1.0 - out.value[g.edges()[i].target]);
      for (std::uint32_t i : g.in_edges(v)) {
        const Edge& e = g.edges()[i];
        // Self-loops are rejected at construction, so source != v here.
        sum += out.value[e.source] * (1.0 - tv);
      }
      value_at[t] = sum;
    }
    out.value[v] = value_at[1] >= value_at[0] ? 1.0 : 0.0;
  }
  return out;
}

FractionalAssignment round_random(const FractionalAssignment& f, std::uint64_t seed) {
  FractionalAssignment out;
  out.value.resize(f.size());
  for (std::size_t v = 0; v < f.size(); ++v)
    out.value[v] =
        rng::keyed_coin(f.value[v], seed, rng::Tag::trial, v) ? 1.0 : 0.0;
  return out;
}

}  // namespace maxdicut
