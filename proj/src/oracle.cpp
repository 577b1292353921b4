#include "maxdicut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace maxdicut {

namespace {

std::uint64_t pair_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.source) << 32) | e.target;
}

// Next non-comment, non-blank line; returns false at EOF.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

SelectionFixture extract_fixture(const StreamState& state) {
  SelectionFixture f;
  f.d = state.params().d;
  f.b_edges = state.b_edges();
  for (const auto& [v, sk] : state.sketches())
    f.selections.emplace(v, VertexSelection{sk.in_slots, sk.out_slots});
  return f;
}

SelectionFixture sample_fixture(const ColoredDigraph& g, const ParamSet& params,
                                std::uint64_t seed) {
  if (!g.is_proper()) throw ParamError("coloring must be proper");
  SelectionFixture f;
  f.d = params.d;
  const std::vector<Edge>& edges = g.edges();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    const int chi = g.color(v);
    std::vector<Edge> lo_in, lo_out;
    for (const std::uint32_t idx : g.in_edges(v))
      if (g.color(edges[idx].source) < chi) lo_in.push_back(edges[idx]);
    for (const std::uint32_t idx : g.out_edges(v))
      if (g.color(edges[idx].target) < chi) lo_out.push_back(edges[idx]);
    VertexSelection sel;
    if (!lo_in.empty())
      for (std::uint64_t i = 0; i < f.d; ++i)
        sel.in_slots.push_back(
            lo_in[rng::keyed_below(lo_in.size(), seed, rng::Tag::slot_in, v, i)]);
    if (!lo_out.empty())
      for (std::uint64_t i = 0; i < f.d; ++i)
        sel.out_slots.push_back(
            lo_out[rng::keyed_below(lo_out.size(), seed, rng::Tag::slot_out, v, i)]);
    f.selections.emplace(v, std::move(sel));
  }
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (rng::keyed_coin(params.edge_sample_prob, seed, rng::Tag::edge_sample, i))
      f.b_edges.push_back(edges[i]);
  return f;
}

void write_fixture(std::ostream& out, const SelectionFixture& f,
                   const ColoredDigraph& g) {
  std::unordered_map<std::uint64_t, std::uint32_t> first_index;
  const std::vector<Edge>& edges = g.edges();
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    first_index.emplace(pair_key(edges[i]), i);
  const auto index_of = [&](const Edge& e) -> std::uint32_t {
    const auto it = first_index.find(pair_key(e));
    if (it == first_index.end())
      throw ParamError("fixture references an edge absent from the graph");
    return it->second;
  };

  std::vector<VertexId> order;
  order.reserve(f.selections.size());
  for (const auto& [v, sel] : f.selections) order.push_back(v);
  std::sort(order.begin(), order.end());

  out << "# selection fixture\n";
  out << "d " << f.d << "\n";
  out << "vertices " << order.size() << "\n";
  for (const VertexId v : order) {
    const VertexSelection& sel = f.selections.at(v);
    out << v << " in " << sel.in_slots.size();
    for (const Edge& e : sel.in_slots) out << ' ' << index_of(e);
    out << " out " << sel.out_slots.size();
    for (const Edge& e : sel.out_slots) out << ' ' << index_of(e);
    out << "\n";
  }
  out << "b " << f.b_edges.size() << "\n";
  if (!f.b_edges.empty()) {
    for (std::size_t i = 0; i < f.b_edges.size(); ++i)
      out << (i ? " " : "") << index_of(f.b_edges[i]);
    out << "\n";
  }
}

SelectionFixture parse_fixture(std::istream& in, const ColoredDigraph& g) {
  SelectionFixture f;
  const std::vector<Edge>& edges = g.edges();
  std::string line, word;
  std::size_t lineno = 0;

  const auto need_line = [&](const char* what) {
    if (!next_content_line(in, line, lineno))
      throw FormatError(std::string("unexpected end of fixture, expected ") + what,
                        lineno);
  };
  const auto edge_at = [&](long long idx) -> const Edge& {
    if (idx < 0 || static_cast<std::size_t>(idx) >= edges.size())
      throw FormatError("edge index " + std::to_string(idx) + " out of range",
                        lineno);
    return edges[static_cast<std::size_t>(idx)];
  };

  need_line("d");
  {
    std::istringstream ls(line);
    long long d = 0;
    if (!(ls >> word >> d) || word != "d" || d < 1)
      throw FormatError("expected 'd <count>'", lineno);
    f.d = static_cast<std::uint64_t>(d);
  }
  need_line("vertices");
  long long vcount = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> word >> vcount) || word != "vertices" || vcount < 0)
      throw FormatError("expected 'vertices <count>'", lineno);
  }
  for (long long i = 0; i < vcount; ++i) {
    need_line("a vertex selection");
    std::istringstream ls(line);
    long long v = 0, cin = 0, cout = 0;
    VertexSelection sel;
    if (!(ls >> v) || v < 0 ||
        static_cast<std::size_t>(v) >= g.vertex_count())
      throw FormatError("bad vertex id in fixture", lineno);
    if (!(ls >> word >> cin) || word != "in" || cin < 0)
      throw FormatError("expected 'in <count>'", lineno);
    for (long long j = 0; j < cin; ++j) {
      long long idx;
      if (!(ls >> idx)) throw FormatError("missing in-slot index", lineno);
      sel.in_slots.push_back(edge_at(idx));
    }
    if (!(ls >> word >> cout) || word != "out" || cout < 0)
      throw FormatError("expected 'out <count>'", lineno);
    for (long long j = 0; j < cout; ++j) {
      long long idx;
      if (!(ls >> idx)) throw FormatError("missing out-slot index", lineno);
      sel.out_slots.push_back(edge_at(idx));
    }
    if (ls >> word) throw FormatError("trailing tokens in fixture line", lineno);
    if ((!sel.in_slots.empty() && sel.in_slots.size() != f.d) ||
        (!sel.out_slots.empty() && sel.out_slots.size() != f.d))
      throw FormatError("slot list must be empty or hold exactly d entries",
                        lineno);
    if (!f.selections.emplace(static_cast<VertexId>(v), std::move(sel)).second)
      throw FormatError("duplicate vertex in fixture", lineno);
  }
  need_line("b");
  long long bcount = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> word >> bcount) || word != "b" || bcount < 0)
      throw FormatError("expected 'b <count>'", lineno);
  }
  if (bcount > 0) {
    need_line("b indices");
    std::istringstream ls(line);
    for (long long j = 0; j < bcount; ++j) {
      long long idx;
      if (!(ls >> idx)) throw FormatError("missing B edge index", lineno);
      f.b_edges.push_back(edge_at(idx));
    }
    if (ls >> word) throw FormatError("trailing tokens after B indices", lineno);
  }
  return f;
}

FractionalAssignment intermediate_estimator(const ColoredDigraph& g,
                                            const SelectionFixture& fx,
                                            const ParamSet& params) {
  if (!g.is_proper()) throw ParamError("coloring must be proper");
  const std::size_t n = g.vertex_count();

  // Index the fixture's B exactly the way the streaming side indexes its
  // sample: adjacency lists in B order, so the neighborhood means below
  // accumulate in the identical order.
  std::unordered_map<VertexId, std::vector<std::uint32_t>> b_adj;
  std::unordered_map<VertexId, std::uint64_t> b_deg, b_out_deg;
  for (std::uint32_t i = 0; i < fx.b_edges.size(); ++i) {
    const Edge& e = fx.b_edges[i];
    b_adj[e.source].push_back(i);
    b_adj[e.target].push_back(i);
    ++b_deg[e.source];
    ++b_deg[e.target];
    ++b_out_deg[e.source];
  }
  const auto deg_of = [](const std::unordered_map<VertexId, std::uint64_t>& m,
                         VertexId v) -> std::uint64_t {
    const auto it = m.find(v);
    return it == m.end() ? 0 : it->second;
  };

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.color(a) < g.color(b);
  });

  const int k = params.k;
  const double alpha = params.alpha;
  FractionalAssignment P{std::vector<double>(n, 0.0)};

  for (const VertexId v : order) {
    if (g.degree(v) == 0) continue;  // isolated vertices stay 0
    const int chi = g.color(v);
    const std::uint64_t db = deg_of(b_deg, v);

    if (static_cast<double>(db) > params.threshold(chi)) {
      double sum = 0.0;
      std::uint64_t cnt = 0;
      if (const auto adj = b_adj.find(v); adj != b_adj.end()) {
        for (const std::uint32_t idx : adj->second) {
          const Edge& e = fx.b_edges[idx];
          const VertexId other = e.source == v ? e.target : e.source;
          if (g.color(other) < chi) {
            sum += P.value[other];
            ++cnt;
          }
        }
      }
      const double zb = cnt == 0 ? 0.0 : sum / static_cast<double>(cnt);
      const double ratio =
          static_cast<double>(deg_of(b_out_deg, v)) / static_cast<double>(db);
      double p;
      if (chi == k) {
        p = (alpha + 1.0) / alpha * ratio - zb / alpha;
      } else {
        p = static_cast<double>(k - 1) / static_cast<double>(k - chi) * ratio -
            static_cast<double>(chi - 1) / static_cast<double>(k - chi) * zb;
      }
      P.value[v] = clamp01(p);
      continue;
    }

    const auto sel_it = fx.selections.find(v);
    if (sel_it == fx.selections.end())
      throw ParamError("fixture does not cover low-degree vertex " +
                       std::to_string(v));
    const VertexSelection& sel = sel_it->second;
    const DegreeSplit ds = degree_split(g, v);
    if (ds.in_lo > 0 && sel.in_slots.empty())
      throw ParamError("fixture selection for vertex " + std::to_string(v) +
                       " is missing its in-side slots");
    if (ds.out_lo > 0 && sel.out_slots.empty())
      throw ParamError("fixture selection for vertex " + std::to_string(v) +
                       " is missing its out-side slots");

    const double y_in = std::max(static_cast<double>(ds.in_hi),
                                 alpha * static_cast<double>(ds.in_lo));
    const double y_out = std::max(static_cast<double>(ds.out_hi),
                                  alpha * static_cast<double>(ds.out_lo));
    double sum_in = 0.0, sum_out = 0.0;
    for (const Edge& se : sel.in_slots) sum_in += P.value[se.source];
    for (const Edge& se : sel.out_slots) sum_out += 1.0 - P.value[se.target];
    const double d = static_cast<double>(fx.d);
    const double z_in = static_cast<double>(ds.in_lo) / d * sum_in;
    const double z_out = static_cast<double>(ds.out_lo) / d * sum_out;
    P.value[v] = clamp01((y_out + z_out - z_in) / (y_in + y_out));
  }
  return P;
}

std::unordered_map<VertexId, std::uint64_t> tree_containment_histogram(
    const StreamState& state) {
  std::unordered_map<VertexId, std::uint64_t> counts;
  for (const auto& [v, est] : state.memo()) {
    if (!est.ok) continue;
    for (const std::uint64_t id : est.tree)
      if (!is_dummy_node(id)) ++counts[static_cast<VertexId>(id)];
  }
  return counts;
}

std::vector<VertexId> containment_flags(
    const std::unordered_map<VertexId, std::uint64_t>& counts,
    const StreamState& state, const std::function<double(int)>& bound) {
  std::vector<VertexId> flagged;
  for (const auto& [v, count] : counts)
    if (static_cast<double>(count) > bound(state.color(v))) flagged.push_back(v);
  std::sort(flagged.begin(), flagged.end());
  return flagged;
}

MonteCarlo monte_carlo_mean(const std::function<double(std::uint64_t)>& run,
                            std::uint64_t trials, double confidence) {
  if (trials < 2) throw ParamError("monte_carlo_mean needs at least 2 trials");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw ParamError("confidence must lie in (0, 1)");
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double x = run(t);
    const double delta = x - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (x - mean);
  }
  MonteCarlo out;
  out.mean = mean;
  out.stddev = std::sqrt(std::max(0.0, m2 / static_cast<double>(trials - 1)));
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  out.half_width = z * out.stddev / std::sqrt(static_cast<double>(trials));
  return out;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ParamError("normal quantile requires p strictly inside (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  constexpr double p_high = 1.0 - p_low;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= p_high) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace maxdicut
