#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

// Core graph types: a vertex-colored directed multigraph held in memory,
// fractional assignments over its vertices, and the directed-cut value of an
// assignment. Offline algorithms and oracles work on these; the streaming
// path only ever sees an edge sequence (see stream.hpp).
namespace maxdicut {

using VertexId = std::uint32_t;

struct Edge {
  VertexId source = 0;
  VertexId target = 0;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.source == b.source && a.target == b.target;
  }
};

// Malformed input file (bad header, token, vertex out of range, self-loop).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid argument to an algorithm or constructor (bad sizes, bad ranges).
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The identity on [0,1], 0 below, 1 above. 1-Lipschitz.
inline double clamp01(double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); }

// Fractional assignment f : V -> [0,1]. Boolean assignments are the special
// case with values in {0,1}.
struct FractionalAssignment {
  std::vector<double> value;

  double operator[](VertexId v) const { return value[v]; }
  std::size_t size() const { return value.size(); }
};

// Per-vertex degree split by edge direction and neighbor color relative to
// this vertex's own color: "lo" = neighbor strictly lower-colored,
// "hi" = strictly higher-colored. Proper colorings admit no ties.
struct DegreeSplit {
  std::uint64_t in_lo = 0;
  std::uint64_t out_lo = 0;
  std::uint64_t in_hi = 0;
  std::uint64_t out_hi = 0;

  std::uint64_t in() const { return in_lo + in_hi; }
  std::uint64_t out() const { return out_lo + out_hi; }
  std::uint64_t total() const { return in() + out(); }
};

class ColoredDigraph {
 public:
  // Colors are 1-based, in [1, k]. coloring.size() must equal n.
  ColoredDigraph(std::size_t n, std::vector<Edge> edges, std::vector<int> coloring,
                 int num_colors);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  int color(VertexId v) const { return coloring_[v]; }
  const std::vector<int>& coloring() const { return coloring_; }
  int num_colors() const { return num_colors_; }

  // True iff every edge has differently-colored endpoints.
  bool is_proper() const;

  // In-edges/out-edges of v, indices into edges(), in edge-input order.
  // Built lazily on first use.
  const std::vector<std::uint32_t>& in_edges(VertexId v) const;
  const std::vector<std::uint32_t>& out_edges(VertexId v) const;

  std::uint64_t in_degree(VertexId v) const { return in_edges(v).size(); }
  std::uint64_t out_degree(VertexId v) const { return out_edges(v).size(); }
  std::uint64_t degree(VertexId v) const { return in_degree(v) + out_degree(v); }

 private:
  void build_adjacency() const;

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<int> coloring_;
  int num_colors_;
  mutable bool adjacency_built_ = false;
  mutable std::vector<std::vector<std::uint32_t>> in_adj_;
  mutable std::vector<std::vector<std::uint32_t>> out_adj_;
};

// Value an assignment gives one edge: f(u) * (1 - f(v)).
inline double edge_value(const FractionalAssignment& f, const Edge& e) {
  return f[e.source] * (1.0 - f[e.target]);
}

// Average edge value, (1/|E|) * sum over edges. Throws ParamError when the
// graph has no edges (the normalization is undefined).
double cut_value(const ColoredDigraph& g, const FractionalAssignment& f);

// Degree split of one vertex. Requires a proper coloring at v (throws
// ParamError on a same-colored incident edge).
DegreeSplit degree_split(const ColoredDigraph& g, VertexId v);

// All vertices at once; same precondition graph-wide.
std::vector<DegreeSplit> degree_splits(const ColoredDigraph& g);

// --- text formats -----------------------------------------------------------
//
// Edge list: first non-comment line "n m", then m lines "u v" (0-based
// endpoints). Lines starting with '#' are comments and ignored anywhere.
// Self-loops and out-of-range endpoints are format errors.
//
// Coloring: n non-comment lines, line i holding the (1-based) color of
// vertex i.

struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

EdgeList parse_edge_list(std::istream& in);
EdgeList load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const EdgeList& el,
                     const std::vector<std::string>& comments = {});

std::vector<int> parse_coloring(std::istream& in, std::size_t n);
std::vector<int> load_coloring(const std::string& path, std::size_t n);
void write_coloring(std::ostream& out, const std::vector<int>& coloring);

// Assignment file: n lines, one real per vertex.
void write_assignment(std::ostream& out, const FractionalAssignment& f);

// Shortest round-trip decimal text for a double ("inf" for infinity).
std::string format_double(double x);
// Inverse of format_double; throws FormatError on garbage.
double parse_double(const std::string& text, std::size_t line = 0);

}  // namespace maxdicut
