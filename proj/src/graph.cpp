#include "maxdicut/graph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace maxdicut {

ColoredDigraph::ColoredDigraph(std::size_t n, std::vector<Edge> edges,
                               std::vector<int> coloring, int num_colors)
    : n_(n), edges_(std::move(edges)), coloring_(std::move(coloring)),
      num_colors_(num_colors) {
  if (coloring_.size() != n_)
    throw ParamError("coloring size " + std::to_string(coloring_.size()) +
                     " does not match vertex count " + std::to_string(n_));
  if (num_colors_ < 1) throw ParamError("need at least one color");
  for (std::size_t v = 0; v < n_; ++v) {
    if (coloring_[v] < 1 || coloring_[v] > num_colors_)
      throw ParamError("vertex " + std::to_string(v) + " has color " +
                       std::to_string(coloring_[v]) + " outside [1, " +
                       std::to_string(num_colors_) + "]");
  }
  for (const Edge& e : edges_) {
    if (e.source >= n_ || e.target >= n_)
      throw ParamError("edge endpoint out of range");
    if (e.source == e.target)
      throw ParamError("self-loop at vertex " + std::to_string(e.source));
  }
}

bool ColoredDigraph::is_proper() const {
  for (const Edge& e : edges_)
    if (coloring_[e.source] == coloring_[e.target]) return false;
  return true;
}

void ColoredDigraph::build_adjacency() const {
  in_adj_.assign(n_, {});
  out_adj_.assign(n_, {});
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    out_adj_[edges_[i].source].push_back(i);
    in_adj_[edges_[i].target].push_back(i);
  }
  adjacency_built_ = true;
}

const std::vector<std::uint32_t>& ColoredDigraph::in_edges(VertexId v) const {
  if (!adjacency_built_) build_adjacency();
  return in_adj_[v];
}

const std::vector<std::uint32_t>& ColoredDigraph::out_edges(VertexId v) const {
  if (!adjacency_built_) build_adjacency();
  return out_adj_[v];
}

double cut_value(const ColoredDigraph& g, const FractionalAssignment& f) {
  if (g.edge_count() == 0) throw ParamError("cut value undefined on an empty edge set");
  if (f.size() != g.vertex_count())
    throw ParamError("assignment size does not match vertex count");
  double sum = 0.0;
  for (const Edge& e : g.edges()) sum += edge_value(f, e);
  return sum / static_cast<double>(g.edge_count());
}

DegreeSplit degree_split(const ColoredDigraph& g, VertexId v) {
  DegreeSplit s;
  const int c = g.color(v);
  for (std::uint32_t i : g.in_edges(v)) {
    const int cu = g.color(g.edges()[i].source);
    if (cu == c)
      throw ParamError("improper coloring: edge into vertex " + std::to_string(v) +
                       " joins two color-" + std::to_string(c) + " vertices");
    (cu < c ? s.in_lo : s.in_hi) += 1;
  }
  for (std::uint32_t i : g.out_edges(v)) {
    const int cu = g.color(g.edges()[i].target);
    if (cu == c)
      throw ParamError("improper coloring: edge out of vertex " + std::to_string(v) +
                       " joins two color-" + std::to_string(c) + " vertices");
    (cu < c ? s.out_lo : s.out_hi) += 1;
  }
  return s;
}

std::vector<DegreeSplit> degree_splits(const ColoredDigraph& g) {
  std::vector<DegreeSplit> out;
  out.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(degree_split(g, v));
  return out;
}

namespace {

// Reads the next non-comment, non-blank line. Returns false at EOF.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    return true;
  }
  return false;
}

std::uint64_t parse_u64_token(const std::string& tok, std::size_t lineno) {
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw FormatError("expected a non-negative integer, got '" + tok + "'", lineno);
  return value;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw FormatError("missing 'n m' header");
  auto header = split_ws(line);
  if (header.size() != 2) throw FormatError("header must be 'n m'", lineno);
  EdgeList el;
  el.n = parse_u64_token(header[0], lineno);
  std::uint64_t m = parse_u64_token(header[1], lineno);
  el.edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_content_line(in, line, lineno))
      throw FormatError("expected " + std::to_string(m) + " edges, found " +
                            std::to_string(i),
                        lineno);
    auto toks = split_ws(line);
    if (toks.size() != 2) throw FormatError("edge line must be 'u v'", lineno);
    std::uint64_t u = parse_u64_token(toks[0], lineno);
    std::uint64_t v = parse_u64_token(toks[1], lineno);
    if (u >= el.n || v >= el.n)
      throw FormatError("vertex id out of range [0, " + std::to_string(el.n) + ")",
                        lineno);
    if (u == v) throw FormatError("self-loop rejected", lineno);
    el.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  if (next_content_line(in, line, lineno))
    throw FormatError("trailing content after declared edge count", lineno);
  return el;
}

EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const EdgeList& el,
                     const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << el.n << " " << el.edges.size() << "\n";
  for (const Edge& e : el.edges) out << e.source << " " << e.target << "\n";
}

std::vector<int> parse_coloring(std::istream& in, std::size_t n) {
  std::vector<int> coloring;
  coloring.reserve(n);
  std::string line;
  std::size_t lineno = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_content_line(in, line, lineno))
      throw FormatError("expected " + std::to_string(n) + " colors, found " +
                            std::to_string(i),
                        lineno);
    auto toks = split_ws(line);
    if (toks.size() != 1) throw FormatError("coloring line must hold one color", lineno);
    std::uint64_t c = parse_u64_token(toks[0], lineno);
    if (c < 1 || c > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      throw FormatError("colors are 1-based positive integers", lineno);
    coloring.push_back(static_cast<int>(c));
  }
  return coloring;
}

std::vector<int> load_coloring(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return parse_coloring(in, n);
}

void write_coloring(std::ostream& out, const std::vector<int>& coloring) {
  for (int c : coloring) out << c << "\n";
}

void write_assignment(std::ostream& out, const FractionalAssignment& f) {
  for (double x : f.value) out << format_double(x) << "\n";
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

double parse_double(const std::string& text, std::size_t line) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size())
    throw FormatError("expected a real number, got '" + text + "'", line);
  return value;
}

}  // namespace maxdicut
