#include "maxdicut/stream.hpp"

#include <charconv>
#include <sstream>

namespace maxdicut {

namespace {

std::uint64_t parse_u64_token(const std::string& tok, std::size_t lineno) {
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw FormatError("expected a non-negative integer, got '" + tok + "'", lineno);
  return value;
}

}  // namespace

FileSource::FileSource(const std::string& path) : in_(path), path_(path) {
  if (!in_) throw FormatError("cannot open '" + path + "'");
  std::string line;
  if (!next_content_line(line)) throw FormatError("missing 'n m' header");
  std::istringstream ss(line);
  std::string a, b, extra;
  if (!(ss >> a >> b) || (ss >> extra)) throw FormatError("header must be 'n m'", lineno_);
  n_ = parse_u64_token(a, lineno_);
  declared_m_ = parse_u64_token(b, lineno_);
}

bool FileSource::next_content_line(std::string& line) {
  while (std::getline(in_, line)) {
    ++lineno_;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    return true;
  }
  return false;
}

std::optional<Edge> FileSource::next() {
  std::string line;
  if (!next_content_line(line)) {
    if (emitted_ < declared_m_)
      throw FormatError("expected " + std::to_string(declared_m_) + " edges, found " +
                            std::to_string(emitted_),
                        lineno_);
    return std::nullopt;
  }
  if (emitted_ >= declared_m_)
    throw FormatError("trailing content after declared edge count", lineno_);
  std::istringstream ss(line);
  std::string a, b, extra;
  if (!(ss >> a >> b) || (ss >> extra)) throw FormatError("edge line must be 'u v'", lineno_);
  std::uint64_t u = parse_u64_token(a, lineno_);
  std::uint64_t v = parse_u64_token(b, lineno_);
  if (u >= n_ || v >= n_)
    throw FormatError("vertex id out of range [0, " + std::to_string(n_) + ")", lineno_);
  if (u == v) throw FormatError("self-loop rejected", lineno_);
  ++emitted_;
  return Edge{static_cast<VertexId>(u), static_cast<VertexId>(v)};
}

ColoredDigraph materialize(EdgeSource& source, const Coloring& coloring) {
  const std::size_t n = source.vertex_count();
  std::vector<Edge> edges;
  while (auto e = source.next()) edges.push_back(*e);
  std::vector<int> colors(n);
  for (VertexId v = 0; v < n; ++v) colors[v] = coloring(v);
  return ColoredDigraph(n, std::move(edges), std::move(colors), coloring.num_colors());
}

EdgeList drain(EdgeSource& source) {
  EdgeList el;
  el.n = source.vertex_count();
  while (auto e = source.next()) el.edges.push_back(*e);
  return el;
}

}  // namespace maxdicut
