#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxdicut/graph.hpp"
#include "maxdicut/rng.hpp"

// Single-pass edge sources. A source yields each edge exactly once; consumers
// that need a second look must materialize. Transform wrappers (subsampling,
// flipping, color filtering) live in preprocess.hpp and hold O(1) state each.
namespace maxdicut {

class EdgeSource {
 public:
  virtual ~EdgeSource() = default;
  // Number of vertices (known up front from the header / constructor).
  virtual std::size_t vertex_count() const = 0;
  // Next edge, or nullopt when the stream is exhausted.
  virtual std::optional<Edge> next() = 0;
};

class VectorSource final : public EdgeSource {
 public:
  VectorSource(std::size_t n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)) {}
  explicit VectorSource(const EdgeList& el) : n_(el.n), edges_(el.edges) {}

  std::size_t vertex_count() const override { return n_; }

  std::optional<Edge> next() override {
    if (pos_ >= edges_.size()) return std::nullopt;
    return edges_[pos_++];
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::size_t pos_ = 0;
};

// Streams an edge-list file without holding it in memory. Parse problems
// throw FormatError with the offending line number.
class FileSource final : public EdgeSource {
 public:
  explicit FileSource(const std::string& path);

  std::size_t vertex_count() const override { return n_; }
  std::optional<Edge> next() override;

 private:
  bool next_content_line(std::string& line);

  std::ifstream in_;
  std::string path_;
  std::size_t n_ = 0;
  std::uint64_t declared_m_ = 0;
  std::uint64_t emitted_ = 0;
  std::size_t lineno_ = 0;
};

// Vertex coloring consultable in O(1): either a pseudo-random function of
// (seed, vertex id) — constant memory, the streaming-friendly form — or a
// materialized table loaded from a file.
class Coloring {
 public:
  static Coloring hashed(int k, std::uint64_t seed) { return Coloring(k, seed); }
  static Coloring table(int k, std::vector<int> colors) {
    return Coloring(k, std::move(colors));
  }

  int num_colors() const { return k_; }

  int operator()(VertexId v) const {
    if (!table_.empty()) return table_[v];
    return 1 + static_cast<int>(rng::keyed_below(static_cast<std::uint64_t>(k_), seed_,
                                                 rng::Tag::color, v));
  }

  // Bytes of state this coloring pins in memory (0 for the hashed form).
  std::size_t tracked_bytes() const { return table_.size() * sizeof(int); }

 private:
  Coloring(int k, std::uint64_t seed) : k_(k), seed_(seed) {
    if (k < 1) throw ParamError("need at least one color");
  }
  Coloring(int k, std::vector<int> colors) : k_(k), table_(std::move(colors)) {
    if (k < 1) throw ParamError("need at least one color");
    for (std::size_t v = 0; v < table_.size(); ++v)
      if (table_[v] < 1 || table_[v] > k_)
        throw ParamError("vertex " + std::to_string(v) + " has color outside [1, " +
                         std::to_string(k_) + "]");
  }

  int k_;
  std::uint64_t seed_ = 0;
  std::vector<int> table_;
};

// Drains a source into a colored in-memory graph.
ColoredDigraph materialize(EdgeSource& source, const Coloring& coloring);

// Drains a source into a plain edge list.
EdgeList drain(EdgeSource& source);

}  // namespace maxdicut
