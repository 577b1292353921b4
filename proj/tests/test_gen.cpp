#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "maxdicut/gen.hpp"

using namespace maxdicut;

namespace {

void check_simple(const GenResult& r, std::size_t n, std::size_t m) {
  CHECK(r.graph.n == n);
  REQUIRE(r.graph.edges.size() == m);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : r.graph.edges) {
    CHECK(e.source != e.target);
    CHECK(e.source < n);
    CHECK(e.target < n);
    CHECK(seen.insert({e.source, e.target}).second);  // no duplicate pair
  }
}

}  // namespace

TEST_CASE("uniform random graphs are simple and deterministic") {
  const GenResult r = gen_uniform_random(50, 400, 9);
  check_simple(r, 50, 400);
  CHECK(r.coloring.empty());
  const GenResult again = gen_uniform_random(50, 400, 9);
  CHECK(again.graph.edges == r.graph.edges);
  const GenResult other = gen_uniform_random(50, 400, 10);
  CHECK(other.graph.edges != r.graph.edges);
}

TEST_CASE("uniform random saturates the complete digraph") {
  const GenResult r = gen_uniform_random(5, 20, 1);
  check_simple(r, 5, 20);
  CHECK_THROWS_AS(gen_uniform_random(5, 21, 1), ParamError);
}

TEST_CASE("planted dicut crossing count is exact") {
  const GenResult r = gen_planted_dicut(40, 300, 0.9, 4);
  check_simple(r, 40, 300);
  CHECK(r.planted_crossing == 270);  // round(0.9 * 300)
  CHECK(r.num_colors == 3);
  REQUIRE(r.coloring.size() == 40);

  // S is the first half, T the second; planted edges S->T, noise T->S.
  std::size_t crossing = 0;
  for (const Edge& e : r.graph.edges) {
    const bool s_side = e.source < 20, t_side = e.target >= 20;
    if (s_side) {
      CHECK(t_side);  // edges out of S always land in T
      ++crossing;
    } else {
      CHECK(e.target < 20);  // noise runs T->S
    }
  }
  CHECK(crossing == r.planted_crossing);

  // The attached coloring is proper: S alternates 1/2, T is 3.
  for (VertexId v = 0; v < 40; ++v) {
    if (v < 20)
      CHECK(r.coloring[v] == 1 + static_cast<int>(v & 1));
    else
      CHECK(r.coloring[v] == 3);
  }
  const ColoredDigraph g(40, r.graph.edges, r.coloring, 3);
  CHECK(g.is_proper());

  // Metadata records the crossing count.
  bool found = false;
  for (const std::string& c : r.comments)
    found = found || c.find("planted_crossing=270") != std::string::npos;
  CHECK(found);
}

TEST_CASE("planted dicut respects capacity limits") {
  // 4 vertices: S = {0,1}, T = {2,3}; at most 4 edges each way.
  CHECK_THROWS_AS(gen_planted_dicut(4, 9, 0.5, 1), ParamError);
  const GenResult r = gen_planted_dicut(4, 8, 0.5, 1);
  check_simple(r, 4, 8);
  CHECK(r.planted_crossing == 4);
}

TEST_CASE("layered dag edges ascend layers") {
  const int layers = 4;
  const GenResult r = gen_layered_dag(30, 120, layers, 6);
  check_simple(r, 30, 120);
  CHECK(r.num_colors == layers);
  for (const Edge& e : r.graph.edges)
    CHECK(e.source % layers < e.target % layers);
  for (VertexId v = 0; v < 30; ++v)
    CHECK(r.coloring[v] == 1 + static_cast<int>(v % layers));
  const ColoredDigraph g(30, r.graph.edges, r.coloring, layers);
  CHECK(g.is_proper());
}

TEST_CASE("layered dag validates the layer count") {
  CHECK_THROWS_AS(gen_layered_dag(10, 5, 1, 1), ParamError);
  CHECK_THROWS_AS(gen_layered_dag(10, 5, 11, 1), ParamError);
  // Two layers of 2 vertices each support at most 4 ascending edges.
  CHECK_THROWS_AS(gen_layered_dag(4, 5, 2, 1), ParamError);
  CHECK_NOTHROW(gen_layered_dag(4, 4, 2, 1));
}

TEST_CASE("power law generator concentrates out-degree") {
  const std::size_t n = 200, m = 2000;
  const GenResult r = gen_power_law_out(n, m, 2.0, 12);
  check_simple(r, n, m);
  std::vector<std::size_t> outdeg(n, 0);
  for (const Edge& e : r.graph.edges) ++outdeg[e.source];
  // With exponent 2 the first few vertices should own a large share.
  std::size_t head = 0;
  for (std::size_t v = 0; v < 10; ++v) head += outdeg[v];
  CHECK(head > m / 4);
  // Exponent 0 degenerates to uniform sources: the head share drops.
  const GenResult flat = gen_power_law_out(n, m, 0.0, 12);
  std::vector<std::size_t> flatdeg(n, 0);
  for (const Edge& e : flat.graph.edges) ++flatdeg[e.source];
  std::size_t flathead = 0;
  for (std::size_t v = 0; v < 10; ++v) flathead += flatdeg[v];
  CHECK(flathead < head / 2);
  CHECK_THROWS_AS(gen_power_law_out(10, 5, -1.0, 1), ParamError);
}

TEST_CASE("dispatcher routes kinds and rejects unknown ones") {
  CHECK(generate("uniform-random", 10, 20, 3).graph.edges ==
        gen_uniform_random(10, 20, 3).graph.edges);
  CHECK(generate("planted-dicut", 10, 20, 3).planted_crossing ==
        gen_planted_dicut(10, 20, 0.9, 3).planted_crossing);
  CHECK(generate("layered-dag", 10, 9, 3, 0.9, 3).graph.edges ==
        gen_layered_dag(10, 9, 3, 3).graph.edges);
  CHECK(generate("power-law-out", 10, 9, 3, 0.9, 3, 1.5).graph.edges ==
        gen_power_law_out(10, 9, 1.5, 3).graph.edges);
  CHECK_THROWS_AS(generate("mystery", 10, 9, 3), ParamError);
}

TEST_CASE("generators validate basic ranges") {
  CHECK_THROWS_AS(gen_uniform_random(1, 1, 1), ParamError);
  CHECK_THROWS_AS(gen_uniform_random(5, 0, 1), ParamError);
  CHECK_THROWS_AS(gen_planted_dicut(5, 0, 0.5, 1), ParamError);
  CHECK_THROWS_AS(gen_planted_dicut(5, 4, 1.5, 1), ParamError);
  CHECK_THROWS_AS(gen_planted_dicut(5, 4, -0.5, 1), ParamError);
}
