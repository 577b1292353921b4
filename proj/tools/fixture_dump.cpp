// Developer utility: materialize a colored graph, freeze the neighbor
// selections a streaming run would hold for it (or draw them directly), and
// dump the fixture as text. Optionally also prints the reference estimate
// computed over that fixture. Useful for turning a failing streaming case
// into a deterministic regression input.
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxdicut/graph.hpp"
#include "maxdicut/offline.hpp"
#include "maxdicut/oracle.hpp"
#include "maxdicut/params.hpp"
#include "maxdicut/streaming.hpp"

using namespace maxdicut;

int main(int argc, char** argv) {
  CLI::App app{"Dump the frozen neighbor-selection fixture for a colored graph"};
  std::string graph_path, colors_path, from = "sample";
  int k = 0;
  double alpha = 0.0;
  std::uint64_t d = 2, eval_size = 0, seed = 0;
  double vertex_prob = 1.0, edge_prob = 1.0, threshold =
      std::numeric_limits<double>::infinity();
  bool estimates = false;
  app.add_option("--graph", graph_path, "Edge-list file")->required();
  app.add_option("--colors-file", colors_path, "Vertex color table")->required();
  app.add_option("--colors", k, "Number of colors k")->required();
  app.add_option("--alpha", alpha, "Low-degree mixing weight (default 1/(2k))");
  app.add_option("--d", d, "Neighbor samples per side");
  app.add_option("--vertex-prob", vertex_prob, "Vertex sampling probability");
  app.add_option("--edge-prob", edge_prob, "Edge sampling probability");
  app.add_option("--eval-size", eval_size,
                 "Evaluation reservoir capacity (default m)");
  app.add_option("--threshold", threshold,
                 "Degree threshold applied to every color");
  app.add_option("--seed", seed, "Selection seed");
  app.add_option("--from", from, "sample | stream")
      ->check(CLI::IsMember({"sample", "stream"}));
  app.add_flag("--estimates", estimates,
               "Also print the reference estimate over the fixture");
  CLI11_PARSE(app, argc, argv);

  try {
    const EdgeList el = load_edge_list(graph_path);
    const std::vector<int> colors = load_coloring(colors_path, el.n);
    const ColoredDigraph g(el.n, el.edges, colors, k);
    if (alpha == 0.0) alpha = 0.5 / k;
    const ParamSet p = practical_params(
        k, alpha, d, vertex_prob, edge_prob,
        eval_size ? eval_size : std::max<std::uint64_t>(1, el.edges.size()),
        std::vector<double>(static_cast<std::size_t>(k), threshold));

    SelectionFixture fx;
    if (from == "stream") {
      VectorSource src(el.n, el.edges);
      fx = extract_fixture(
          process_stream(src, Coloring::table(k, colors), p, seed));
    } else {
      fx = sample_fixture(g, p, seed);
    }
    write_fixture(std::cout, fx, g);

    if (estimates) {
      const FractionalAssignment est = intermediate_estimator(g, fx, p);
      std::cout << "# estimates\n";
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        std::cout << "# " << v << " " << format_double(est[v]) << "\n";
      std::cout << "# cut_value " << format_double(cut_value(g, est)) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
