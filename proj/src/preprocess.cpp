#include "maxdicut/preprocess.hpp"

#include <cmath>
#include <sstream>

namespace maxdicut {

SubsampleSource::SubsampleSource(std::unique_ptr<EdgeSource> upstream, double keep_prob,
                                 std::uint64_t seed)
    : upstream_(std::move(upstream)), keep_prob_(keep_prob), seed_(seed) {
  if (!(keep_prob > 0.0 && keep_prob <= 1.0))
    throw ParamError("keep_prob must lie in (0, 1]");
}

std::optional<Edge> SubsampleSource::next() {
  while (auto e = upstream_->next()) {
    const std::uint64_t ordinal = seen_++;
    if (keep_prob_ >= 1.0 || rng::keyed_coin(keep_prob_, seed_, rng::Tag::keep, ordinal)) {
      ++kept_;
      return e;
    }
  }
  return std::nullopt;
}

FlipSource::FlipSource(std::unique_ptr<EdgeSource> upstream, double flip_prob,
                       std::uint64_t seed)
    : upstream_(std::move(upstream)), flip_prob_(flip_prob), seed_(seed) {
  if (!(flip_prob >= 0.0 && flip_prob < 1.0))
    throw ParamError("flip_prob must lie in [0, 1)");
}

std::optional<Edge> FlipSource::next() {
  auto e = upstream_->next();
  if (!e) return std::nullopt;
  const std::uint64_t ordinal = seen_++;
  if (flip_prob_ > 0.0 && rng::keyed_coin(flip_prob_, seed_, rng::Tag::flip, ordinal)) {
    ++flipped_;
    return Edge{e->target, e->source};
  }
  return e;
}

ColorFilterSource::ColorFilterSource(std::unique_ptr<EdgeSource> upstream, int k,
                                     std::uint64_t seed)
    : upstream_(std::move(upstream)), coloring_(Coloring::hashed(k, seed)) {}

std::optional<Edge> ColorFilterSource::next() {
  while (auto e = upstream_->next()) {
    ++seen_;
    if (coloring_(e->source) == coloring_(e->target)) {
      ++dropped_;
      continue;
    }
    return e;
  }
  return std::nullopt;
}

std::string AssumptionReport::to_string() const {
  std::ostringstream out;
  out << "edge_count=" << edge_count << " edge_count_ok="
      << (edge_count_ok ? "true" : "false") << "\n";
  out << "balance_ok=" << (balance_ok ? "true" : "false");
  if (balance_witness) out << " witness=" << *balance_witness;
  out << " worst_ratio=" << format_double(balance_worst) << "\n";
  out << "color_balance_ok=" << (color_balance_ok ? "true" : "false");
  if (color_witness)
    out << " witness=" << *color_witness << " color=" << color_witness_color;
  out << " worst_scaled_dev=" << format_double(color_worst_dev) << "\n";
  return out.str();
}

AssumptionReport check_assumptions(const ColoredDigraph& g,
                                   const AssumptionConfig& config) {
  AssumptionReport report;
  report.edge_count = g.edge_count();
  report.edge_count_ok =
      static_cast<double>(g.edge_count()) <= config.edge_bound;

  const int k = g.num_colors();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const double deg = static_cast<double>(g.degree(v));
    if (deg == 0.0 || deg < config.degree_cutoff) continue;

    const double din = static_cast<double>(g.in_degree(v));
    const double dout = static_cast<double>(g.out_degree(v));
    const double ratio = std::min(din, dout) / deg;
    if (ratio < report.balance_worst) report.balance_worst = ratio;
    if (din < config.balance_factor * deg || dout < config.balance_factor * deg) {
      if (report.balance_ok) report.balance_witness = v;
      report.balance_ok = false;
    }

    if (k < 2) continue;
    // Per-color degree split (validates properness as a side effect).
    std::vector<std::uint64_t> in_by_color(static_cast<std::size_t>(k) + 1, 0);
    std::vector<std::uint64_t> out_by_color(static_cast<std::size_t>(k) + 1, 0);
    for (std::uint32_t i : g.in_edges(v)) {
      int cu = g.color(g.edges()[i].source);
      if (cu == g.color(v)) throw ParamError("assumption check requires a proper coloring");
      in_by_color[cu] += 1;
    }
    for (std::uint32_t i : g.out_edges(v)) {
      int cu = g.color(g.edges()[i].target);
      if (cu == g.color(v)) throw ParamError("assumption check requires a proper coloring");
      out_by_color[cu] += 1;
    }
    const double expected_in = din / (k - 1);
    const double expected_out = dout / (k - 1);
    const double allowed = config.color_dev_factor * deg / (k - 1);
    for (int a = 1; a <= k; ++a) {
      if (a == g.color(v)) continue;
      const double dev = std::max(std::abs(in_by_color[a] - expected_in),
                                  std::abs(out_by_color[a] - expected_out));
      const double scaled = deg > 0 ? dev * (k - 1) / deg : 0.0;
      if (scaled > report.color_worst_dev) report.color_worst_dev = scaled;
      if (dev > allowed) {
        if (report.color_balance_ok) {
          report.color_witness = v;
          report.color_witness_color = a;
        }
        report.color_balance_ok = false;
      }
    }
  }
  return report;
}

std::size_t GuessLadder::select(std::uint64_t m) const {
  if (rungs.empty()) throw ParamError("empty guess ladder");
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    if (m >= rungs[i].guess && (i + 1 == rungs.size() || m < rungs[i + 1].guess))
      return i;
  }
  return 0;  // m == 0 (or below the first guess): smallest rung
}

GuessLadder build_guess_ladder(std::uint64_t m_max, double target_edges) {
  if (m_max < 1) throw ParamError("m_max must be at least 1");
  if (!(target_edges > 0.0)) throw ParamError("target_edges must be positive");
  GuessLadder ladder;
  std::uint64_t guess = 1;
  while (true) {
    ladder.rungs.push_back(
        {guess, std::min(1.0, target_edges / static_cast<double>(guess))});
    if (guess >= m_max) break;
    guess *= 2;
  }
  return ladder;
}

}  // namespace maxdicut
