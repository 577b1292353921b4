#include "maxdicut/streaming.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace maxdicut {

namespace {

// Formulaic per-entry overhead charged for hash-map storage.
constexpr std::size_t kMapEntryOverhead = 48;
constexpr std::size_t kVectorOverhead = 24;

}  // namespace

double ht_avg(const std::vector<HTEntry>& entries) {
  if (entries.empty()) return 0.0;
  double sum = 0.0;
  for (const HTEntry& e : entries) {
    if (e.failed) continue;
    if (!(e.success_prob > 0.0))
      throw ParamError("Horvitz-Thompson entry with nonpositive success probability");
    sum += e.value / e.success_prob;
  }
  return sum / static_cast<double>(entries.size());
}

Reservoir::Reservoir(std::size_t capacity, std::uint64_t seed, rng::Tag accept_tag,
                     rng::Tag slot_tag, std::uint64_t id)
    : capacity_(capacity),
      seed_(seed),
      accept_tag_(accept_tag),
      slot_tag_(slot_tag),
      id_(id) {
  if (capacity_ == 0) throw ParamError("reservoir capacity must be positive");
}

void Reservoir::update(const Edge& e) {
  if (count_ <= capacity_) {
    items_.push_back(e);
  } else {
    const double accept =
        static_cast<double>(capacity_) / static_cast<double>(count_);
    if (rng::keyed_unit(seed_, accept_tag_, id_, count_) < accept) {
      const std::uint64_t slot =
          rng::keyed_below(capacity_, seed_, slot_tag_, id_, count_);
      items_[static_cast<std::size_t>(slot)] = e;
    }
  }
  ++count_;
}

StreamState::StreamState(std::size_t n, const Coloring& coloring,
                         const ParamSet& params, std::uint64_t seed)
    : n_(n),
      coloring_(coloring),
      params_(params),
      seed_(seed),
      w_seed_(seed),
      w_prob_(params.vertex_sample_prob),
      c_(static_cast<std::size_t>(
             std::min<std::uint64_t>(params.eval_reservoir_size,
                                     std::uint64_t(1) << 62)),
         seed, rng::Tag::eval_accept, rng::Tag::eval_slot) {}

void StreamState::note_peak() const {
  const std::size_t now = tracked_bytes();
  if (now > peak_bytes_) peak_bytes_ = now;
}

std::size_t StreamState::tracked_bytes() const {
  std::size_t bytes = sketch_bytes_;
  bytes += b_edges_.size() * sizeof(Edge) + kVectorOverhead;
  bytes += c_.items().size() * sizeof(Edge) + kVectorOverhead;
  bytes += coloring_.tracked_bytes();
  bytes += memo_bytes_;
  return bytes;
}

void StreamState::ingest(const Edge& e) {
  if (e.source >= n_ || e.target >= n_)
    throw FormatError("edge endpoint " +
                      std::to_string(std::max(e.source, e.target)) +
                      " out of range for vertex count " + std::to_string(n_));
  const int cu = coloring_(e.source);
  const int cv = coloring_(e.target);
  if (cu == cv)
    throw ParamError(
        "stream is not properly colored (monochromatic edge); apply the color "
        "filter first");

  const auto touch = [&](VertexId v) -> VertexSketch& {
    auto [it, inserted] = sketches_.try_emplace(v);
    if (inserted) sketch_bytes_ += kMapEntryOverhead + 4 * sizeof(std::uint64_t);
    return it->second;
  };

  if (in_w(e.source)) {
    VertexSketch& sk = touch(e.source);
    if (cv < cu) {
      ++sk.out_lo;
      if (sk.out_slots.empty()) {
        // First lower-colored out-edge: every size-1 reservoir accepts it.
        sk.out_slots.assign(static_cast<std::size_t>(params_.d), e);
        sketch_bytes_ += sk.out_slots.size() * sizeof(Edge);
      } else {
        for (std::size_t i = 0; i < sk.out_slots.size(); ++i) {
          if (rng::keyed_unit(seed_, rng::Tag::slot_out, e.source, i, sk.out_lo) <
              1.0 / static_cast<double>(sk.out_lo))
            sk.out_slots[i] = e;
        }
      }
    } else {
      ++sk.out_hi;
    }
  }
  if (in_w(e.target)) {
    VertexSketch& sk = touch(e.target);
    if (cu < cv) {
      ++sk.in_lo;
      if (sk.in_slots.empty()) {
        sk.in_slots.assign(static_cast<std::size_t>(params_.d), e);
        sketch_bytes_ += sk.in_slots.size() * sizeof(Edge);
      } else {
        for (std::size_t i = 0; i < sk.in_slots.size(); ++i) {
          if (rng::keyed_unit(seed_, rng::Tag::slot_in, e.target, i, sk.in_lo) <
              1.0 / static_cast<double>(sk.in_lo))
            sk.in_slots[i] = e;
        }
      }
    } else {
      ++sk.in_hi;
    }
  }

  if (rng::keyed_coin(params_.edge_sample_prob, seed_, rng::Tag::edge_sample,
                      stream_length_))
    b_edges_.push_back(e);
  c_.update(e);
  ++stream_length_;
  note_peak();
}

void StreamState::build_b_index() const {
  if (b_index_built_) return;
  for (std::uint32_t i = 0; i < b_edges_.size(); ++i) {
    const Edge& e = b_edges_[i];
    b_adj_[e.source].push_back(i);
    b_adj_[e.target].push_back(i);
    ++b_deg_[e.source];
    ++b_deg_[e.target];
    ++b_out_deg_[e.source];
  }
  memo_bytes_ += b_edges_.size() * 2 * sizeof(std::uint32_t) +
                 b_adj_.size() * 3 * kMapEntryOverhead;
  b_index_built_ = true;
  note_peak();
}

std::uint64_t StreamState::b_degree(VertexId v) const {
  build_b_index();
  const auto it = b_deg_.find(v);
  return it == b_deg_.end() ? 0 : it->second;
}

std::uint64_t StreamState::b_out_degree(VertexId v) const {
  build_b_index();
  const auto it = b_out_deg_.find(v);
  return it == b_out_deg_.end() ? 0 : it->second;
}

double StreamState::success_prob(std::size_t tree_size) const {
  if (tree_size == 0) return 1.0;  // unconditional estimate
  if (!(w_prob_ > 0.0)) return 0.0;
  return std::exp2(static_cast<double>(tree_size) * std::log2(w_prob_));
}

const Estimate& StreamState::estimate_impl(VertexId v, int depth) const {
  if (const auto it = memo_.find(v); it != memo_.end()) return it->second;
  if (depth > params_.k)
    throw std::logic_error(
        "estimator recursion exceeded the color count; coloring is not "
        "consistent with the sketch");
  build_b_index();

  const int chi = coloring_(v);
  const int k = params_.k;
  const std::uint64_t db = b_degree(v);
  Estimate est;

  if (static_cast<double>(db) > params_.threshold(chi)) {
    // High-degree: estimate from sampled degree ratios plus an HT average of
    // the lower-colored B-neighborhood. Never fails; the dependency tree is
    // empty because nothing here is conditional on sampling v itself.
    std::vector<HTEntry> entries;
    if (const auto adj = b_adj_.find(v); adj != b_adj_.end()) {
      for (const std::uint32_t idx : adj->second) {
        const Edge& e = b_edges_[idx];
        const VertexId other = e.source == v ? e.target : e.source;
        if (coloring_(other) < chi) {
          const Estimate& child = estimate_impl(other, depth + 1);
          entries.push_back(child.ok ? HTEntry::of(child.value,
                                                   success_prob(child.tree.size()))
                                     : HTEntry::fail());
        }
      }
    }
    const double zb = ht_avg(entries);
    const double ratio =
        static_cast<double>(b_out_degree(v)) / static_cast<double>(db);
    double p;
    if (chi == k) {
      p = (params_.alpha + 1.0) / params_.alpha * ratio - zb / params_.alpha;
    } else {
      p = static_cast<double>(k - 1) / static_cast<double>(k - chi) * ratio -
          static_cast<double>(chi - 1) / static_cast<double>(k - chi) * zb;
    }
    est.ok = true;
    est.value = clamp01(p);
  } else if (!in_w(v)) {
    est = Estimate::fail();
  } else {
    const auto sk_it = sketches_.find(v);
    if (sk_it == sketches_.end())
      throw std::logic_error(
          "no sketch data for a sampled vertex; resampling W requires an "
          "ingest pass with vertex_sample_prob = 1");
    const VertexSketch& sk = sk_it->second;
    const double y_in =
        std::max(static_cast<double>(sk.in_hi), params_.alpha * static_cast<double>(sk.in_lo));
    const double y_out =
        std::max(static_cast<double>(sk.out_hi), params_.alpha * static_cast<double>(sk.out_lo));

    bool failed = false;
    double sum_in = 0.0;   // sum of child positions over in-side slots
    double sum_out = 0.0;  // sum of (1 - position) over out-side slots
    std::vector<std::uint64_t> tree{v};

    for (const Edge& se : sk.in_slots) {
      const Estimate& child = estimate_impl(se.source, depth + 1);
      if (!child.ok) {
        failed = true;
        break;
      }
      sum_in += child.value;
      tree.insert(tree.end(), child.tree.begin(), child.tree.end());
    }
    if (!failed) {
      for (const Edge& se : sk.out_slots) {
        const Estimate& child = estimate_impl(se.target, depth + 1);
        if (!child.ok) {
          failed = true;
          break;
        }
        sum_out += 1.0 - child.value;
        tree.insert(tree.end(), child.tree.begin(), child.tree.end());
      }
    }

    if (!failed) {
      // Dedupe shared subtrees before padding so |T| is the true node count.
      std::sort(tree.begin(), tree.end());
      tree.erase(std::unique(tree.begin(), tree.end()), tree.end());
      const std::uint64_t target = params_.tree_size(chi);
      std::uint64_t ordinal = 0;
      while (tree.size() < target) {
        if (rng::keyed_unit(w_seed_, rng::Tag::dummy_coin, v, ordinal) < w_prob_) {
          tree.push_back(dummy_node(v, ordinal));
          ++ordinal;
        } else {
          failed = true;
          break;
        }
      }
    }

    if (failed) {
      est = Estimate::fail();
    } else {
      std::sort(tree.begin(), tree.end());  // padding ids interleave arbitrarily
      const double d = static_cast<double>(params_.d);
      const double z_in = static_cast<double>(sk.in_lo) / d * sum_in;
      const double z_out = static_cast<double>(sk.out_lo) / d * sum_out;
      est.ok = true;
      est.value = clamp01((y_out + z_out - z_in) / (y_in + y_out));
      est.tree = std::move(tree);
    }
  }

  const auto [it, inserted] = memo_.emplace(v, std::move(est));
  assert(inserted);
  memo_bytes_ += kMapEntryOverhead + it->second.tree.size() * sizeof(std::uint64_t);
  note_peak();
  return it->second;
}

const Estimate& StreamState::vertex_estimate(VertexId v) const {
  if (v >= n_) throw ParamError("vertex id out of range");
  return estimate_impl(v, 0);
}

Estimate StreamState::edge_estimate(const Edge& e) const {
  const Estimate& a = vertex_estimate(e.source);
  const Estimate& b = vertex_estimate(e.target);
  if (!a.ok || !b.ok) return Estimate::fail();
  Estimate out;
  out.ok = true;
  out.value = a.value * (1.0 - b.value);
  out.tree.reserve(a.tree.size() + b.tree.size());
  std::set_union(a.tree.begin(), a.tree.end(), b.tree.begin(), b.tree.end(),
                 std::back_inserter(out.tree));
  return out;
}

FinalizeResult StreamState::finalize() const {
  FinalizeResult r;
  const std::vector<Edge>& items = c_.items();
  std::vector<HTEntry> entries;
  entries.reserve(items.size());
  for (const Edge& e : items) {
    const Estimate est = edge_estimate(e);
    if (est.ok) {
      entries.push_back(HTEntry::of(est.value, success_prob(est.tree.size())));
    } else {
      entries.push_back(HTEntry::fail());
      ++r.failures;
    }
  }
  r.evaluated = entries.size();
  r.reservoir_partial = c_.seen() < c_.capacity();
  r.cut_val = ht_avg(entries);
  return r;
}

StreamState StreamState::with_resampled_w(std::uint64_t w_seed, double w_prob) const {
  if (!(w_prob >= 0.0 && w_prob <= 1.0))
    throw ParamError("vertex sampling probability must lie in [0, 1]");
  StreamState copy(*this);
  copy.w_seed_ = w_seed;
  copy.w_prob_ = w_prob;
  copy.memo_.clear();
  copy.memo_bytes_ = 0;
  if (copy.b_index_built_)
    copy.memo_bytes_ = b_edges_.size() * 2 * sizeof(std::uint32_t) +
                       b_adj_.size() * 3 * kMapEntryOverhead;
  return copy;
}

StreamState process_stream(EdgeSource& stream, const Coloring& coloring,
                           const ParamSet& params, std::uint64_t seed) {
  if (!params.executable)
    throw ParamError("parameter set is flagged non-executable at this scale");
  const std::size_t n = stream.vertex_count();
  if (n >= (std::size_t(1) << 31))
    throw ParamError("vertex count too large for sketch node ids");
  if (params.d > (std::uint64_t(1) << 20))
    throw ParamError("per-vertex reservoir width d too large to allocate");
  StreamState st(n, coloring, params, seed);
  while (const std::optional<Edge> e = stream.next()) st.ingest(*e);
  st.note_peak();
  return st;
}

}  // namespace maxdicut
