#pragma once

#include <cstdint>

// Splittable deterministic randomness. Every random decision in the pipeline
// is a pure function of (seed, purpose tag, identity, ordinal), so identical
// inputs with identical seeds reproduce byte-identical runs, and independent
// decision families (W membership, reservoir coins, dummy coins, ...) never
// share bits.
namespace maxdicut::rng {

// Purpose tags. Values are arbitrary but fixed; keep them distinct.
enum class Tag : std::uint64_t {
  vertex_sample = 0x9e3779b97f4a7c15ull,  // W membership
  edge_sample = 0xbf58476d1ce4e5b9ull,    // B membership
  eval_accept = 0x94d049bb133111ebull,    // eval reservoir accept coin
  eval_slot = 0x2545f4914f6cdd1dull,      // eval reservoir replacement slot
  slot_in = 0xd6e8feb86659fd93ull,        // per-slot in-reservoir coin
  slot_out = 0xa5a5b9c3d2e1f007ull,       // per-slot out-reservoir coin
  dummy_coin = 0xc2b2ae3d27d4eb4full,     // padding coin flips
  keep = 0x165667b19e3779f9ull,           // edge subsampling
  flip = 0x27220a95fe791845ull,           // orientation flipping
  color = 0x5851f42d4c957f2dull,          // vertex coloring
  gen = 0x14057b7ef767814full,            // graph generators
  trial = 0x8cb92ba72f3d8dd7ull,          // test/bench trial derivation
};

// SplitMix64 finalizer; good avalanche, cheap.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t keyed_u64(std::uint64_t seed, Tag tag, std::uint64_t a = 0,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix(seed ^ static_cast<std::uint64_t>(tag));
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

// Uniform double in [0, 1), 53 bits of precision.
constexpr double keyed_unit(std::uint64_t seed, Tag tag, std::uint64_t a = 0,
                            std::uint64_t b = 0, std::uint64_t c = 0) {
  return static_cast<double>(keyed_u64(seed, tag, a, b, c) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) decision. p outside [0,1] behaves as the nearest endpoint.
constexpr bool keyed_coin(double p, std::uint64_t seed, Tag tag, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
  return keyed_unit(seed, tag, a, b, c) < p;
}

// Uniform integer in [0, bound). bound must be positive. Modulo bias is
// ~bound/2^64 and irrelevant at the scales used here.
constexpr std::uint64_t keyed_below(std::uint64_t bound, std::uint64_t seed, Tag tag,
                                    std::uint64_t a = 0, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
  return keyed_u64(seed, tag, a, b, c) % bound;
}

// Small sequential generator for Monte-Carlo style loops in tests and
// generators where a stateful source is more natural than keyed decisions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace maxdicut::rng
