#pragma once

#include <cstdint>

namespace seqgc {

// splitmix64 finalizer. Bit-stable across platforms, unlike <random> distributions,
// which is what makes golden traces reproducible.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Order-sensitive combine for counter-based generation.
inline std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

inline double to_unit(std::uint64_t h) { return double(h >> 11) * 0x1.0p-53; }  // [0,1)

// Small deterministic stream (splitmix64 sequence).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }
  double next_unit() { return to_unit(next_u64()); }  // [0,1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
  // inclusive bounds; modulo bias is irrelevant at the ranges used here
  int uniform_int(int lo, int hi) {
    return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
  }
  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace seqgc
