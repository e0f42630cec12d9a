#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "seqgc/rng.hpp"
#include "seqgc/simulator.hpp"
#include "seqgc/straggler.hpp"

namespace seqgc::testutil {

inline std::vector<int> pick_distinct(int n, int k, Rng& rng) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = rng.uniform_int(i, n - 1);
    std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
  }
  pool.resize(std::size_t(k));
  return pool;
}

// Episodes of at most lambda workers bursting for at most B rounds, with
// episode starts at least W+B-1 apart so no W-window sees two episodes.
inline StragglerPattern random_bursty_conforming(int n, int rounds, const BurstyModel& m,
                                                 Rng& rng) {
  StragglerPattern p(n, rounds);
  int t = 1 + rng.uniform_int(0, m.W);
  while (t <= rounds) {
    const int k = rng.uniform_int(0, m.lambda);
    for (int w : pick_distinct(n, k, rng)) {
      const int b = rng.uniform_int(1, m.B);
      for (int r = t; r < t + b && r <= rounds; ++r) p.set(w, r, true);
    }
    t += m.W + m.B - 1 + rng.uniform_int(0, 2);
  }
  return p;
}

// Episodes of at most lambda workers, each straggling at most N arbitrary
// rounds inside a W-round span; starts at least 2W-1 apart.
inline StragglerPattern random_arbitrary_conforming(int n, int rounds, const ArbitraryModel& m,
                                                    Rng& rng) {
  StragglerPattern p(n, rounds);
  int t = 1 + rng.uniform_int(0, m.W);
  while (t <= rounds) {
    const int k = rng.uniform_int(0, m.lambda);
    for (int w : pick_distinct(n, k, rng)) {
      const int c = rng.uniform_int(1, m.N);
      for (int offset : pick_distinct(m.W, std::min(c, m.W), rng)) {
        const int r = t + offset;
        if (r <= rounds) p.set(w, r, true);
      }
    }
    t += 2 * m.W - 1 + rng.uniform_int(0, 2);
  }
  return p;
}

inline StragglerPattern random_per_round_conforming(int n, int rounds, int s, Rng& rng) {
  StragglerPattern p(n, rounds);
  for (int t = 1; t <= rounds; ++t) {
    const int k = rng.uniform_int(0, s);
    p.set_column(t, pick_distinct(n, k, rng));
  }
  return p;
}

// Straggler cells get `slow`, the rest `base` plus a small deterministic
// jitter that keeps base workers clearly below slow ones.
inline DelayProfile profile_from_pattern(const StragglerPattern& p, double base, double slow,
                                         double jitter, std::uint64_t seed) {
  DelayProfile profile(p.n(), p.rounds());
  for (int t = 1; t <= p.rounds(); ++t)
    for (int i = 0; i < p.n(); ++i) {
      if (p.at(i, t)) {
        profile.set(i, t, slow);
      } else {
        const double u = to_unit(absorb(absorb(seed, std::uint64_t(t)), std::uint64_t(i)));
        profile.set(i, t, base * (1.0 + jitter * u));
      }
    }
  return profile;
}

inline int max_delay(const SimReport& report) {
  int d = 0;
  for (int job = 1; job <= report.jobs; ++job)
    d = std::max(d, report.delay[std::size_t(job)]);
  return d;
}

}  // namespace seqgc::testutil
