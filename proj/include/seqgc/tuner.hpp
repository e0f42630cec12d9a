#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqgc/gc_code.hpp"
#include "seqgc/rational.hpp"
#include "seqgc/simulator.hpp"
#include "seqgc/straggler.hpp"

namespace seqgc {

// One measured (per-worker load, per-round seconds) point.
struct FitSample {
  double load = 0.0;
  double time = 0.0;
};

// Least-squares line time = intercept + alpha * load.
struct SlopeFit {
  double alpha = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
SlopeFit fit_slope(const std::vector<FitSample>& samples);

// Shift every profile entry by alpha * (candidate_load - baseline_load): the
// profile was measured while workers carried the baseline load, a candidate
// scheme changes per-round work linearly in its load. Entries must stay
// positive.
DelayProfile adjust_profile(const DelayProfile& profile, double alpha, double candidate_load,
                            double baseline_load);

struct TuneConfig {
  int n = 0;
  int jobs = 8;
  int dim = 4;
  double mu = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  DelayProfile profile{1, 1};  // measured at the uncoded baseline load 1/n
  std::vector<SchemeSpec> candidates;
  GcCodeOptions code_options;
  int threads = 1;
};

struct TuneEntry {
  SchemeSpec spec;
  Rat load;
  double runtime = 0.0;
  int waitout_count = 0;
  bool ok = false;
  std::string error;
};

struct TuneResult {
  std::vector<TuneEntry> entries;  // in candidate order
  int best = -1;                   // index into entries
  double alpha = 0.0;
};

// Estimated wall time for one candidate: a timed run on the load-adjusted
// profile with the scheme's design model enforced by wait-out.
struct EstimateResult {
  double runtime = 0.0;
  int waitout_count = 0;
};
EstimateResult estimate_runtime(const SchemeSpec& spec, const TuneConfig& config,
                                std::uint64_t candidate_seed);

// Per-candidate simulation seed used by grid_search; depends only on the
// tuner seed and the candidate itself, never on grid order.
std::uint64_t tune_candidate_seed(const TuneConfig& config, const SchemeSpec& spec);

// Evaluate every candidate and pick the fastest; ties go to the smaller load,
// then lexicographically smaller (B, W, lambda), then s, then scheme order.
// Candidate results do not depend on grid order or thread count.
TuneResult grid_search(const TuneConfig& config);

}  // namespace seqgc
