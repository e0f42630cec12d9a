#include <doctest.h>

#include <algorithm>
#include <vector>

#include "seqgc/errors.hpp"
#include "seqgc/tuner.hpp"

using namespace seqgc;

namespace {

SchemeSpec gc(int n, int s) {
  SchemeSpec spec;
  spec.kind = SchemeKind::Gc;
  spec.n = n;
  spec.s = s;
  return spec;
}

SchemeSpec m_sgc(int n, int B, int W, int lambda) {
  SchemeSpec spec;
  spec.kind = SchemeKind::MSgc;
  spec.n = n;
  spec.B = B;
  spec.W = W;
  spec.lambda = lambda;
  return spec;
}

SchemeSpec no_coding(int n) {
  SchemeSpec spec;
  spec.kind = SchemeKind::NoCoding;
  spec.n = n;
  return spec;
}

// flat unit-time profile with worker 3 slow every second round and a
// two-straggler burst in round 5
DelayProfile spiky_profile() {
  DelayProfile p(4, 8);
  for (int t = 2; t <= 8; t += 2) p.set(3, t, 9.0);
  p.set(2, 5, 9.0);
  p.set(3, 5, 9.0);
  return p;
}

bool better_entry(const TuneEntry& a, const TuneEntry& b) {
  if (a.runtime != b.runtime) return a.runtime < b.runtime;
  if (a.load != b.load) return a.load < b.load;
  if (a.spec.B != b.spec.B) return a.spec.B < b.spec.B;
  if (a.spec.W != b.spec.W) return a.spec.W < b.spec.W;
  if (a.spec.lambda != b.spec.lambda) return a.spec.lambda < b.spec.lambda;
  if (a.spec.s != b.spec.s) return a.spec.s < b.spec.s;
  return int(a.spec.kind) < int(b.spec.kind);
}

bool same_spec(const SchemeSpec& a, const SchemeSpec& b) {
  return a.kind == b.kind && a.n == b.n && a.s == b.s && a.B == b.B && a.W == b.W &&
         a.lambda == b.lambda;
}

}  // namespace

TEST_CASE("slope fit is exact on noiseless lines") {
  std::vector<FitSample> samples;
  for (double load : {0.1, 0.25, 0.5, 0.75}) samples.push_back({load, 2.0 + 5.0 * load});
  const SlopeFit fit = fit_slope(samples);
  CHECK(fit.alpha == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS((void)fit_slope({}), ParamError);
  CHECK_THROWS_AS((void)fit_slope({{0.5, 1.0}}), ParamError);
  CHECK_THROWS_AS((void)fit_slope({{0.5, 1.0}, {0.5, 2.0}}), ParamError);
}

TEST_CASE("profile adjustment shifts by slope times load delta") {
  DelayProfile p(2, 2);
  p.set(0, 1, 1.0);
  p.set(1, 1, 2.0);
  p.set(0, 2, 3.0);
  p.set(1, 2, 4.0);

  const DelayProfile q = adjust_profile(p, 2.0, 0.75, 0.25);  // shift +1
  CHECK(q.at(0, 1) == doctest::Approx(2.0));
  CHECK(q.at(1, 2) == doctest::Approx(5.0));

  const DelayProfile same = adjust_profile(p, 2.0, 0.25, 0.25);
  CHECK(same.at(1, 1) == doctest::Approx(2.0));

  CHECK_THROWS_AS((void)adjust_profile(p, 5.0, 0.1, 0.5), ParamError);  // entries go negative
}

TEST_CASE("runtime estimate on a flat profile is the closed-form product") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.jobs = 6;
  cfg.dim = 2;
  cfg.mu = 0.5;
  cfg.alpha = 2.0;
  cfg.profile = DelayProfile(4, 6);  // all ones

  // gc s=1: load 1/2, shift 2*(1/2-1/4)=0.5, six rounds of 1.5*1.5
  const EstimateResult gc1 = estimate_runtime(gc(4, 1), cfg, 7);
  CHECK(gc1.runtime == doctest::Approx(13.5));
  CHECK(gc1.waitout_count == 0);

  // no-coding: raw profile, every round costs the column max 1.0
  const EstimateResult noc = estimate_runtime(no_coding(4), cfg, 7);
  CHECK(noc.runtime == doctest::Approx(6.0));
}

TEST_CASE("grid search winner matches an independent re-evaluation argmin") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.jobs = 8;
  cfg.dim = 2;
  cfg.mu = 0.5;
  cfg.alpha = 1.0;
  cfg.seed = 2024;
  cfg.profile = spiky_profile();
  cfg.candidates = {gc(4, 0), gc(4, 1), gc(4, 2), gc(4, 3), m_sgc(4, 1, 2, 2), no_coding(4)};

  const TuneResult result = grid_search(cfg);
  REQUIRE(result.entries.size() == 6);

  // every entry must equal a from-scratch estimate under the same seed
  int best = -1;
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const TuneEntry& e = result.entries[i];
    REQUIRE(e.ok);
    const EstimateResult redo =
        estimate_runtime(e.spec, cfg, tune_candidate_seed(cfg, e.spec));
    CHECK(e.runtime == redo.runtime);
    CHECK(e.waitout_count == redo.waitout_count);
    if (best < 0 || better_entry(e, result.entries[std::size_t(best)])) best = int(i);
  }
  CHECK(result.best == best);

  // hand-computed landscape: s=2 absorbs every round without waiting
  CHECK(same_spec(result.entries[std::size_t(result.best)].spec, gc(4, 2)));
  CHECK(result.entries[2].runtime == doctest::Approx(18.0));
  CHECK(result.entries[1].runtime == doctest::Approx(22.375));
  CHECK(result.entries[1].waitout_count == 1);
  CHECK(result.entries[4].runtime == doctest::Approx(22.625));
  CHECK(result.entries[4].waitout_count == 1);
  CHECK(result.entries[5].runtime == doctest::Approx(48.0));
  CHECK(result.entries[0].runtime == doctest::Approx(49.5));
  CHECK(result.entries[0].waitout_count == 5);
}

TEST_CASE("grid search is invariant to candidate order and thread count") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.jobs = 8;
  cfg.dim = 2;
  cfg.mu = 0.5;
  cfg.alpha = 1.0;
  cfg.seed = 11;
  cfg.profile = spiky_profile();
  cfg.candidates = {gc(4, 0), gc(4, 1), gc(4, 2), m_sgc(4, 1, 2, 2), no_coding(4)};

  const TuneResult base = grid_search(cfg);

  TuneConfig threaded = cfg;
  threaded.threads = 4;
  const TuneResult par = grid_search(threaded);
  REQUIRE(par.entries.size() == base.entries.size());
  for (std::size_t i = 0; i < base.entries.size(); ++i) {
    CHECK(par.entries[i].runtime == base.entries[i].runtime);
    CHECK(par.entries[i].waitout_count == base.entries[i].waitout_count);
  }
  CHECK(par.best == base.best);

  TuneConfig shuffled = cfg;
  std::reverse(shuffled.candidates.begin(), shuffled.candidates.end());
  const TuneResult rev = grid_search(shuffled);
  for (std::size_t i = 0; i < base.entries.size(); ++i) {
    const TuneEntry& fwd = base.entries[i];
    const TuneEntry& bwd = rev.entries[base.entries.size() - 1 - i];
    CHECK(same_spec(fwd.spec, bwd.spec));
    CHECK(fwd.runtime == bwd.runtime);
  }
  CHECK(same_spec(rev.entries[std::size_t(rev.best)].spec,
                  base.entries[std::size_t(base.best)].spec));
}

TEST_CASE("exact ties fall to the lexicographically smaller parameters") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.jobs = 4;
  cfg.dim = 2;
  cfg.mu = 0.5;
  cfg.alpha = 1.0;
  cfg.profile = DelayProfile(4, 6);  // flat: both candidates run identically
  cfg.candidates = {m_sgc(4, 2, 3, 0), m_sgc(4, 1, 4, 0)};

  // both have load 1/4 and deadline 3, so runtimes tie exactly
  const TuneResult result = grid_search(cfg);
  CHECK(result.entries[0].runtime == result.entries[1].runtime);
  CHECK(same_spec(result.entries[std::size_t(result.best)].spec, m_sgc(4, 1, 4, 0)));

  std::swap(cfg.candidates[0], cfg.candidates[1]);
  const TuneResult again = grid_search(cfg);
  CHECK(same_spec(again.entries[std::size_t(again.best)].spec, m_sgc(4, 1, 4, 0)));
}

TEST_CASE("infeasible candidates are reported but skipped") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.jobs = 2;
  cfg.dim = 2;
  cfg.profile = DelayProfile(4, 4);
  cfg.candidates = {gc(4, 4), gc(4, 1)};  // s = n is invalid

  const TuneResult result = grid_search(cfg);
  CHECK(!result.entries[0].ok);
  CHECK(!result.entries[0].error.empty());
  CHECK(result.entries[1].ok);
  CHECK(result.best == 1);

  cfg.candidates = {gc(4, 4)};
  CHECK_THROWS_AS((void)grid_search(cfg), ParamError);  // nothing feasible
}

TEST_CASE("grid search validates its configuration") {
  TuneConfig cfg;
  cfg.n = 4;
  cfg.profile = DelayProfile(4, 4);
  CHECK_THROWS_AS((void)grid_search(cfg), ParamError);  // no candidates

  cfg.candidates = {gc(6, 1)};
  CHECK_THROWS_AS((void)grid_search(cfg), ParamError);  // candidate n mismatch

  cfg.candidates = {gc(4, 1)};
  cfg.profile = DelayProfile(3, 4);
  CHECK_THROWS_AS((void)grid_search(cfg), ParamError);  // profile n mismatch

  cfg.profile = DelayProfile(4, 4);
  cfg.alpha = -1.0;
  CHECK_THROWS_AS((void)grid_search(cfg), ParamError);
}
