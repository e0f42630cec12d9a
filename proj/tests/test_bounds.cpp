#include <doctest.h>

#include "seqgc/bounds.hpp"
#include "seqgc/errors.hpp"
#include "seqgc/m_sgc.hpp"
#include "seqgc/sr_sgc.hpp"

using namespace seqgc;

TEST_CASE("bursty lower bound matches the closed forms") {
  CHECK(lb_bursty(256, BurstyModel{1, 2, 27}) == Rat(2, 485));
  CHECK(lb_bursty(4, BurstyModel{1, 2, 4}) == Rat(1, 2));
  CHECK(lb_bursty(20, BurstyModel{3, 7, 19}) == Rat(3, 41));
  // B = W degenerates to the per-round form
  CHECK(lb_bursty(6, BurstyModel{3, 3, 2}) == Rat(1, 4));
  CHECK_THROWS_AS((void)lb_bursty(6, BurstyModel{3, 3, 6}), ParamError);  // infinite bound
  CHECK_THROWS_AS((void)lb_bursty(6, BurstyModel{4, 3, 2}), ParamError);
  CHECK_THROWS_AS((void)lb_bursty(6, BurstyModel{1, 2, 7}), ParamError);
  CHECK_THROWS_AS((void)lb_bursty(0, BurstyModel{1, 2, 0}), ParamError);
}

TEST_CASE("arbitrary lower bound matches the closed forms") {
  CHECK(lb_arbitrary(6, ArbitraryModel{1, 3, 2}) == Rat(3, 16));
  CHECK(lb_arbitrary(6, ArbitraryModel{2, 2, 3}) == Rat(1, 3));  // N = W
  CHECK_THROWS_AS((void)lb_arbitrary(6, ArbitraryModel{2, 2, 6}), ParamError);
  CHECK_THROWS_AS((void)lb_arbitrary(6, ArbitraryModel{4, 3, 2}), ParamError);
}

TEST_CASE("the dispatcher reduces per-round models to single-round bursts") {
  CHECK(load_lower_bound(8, StragglerModel{PerRoundModel{3}}) == Rat(1, 5));
  CHECK(load_lower_bound(8, StragglerModel{PerRoundModel{0}}) == Rat(1, 8));
  CHECK(load_lower_bound(256, StragglerModel{BurstyModel{1, 2, 27}}) == Rat(2, 485));
  CHECK(load_lower_bound(6, StragglerModel{ArbitraryModel{1, 3, 2}}) == Rat(3, 16));
  // per-round s covers every round, so it must agree with B = W = 1
  for (int s = 0; s < 8; ++s)
    CHECK(load_lower_bound(8, StragglerModel{PerRoundModel{s}}) ==
          lb_bursty(8, BurstyModel{1, 1, s}));
}

TEST_CASE("bounds shrink with more workers and grow with more stragglers") {
  for (int n = 8; n <= 32; n *= 2) {
    CHECK(lb_bursty(2 * n, BurstyModel{2, 5, 4}) < lb_bursty(n, BurstyModel{2, 5, 4}));
    CHECK(lb_bursty(n, BurstyModel{2, 5, 5}) > lb_bursty(n, BurstyModel{2, 5, 4}));
    const Rat v = lb_bursty(n, BurstyModel{2, 5, 4});
    CHECK(v > Rat(0, 1));
    CHECK(v <= Rat(1, 1));
  }
}

TEST_CASE("memory scheme load meets the bound at the extreme straggler counts") {
  for (int lambda : {19, 20}) {
    const MSgcParams p = derive_m_params(20, 3, 7, lambda);
    CHECK(p.load == lb_bursty(20, BurstyModel{3, 7, lambda}));
  }
  // one notch below the extreme the scheme pays a strict premium
  const MSgcParams q = derive_m_params(20, 3, 7, 18);
  CHECK(q.load > lb_bursty(20, BurstyModel{3, 7, 18}));
}

TEST_CASE("schemes never undercut the bound for their own design model") {
  for (int n : {4, 6, 8}) {
    for (int B = 1; B <= 3; ++B)
      for (int W = B + 1; W <= 5; ++W)
        for (int lambda = 1; lambda <= n; ++lambda) {
          const Rat lb = lb_bursty(n, BurstyModel{B, W, lambda});
          CHECK(derive_m_params(n, B, W, lambda).load >= lb);
          if ((W - 1) % B == 0) {
            const SrSgcParams sr = derive_sr_params(n, B, W, lambda);
            CHECK(sr.load >= lb);
          }
        }
    for (int s = 0; s < n; ++s)
      CHECK(Rat(s + 1, n) >= load_lower_bound(n, StragglerModel{PerRoundModel{s}}));
  }
}
