#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <string>
#include <vector>

#include "seqgc/errors.hpp"
#include "seqgc/rng.hpp"
#include "seqgc/straggler.hpp"

#include "test_util.hpp"

using namespace seqgc;
using namespace seqgc::testutil;

namespace {

std::string temp_path(const char* name) {
  return std::string("seqgc_test_") + name + "_" + std::to_string(::getpid()) + ".csv";
}

}  // namespace

TEST_CASE("pattern stores columns and survives a csv roundtrip") {
  StragglerPattern p(4, 3);
  p.set_column(1, {2, 0});
  p.set(3, 2, true);
  CHECK(p.at(0, 1));
  CHECK(!p.at(1, 1));
  CHECK(p.column_sum(1) == 2);
  CHECK(p.stragglers(1) == std::vector<int>{0, 2});
  CHECK(p.stragglers(3).empty());

  const std::string path = temp_path("pattern");
  p.write_csv(path);
  const StragglerPattern q = StragglerPattern::read_csv(path);
  REQUIRE(q.n() == 4);
  REQUIRE(q.rounds() == 3);
  for (int t = 1; t <= 3; ++t)
    for (int i = 0; i < 4; ++i) CHECK(q.at(i, t) == p.at(i, t));
  std::remove(path.c_str());

  p.clear_column(1);
  CHECK(p.column_sum(1) == 0);
  CHECK_THROWS_AS((void)p.at(0, 0), ParamError);
  CHECK_THROWS_AS((void)p.at(4, 1), ParamError);
}

TEST_CASE("profile csv roundtrip and column extrema") {
  DelayProfile d(3, 2, 1.5);
  d.set(1, 1, 0.25);
  d.set(2, 2, 9.0);
  CHECK(d.column_min(1) == 0.25);
  CHECK(d.column_max(1) == 1.5);
  CHECK(d.column_max(2) == 9.0);
  CHECK(d.at_cyclic(2, 4) == 9.0);  // round 4 wraps to round 2

  const std::string path = temp_path("profile");
  d.write_csv(path);
  const DelayProfile e = DelayProfile::read_csv(path);
  REQUIRE(e.n() == 3);
  REQUIRE(e.rounds() == 2);
  for (int t = 1; t <= 2; ++t)
    for (int i = 0; i < 3; ++i) CHECK(e.at(i, t) == doctest::Approx(d.at(i, t)));
  std::remove(path.c_str());

  CHECK_THROWS_AS(d.set(0, 1, 0.0), ParamError);
  CHECK_THROWS_AS(d.set(0, 1, -1.0), ParamError);
}

TEST_CASE("bursty checker enforces distinct count and burst span per window") {
  const BurstyModel m{2, 3, 1};

  StragglerPattern ok(3, 5);
  ok.set(0, 2, true);
  ok.set(0, 3, true);  // burst of length B=2
  CHECK(bool(check_bursty(ok, m)));

  StragglerPattern gap(3, 5);
  gap.set(0, 2, true);
  gap.set(0, 4, true);  // window [2:4]: straggles 2 and 4, span exceeds B-1
  const CheckResult r1 = check_bursty(gap, m);
  CHECK(!r1.ok);
  CHECK(!r1.detail.empty());

  StragglerPattern crowd(3, 5);
  crowd.set(0, 2, true);
  crowd.set(1, 3, true);  // two distinct stragglers in window [1:3], lambda=1
  CHECK(!check_bursty(crowd, m).ok);

  // offline windows must be fully contained: a 2-round pattern has none for W=3
  StragglerPattern tiny(3, 2);
  tiny.set(0, 1, true);
  tiny.set(1, 2, true);
  CHECK(bool(check_bursty(tiny, m)));
}

TEST_CASE("arbitrary checker counts per-worker straggles per window") {
  const ArbitraryModel m{1, 3, 2};

  StragglerPattern ok(4, 6);
  ok.set(0, 1, true);
  ok.set(1, 2, true);
  ok.set(0, 4, true);  // worker 0 twice, but never twice in one 3-window
  CHECK(bool(check_arbitrary(ok, m)));

  StragglerPattern bad(4, 6);
  bad.set(0, 2, true);
  bad.set(0, 3, true);  // N=1 exceeded inside window [1:3]
  CHECK(!check_arbitrary(bad, m).ok);

  StragglerPattern crowd(4, 6);
  crowd.set(0, 2, true);
  crowd.set(1, 3, true);
  crowd.set(2, 4, true);  // window [2:4] has 3 distinct stragglers, lambda=2
  CHECK(!check_arbitrary(crowd, m).ok);
}

TEST_CASE("per-round checker bounds column sums") {
  StragglerPattern p(4, 3);
  p.set_column(2, {0, 3});
  CHECK(bool(check_per_round(p, PerRoundModel{2})));
  CHECK(!check_per_round(p, PerRoundModel{1}).ok);
  CHECK(bool(check_model(p, StragglerModel{PerRoundModel{2}})));
}

TEST_CASE("model validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate_model(BurstyModel{0, 2, 1}, 4), ParamError);
  CHECK_THROWS_AS(validate_model(BurstyModel{3, 2, 1}, 4), ParamError);
  CHECK_THROWS_AS(validate_model(BurstyModel{1, 2, 5}, 4), ParamError);
  CHECK_THROWS_AS(validate_model(ArbitraryModel{3, 2, 1}, 4), ParamError);
  CHECK_THROWS_AS(validate_model(PerRoundModel{4}, 4), ParamError);
  CHECK_THROWS_AS(validate_model(PerRoundModel{-1}, 4), ParamError);
  CHECK_NOTHROW(validate_model(BurstyModel{2, 2, 4}, 4));
  CHECK_NOTHROW(validate_model(PerRoundModel{0}, 4));
}

TEST_CASE("prefix conformance clips windows instead of skipping them") {
  // Startup case: two different workers straggle in rounds 1 and 2. The only
  // fully contained 3-window does not exist yet, so the offline check passes,
  // but the clipped window [1:2] already holds two distinct stragglers.
  const BurstyModel m{1, 3, 1};
  StragglerPattern p(3, 2);
  p.set(0, 1, true);
  p.set(1, 2, true);
  CHECK(bool(check_bursty(p, m)));
  CHECK(prefix_conforms(p, StragglerModel{m}, 1));
  CHECK(!prefix_conforms(p, StragglerModel{m}, 2));

  CHECK(column_extension_ok(p, StragglerModel{m}, 1));
  CHECK(!column_extension_ok(p, StragglerModel{m}, 2));
  p.clear_column(2);
  CHECK(column_extension_ok(p, StragglerModel{m}, 2));  // empty columns always fit
}

TEST_CASE("offline-conforming patterns are prefix-conforming at every cut") {
  Rng rng(0xabcdef);
  const BurstyModel bm{2, 5, 2};
  const ArbitraryModel am{2, 4, 3};
  for (int rep = 0; rep < 20; ++rep) {
    const StragglerPattern pb = random_bursty_conforming(6, 18, bm, rng);
    REQUIRE(bool(check_bursty(pb, bm)));
    for (int t = 0; t <= pb.rounds(); ++t) CHECK(prefix_conforms(pb, StragglerModel{bm}, t));

    const StragglerPattern pa = random_arbitrary_conforming(6, 18, am, rng);
    REQUIRE(bool(check_arbitrary(pa, am)));
    for (int t = 0; t <= pa.rounds(); ++t) CHECK(prefix_conforms(pa, StragglerModel{am}, t));
  }
}

TEST_CASE("column extension agrees with recomputing the whole prefix") {
  Rng rng(0x51ab);
  const StragglerModel m{BurstyModel{2, 4, 2}};
  for (int rep = 0; rep < 50; ++rep) {
    StragglerPattern p(5, 12);
    bool prefix_ok = true;
    for (int t = 1; t <= p.rounds(); ++t) {
      const int k = rng.uniform_int(0, 3);
      p.set_column(t, pick_distinct(5, k, rng));
      if (prefix_ok) {
        const bool step = column_extension_ok(p, m, t);
        CHECK(step == prefix_conforms(p, m, t));
        prefix_ok = step;
        if (!prefix_ok) break;
      }
    }
  }
}

TEST_CASE("periodic generators realize their own models") {
  const BurstyModel bm{2, 5, 3};
  const StragglerPattern pb = gen_periodic_bursty(6, 30, bm);
  CHECK(bool(check_bursty(pb, bm)));
  // worst case: the burst workers straggle B rounds out of every W-1+B
  CHECK(pb.at(0, 1));
  CHECK(pb.at(0, 2));
  CHECK(!pb.at(0, 3));
  CHECK(pb.at(0, 7));  // period W-1+B = 6
  CHECK(!pb.at(3, 1));
  // tightness: growing any parameter downward breaks conformance
  CHECK(!check_bursty(pb, BurstyModel{1, 5, 3}).ok);
  CHECK(!check_bursty(pb, BurstyModel{2, 5, 2}).ok);

  const BurstyModel full{3, 3, 2};
  const StragglerPattern pf = gen_periodic_bursty(4, 12, full);
  CHECK(bool(check_bursty(pf, full)));
  for (int t = 1; t <= 12; ++t) CHECK(pf.column_sum(t) == 2);  // B == W straggles always

  const ArbitraryModel am{2, 4, 2};
  const StragglerPattern pa = gen_periodic_arbitrary(6, 24, am);
  CHECK(bool(check_arbitrary(pa, am)));
  CHECK(pa.at(0, 1));
  CHECK(pa.at(0, 2));
  CHECK(!pa.at(0, 3));
  CHECK(pa.at(0, 5));
  CHECK(!check_arbitrary(pa, ArbitraryModel{1, 4, 2}).ok);
}

TEST_CASE("gilbert-elliott generator starts clean and tracks its stationary rate") {
  const StragglerPattern a = gen_ge(64, 200, 0.3, 0.2, 77);
  const StragglerPattern b = gen_ge(64, 200, 0.3, 0.2, 77);
  for (int t = 1; t <= 200; ++t) CHECK(a.column_sum(t) == b.column_sum(t));
  CHECK(a.column_sum(1) == 0);  // everyone starts in the normal state

  long total = 0;
  for (int t = 50; t <= 200; ++t) total += a.column_sum(t);
  const double frac = double(total) / (64.0 * 151.0);
  CHECK(frac == doctest::Approx(0.2 / 0.5).epsilon(0.15));

  const StragglerPattern c = gen_ge(64, 200, 0.3, 0.2, 78);
  bool differs = false;
  for (int t = 1; t <= 200 && !differs; ++t) differs = c.column_sum(t) != a.column_sum(t);
  CHECK(differs);

  CHECK_THROWS_AS((void)gen_ge(4, 10, 1.5, 0.1, 1), ParamError);
}

TEST_CASE("profile thresholding flags workers above (1+mu) times the round minimum") {
  DelayProfile d(3, 2);
  d.set(0, 1, 1.0);
  d.set(1, 1, 1.4);
  d.set(2, 1, 1.6);
  d.set(0, 2, 2.0);
  d.set(1, 2, 2.0);
  d.set(2, 2, 5.0);
  const StragglerPattern p = pattern_from_profile(d, 0.5);
  CHECK(!p.at(0, 1));
  CHECK(!p.at(1, 1));  // 1.4 <= 1.5, boundary is exclusive
  CHECK(p.at(2, 1));
  CHECK(p.stragglers(2) == std::vector<int>{2});
  CHECK_THROWS_AS((void)pattern_from_profile(d, -0.1), ParamError);
}
