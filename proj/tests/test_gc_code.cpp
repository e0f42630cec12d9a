#include <doctest.h>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "seqgc/errors.hpp"
#include "seqgc/gc_code.hpp"
#include "seqgc/gradient_oracle.hpp"

using namespace seqgc;

namespace {

Eigen::VectorXd worker_value(const GcCode& code, const GradientOracle& oracle, int job,
                             int worker) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle.dim());
  for (int c : code.support(worker)) v += code.coefficient(worker, c) * oracle.chunk_gradient(job, c);
  return v;
}

// every subset of workers whose complement has size <= s recovers the gradient
void check_all_straggler_sets(int n, int s, std::uint64_t seed) {
  const GcCode code = GcCode::build(n, s, seed);
  const GradientOracle oracle(absorb(seed, 0x5eedull), 3);
  const Eigen::VectorXd expected = oracle.total_gradient(7, n);

  std::vector<Eigen::VectorXd> values;
  values.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) values.push_back(worker_value(code, oracle, 7, i));

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int stragglers = n - __builtin_popcount(mask);
    if (stragglers > s) continue;
    std::vector<WorkerResult> results;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) results.push_back({i, values[std::size_t(i)]});
    const DecodeOutput out = gc_decode(code, results);
    CHECK(out.residual <= 1e-8);
    CHECK((out.gradient - expected).norm() <= 1e-8 * expected.norm());
  }
}

}  // namespace

TEST_CASE("gc code has cyclic supports with unit pivot coefficients") {
  const GcCode code = GcCode::build(7, 3, 11);
  REQUIRE(code.n() == 7);
  REQUIRE(code.s() == 3);
  CHECK(code.load() == Rat(4, 7));
  for (int i = 0; i < 7; ++i) {
    const std::vector<int> sup = code.support(i);
    REQUIRE(sup.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(sup[std::size_t(k)] == (i + k) % 7);
    CHECK(code.coefficient(i, i) == doctest::Approx(1.0));
    for (int c = 0; c < 7; ++c) {
      const bool in_support = (c - i + 7) % 7 <= 3;
      if (!in_support) CHECK(code.coefficient(i, c) == 0.0);
    }
  }
}

TEST_CASE("gc decode recovers the exact gradient for every straggler set") {
  check_all_straggler_sets(5, 2, 101);
  check_all_straggler_sets(6, 3, 202);
}

TEST_CASE("gc decode with s = 0 degenerates to plain summation") {
  const GcCode code = GcCode::build(3, 0, 5);
  const GradientOracle oracle(99, 2);
  std::vector<WorkerResult> results;
  for (int i = 0; i < 3; ++i) results.push_back({i, worker_value(code, oracle, 1, i)});
  const DecodeOutput out = gc_decode(code, results);
  CHECK((out.gradient - oracle.total_gradient(1, 3)).norm() <= 1e-12);
}

TEST_CASE("gc decode rejects fewer than n-s results") {
  const GcCode code = GcCode::build(5, 2, 7);
  const GradientOracle oracle(1, 2);
  std::vector<WorkerResult> results;
  for (int i = 0; i < 2; ++i) results.push_back({i, worker_value(code, oracle, 1, i)});
  CHECK_THROWS_AS((void)gc_decode(code, results), DecodeError);
}

TEST_CASE("gc construction is seed-deterministic") {
  const GcCode a = GcCode::build(6, 2, 42);
  const GcCode b = GcCode::build(6, 2, 42);
  CHECK(a.coefficients() == b.coefficients());
  const GcCode c = GcCode::build(6, 2, 43);
  CHECK(a.coefficients() != c.coefficients());
}

TEST_CASE("gc construction validates parameters") {
  CHECK_THROWS_AS((void)GcCode::build(0, 0, 1), ParamError);
  CHECK_THROWS_AS((void)GcCode::build(4, 4, 1), ParamError);
  CHECK_THROWS_AS((void)GcCode::build(4, -1, 1), ParamError);
}

TEST_CASE("replicated code partitions workers into chunk groups") {
  const GcRepCode code = GcRepCode::build(6, 2);
  CHECK(code.groups() == 2);
  CHECK(code.load() == Rat(3, 6));
  CHECK(code.group_of(0) == 0);
  CHECK(code.group_of(2) == 0);
  CHECK(code.group_of(3) == 1);
  CHECK(code.group_chunks(0) == std::vector<int>{0, 1, 2});
  CHECK(code.group_chunks(1) == std::vector<int>{3, 4, 5});
  CHECK(code.support(4) == std::vector<int>{3, 4, 5});

  CHECK_THROWS_AS((void)GcRepCode::build(7, 1), ParamError);
  CHECK_THROWS_AS((void)GcRepCode::build(6, 6), ParamError);
}

TEST_CASE("replicated decode needs one survivor per group") {
  const GcRepCode code = GcRepCode::build(6, 2);
  const GradientOracle oracle(17, 3);
  const Eigen::VectorXd expected = oracle.total_gradient(4, 6);

  auto group_sum = [&](int worker) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
    for (int c : code.support(worker)) v += oracle.chunk_gradient(4, c);
    return v;
  };

  // stragglers {1,2,3,5} leave one worker alive in each group
  std::vector<WorkerResult> results = {{0, group_sum(0)}, {4, group_sum(4)}};
  const RepDecodeOutput out = gc_rep_decode(code, results);
  CHECK((out.gradient - expected).norm() <= 1e-12);
  CHECK(out.representatives == std::vector<int>{0, 4});

  // group 1 entirely missing
  std::vector<WorkerResult> partial = {{0, group_sum(0)}, {1, group_sum(1)}};
  CHECK_THROWS_AS((void)gc_rep_decode(code, partial), DecodeError);
}
