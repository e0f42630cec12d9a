#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "seqgc/rational.hpp"

namespace seqgc {

struct GcCodeOptions {
  // enumerate all size-s straggler sets when their count is at most this cap
  std::size_t enumerate_cap = 10000;
  // number of sampled straggler sets checked above the cap
  int sample_count = 100;
  int max_attempts = 8;
  double residual_tol = 1e-8;
};

// (n,s) cyclic-support gradient code. Row i carries coefficients on chunks
// {i, i+1, ..., i+s} mod n; the all-ones vector lies in the row span of every
// (n-s)-subset of rows, so any n-s workers recover the full gradient.
// Construction draws seeded random coefficients constrained to a common
// (n-s)-dimensional null space containing all-ones, verifies the spanning
// property on enumerated or sampled straggler sets, and retries with a fresh
// seed on the (measure-zero) failure paths.
class GcCode {
 public:
  static GcCode build(int n, int s, std::uint64_t seed, const GcCodeOptions& opts = {});

  int n() const { return n_; }
  int s() const { return s_; }
  Rat load() const { return Rat(s_ + 1, n_); }

  // chunks assigned to a worker, in cyclic order starting at the worker index
  std::vector<int> support(int worker) const;
  double coefficient(int worker, int chunk) const { return coeff_(worker, chunk); }
  const Eigen::MatrixXd& coefficients() const { return coeff_; }

 private:
  GcCode(int n, int s, Eigen::MatrixXd coeff);

  int n_, s_;
  Eigen::MatrixXd coeff_;  // n x n
};

struct WorkerResult {
  int worker;
  Eigen::VectorXd value;
};

struct DecodeOutput {
  Eigen::VectorXd gradient;
  // relative residual of the combination-coefficient solve
  double residual = 0.0;
};

// Least-squares recovery of the full gradient from at least n-s worker results.
DecodeOutput gc_decode(const GcCode& code, const std::vector<WorkerResult>& results,
                       double residual_tol = 1e-8);

// Replication variant, valid when (s+1) | n: workers are partitioned into
// n/(s+1) groups, every member of group g returns the plain sum of the chunk
// gradients [g(s+1) : (g+1)(s+1)-1], and decoding sums one representative per
// group. Survives any round in which each group keeps one non-straggler.
class GcRepCode {
 public:
  static GcRepCode build(int n, int s);

  int n() const { return n_; }
  int s() const { return s_; }
  int groups() const { return n_ / (s_ + 1); }
  Rat load() const { return Rat(s_ + 1, n_); }

  int group_of(int worker) const { return worker / (s_ + 1); }
  std::vector<int> group_chunks(int group) const;
  std::vector<int> support(int worker) const { return group_chunks(group_of(worker)); }

 private:
  GcRepCode(int n, int s) : n_(n), s_(s) {}

  int n_, s_;
};

struct RepDecodeOutput {
  Eigen::VectorXd gradient;
  std::vector<int> representatives;  // worker picked per group
};

RepDecodeOutput gc_rep_decode(const GcRepCode& code, const std::vector<WorkerResult>& results);

}  // namespace seqgc
