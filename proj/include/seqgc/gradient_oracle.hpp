#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "seqgc/rng.hpp"

namespace seqgc {

// Deterministic stand-in for per-chunk partial gradients: (job, chunk, component)
// hashes to a value in [-1, 1). Counter-based, so any worker or checker can
// regenerate any entry independently of evaluation order.
class GradientOracle {
 public:
  GradientOracle(std::uint64_t seed, int dim) : seed_(seed), dim_(dim) {}

  int dim() const { return dim_; }

  double component(int job, int chunk, int k) const {
    std::uint64_t h = absorb(absorb(absorb(seed_, std::uint64_t(job)), std::uint64_t(chunk)),
                             std::uint64_t(k));
    return 2.0 * to_unit(h) - 1.0;
  }

  Eigen::VectorXd chunk_gradient(int job, int chunk) const {
    Eigen::VectorXd g(dim_);
    for (int k = 0; k < dim_; ++k) g[k] = component(job, chunk, k);
    return g;
  }

  // Reference value for a completed job: the plain sum over its chunk universe.
  Eigen::VectorXd total_gradient(int job, int num_chunks) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
    for (int c = 0; c < num_chunks; ++c) g += chunk_gradient(job, c);
    return g;
  }

 private:
  std::uint64_t seed_;
  int dim_;
};

}  // namespace seqgc
