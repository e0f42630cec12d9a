#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "seqgc/gc_code.hpp"
#include "seqgc/rational.hpp"

namespace seqgc {

// Memory-based scheme keyed by {n, B, W, lambda} with 0 < B < W. Each worker
// runs W-1+B mini-task slots per round; slot j serves job t-j. The first W-1
// slots compute the worker's own uncoded chunks; the trailing B slots either
// compute a coded chunk group (an (n,lambda) code per group) when the worker's
// own chunks for that job all arrived in earlier rounds, or reattempt the
// lowest missing one. Completion deadline T = W-2+B.
struct MSgcParams {
  int n, B, W, lambda;
  int T;            // W-2+B
  int slots;        // W-1+B
  int d1_chunks;    // (W-1)n uncoded chunks
  int data_chunks;  // chunks carrying data: (W-1+B)n, or (W-1)n when lambda=n
  Rat d1_chunk_size;
  Rat d2_chunk_size;  // 0 when lambda=n
  Rat load;

  bool has_coded() const { return lambda < n; }
  int d1_owner(int chunk) const { return chunk / (W - 1); }
};

MSgcParams derive_m_params(int n, int B, int W, int lambda);

// chunks [i(W-1) : (i+1)(W-1)-1]
std::vector<int> m_d1_chunks(const MSgcParams& p, int worker);
// global ids of the lambda+1 group-g chunks a worker stores (cyclic window)
std::vector<int> m_d2_chunks(const MSgcParams& p, int worker, int group);
// replication placement: the group-g chunks of the worker's replication group
std::vector<int> m_rep_d2_chunks(const MSgcParams& p, int worker, int group);

enum class MiniTaskKind { SingleGrad, Coded, Trivial };

struct MiniTask {
  int worker;
  int slot;  // j in [0 : W-2+B]
  MiniTaskKind kind;
  int job;         // t - slot
  int chunk = -1;  // SingleGrad: global uncoded chunk id
  int group = -1;  // Coded: trailing-segment group in [0 : B-1]
};

// Receipt state per job: uncoded chunks by chunk id, coded results by
// (group, worker). "Received" always means delivered in an earlier round.
class MLedger {
 public:
  MLedger(const MSgcParams& p, int jobs);

  void record_d1(int job, int chunk, Eigen::VectorXd value);
  void record_coded(int job, int group, int worker, Eigen::VectorXd value);

  bool d1_received(int job, int chunk) const;
  int d1_count(int job) const;
  bool all_d1_received(int job) const;
  const Eigen::VectorXd& d1_value(int job, int chunk) const;

  bool coded_received(int job, int group, int worker) const;
  int coded_count(int job, int group) const;
  std::vector<WorkerResult> coded_results(int job, int group) const;

 private:
  std::size_t d1_idx(int job, int chunk) const;
  std::size_t coded_idx(int job, int group, int worker) const;

  int n_, jobs_, d1_chunks_, groups_;
  std::vector<std::uint8_t> d1_flags_, coded_flags_;
  std::vector<int> d1_counts_, coded_counts_;
  std::vector<Eigen::VectorXd> d1_values_, coded_values_;
};

// All n * (W-1+B) mini-tasks of round t, worker-major, slots in order.
std::vector<MiniTask> m_assign_round(const MSgcParams& p, const MLedger& ledger, int t, int jobs);

struct MScheme {
  MSgcParams params;
  std::vector<GcCode> group_codes;  // one (n,lambda) code per trailing group; empty when lambda=n
};

struct MRepScheme {
  MSgcParams params;
  GcRepCode group_code;  // requires (lambda+1) | n
};

MScheme make_m_scheme(int n, int B, int W, int lambda, std::uint64_t seed,
                      const GcCodeOptions& opts = {});
MRepScheme make_m_rep_scheme(int n, int B, int W, int lambda);

bool m_job_decodable(const MSgcParams& p, const MLedger& ledger, int job);
bool m_rep_job_decodable(const MSgcParams& p, const MLedger& ledger, int job);

struct MDecodeOutput {
  Eigen::VectorXd gradient;
  double residual = 0.0;  // max combination residual over coded groups
};

MDecodeOutput m_decode_job(const MScheme& scheme, const MLedger& ledger, int job);
MDecodeOutput m_rep_decode_job(const MRepScheme& scheme, const MLedger& ledger, int job);

// chunk -> (fraction of the data set, owning workers)
struct ChunkInfo {
  int chunk;
  Rat size;
  std::vector<int> owners;
};

std::vector<ChunkInfo> m_layout(const MSgcParams& p);
std::vector<ChunkInfo> m_rep_layout(const MSgcParams& p);

}  // namespace seqgc
