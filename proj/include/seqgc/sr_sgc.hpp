#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "seqgc/gc_code.hpp"
#include "seqgc/rational.hpp"

namespace seqgc {

// Scheme family keyed by {n, B, W, lambda} with B | (W-1): an (n,s) code with
// s = ceil(lambda/(x+1)), x = (W-1)/B, one encoded task per worker per round,
// and failed jobs reattempted exactly B rounds later. Completion deadline T = B.
struct SrSgcParams {
  int n, B, W, lambda;
  int x, s, T;
  Rat load;  // (s+1)/n
};

SrSgcParams derive_sr_params(int n, int B, int W, int lambda);

struct SrTask {
  int worker;
  int job;       // absolute job index: t or t-B
  bool trivial;  // job outside [1:J]; carries no work
};

// Master-side receipt bookkeeping. "Own round" means the result for job t was
// returned during round t itself; reattempt results land in the general
// received set only. Jobs outside [1:J] count as fully returned.
class SrLedger {
 public:
  SrLedger(int n, int jobs);

  int n() const { return n_; }
  int jobs() const { return jobs_; }

  void record(int job, int worker, int round, Eigen::VectorXd value);

  int results_in_own_round(int job) const;
  bool returned_in_own_round(int job, int worker) const;
  bool has_result(int job, int worker) const;
  int result_count(int job) const;
  const Eigen::VectorXd& value(int job, int worker) const;
  std::vector<WorkerResult> results(int job) const;

 private:
  std::size_t idx(int job, int worker) const;

  int n_, jobs_;
  std::vector<std::uint8_t> own_round_, received_;
  std::vector<int> own_count_, total_count_;
  std::vector<Eigen::VectorXd> values_;
};

// One task per worker for round t. When the count of job-(t-B) results returned
// in round t-B falls short of n-s, the shortfall many lowest-indexed workers
// that did not return that job in its own round reattempt it; everyone else
// moves to job t.
std::vector<SrTask> sr_assign_round(const SrSgcParams& p, const SrLedger& ledger, int t, int jobs);

// Replication variant: workers whose group already returned the job-(t-B)
// group result in round t-B go straight to job t; the reattempt budget applies
// to the rest. Requires (s+1) | n.
std::vector<SrTask> sr_rep_assign_round(const SrSgcParams& p, const SrLedger& ledger, int t,
                                        int jobs);

struct SrScheme {
  SrSgcParams params;
  GcCode code;
};

struct SrRepScheme {
  SrSgcParams params;
  GcRepCode code;
};

SrScheme make_sr_scheme(int n, int B, int W, int lambda, std::uint64_t seed,
                        const GcCodeOptions& opts = {});
SrRepScheme make_sr_rep_scheme(int n, int B, int W, int lambda);

bool sr_job_decodable(const SrSgcParams& p, const SrLedger& ledger, int job);
bool sr_rep_job_decodable(const SrSgcParams& p, const SrLedger& ledger, int job);

DecodeOutput sr_decode_job(const SrScheme& scheme, const SrLedger& ledger, int job);
RepDecodeOutput sr_rep_decode_job(const SrRepScheme& scheme, const SrLedger& ledger, int job);

}  // namespace seqgc
