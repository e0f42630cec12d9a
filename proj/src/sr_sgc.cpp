#include "seqgc/sr_sgc.hpp"

#include <algorithm>
#include <string>

#include "seqgc/errors.hpp"

namespace seqgc {

SrSgcParams derive_sr_params(int n, int B, int W, int lambda) {
  if (n < 1) throw ParamError("sr-sgc: n must be positive");
  if (lambda < 1 || lambda > n) throw ParamError("sr-sgc: need 0 < lambda <= n");
  if (B < 1) throw ParamError("sr-sgc: need B > 0");
  if (W < B + 1) throw ParamError("sr-sgc: need W >= B+1");
  if ((W - 1) % B != 0) throw ParamError("sr-sgc: B must divide W-1");

  SrSgcParams p;
  p.n = n;
  p.B = B;
  p.W = W;
  p.lambda = lambda;
  p.x = (W - 1) / B;
  p.s = (lambda + p.x) / (p.x + 1);  // ceil(lambda/(x+1)) = ceil(B*lambda/(W-1+B))
  p.T = B;
  if (p.s >= n)
    throw ParamError("sr-sgc: derived s=" + std::to_string(p.s) + " admits no (n,s) code at n=" +
                     std::to_string(n));
  p.load = Rat(p.s + 1, n);
  return p;
}

SrLedger::SrLedger(int n, int jobs) : n_(n), jobs_(jobs) {
  if (n < 1 || jobs < 1) throw ParamError("sr ledger: need positive n and jobs");
  std::size_t cells = std::size_t(n) * std::size_t(jobs);
  own_round_.assign(cells, 0);
  received_.assign(cells, 0);
  own_count_.assign(std::size_t(jobs) + 1, 0);
  total_count_.assign(std::size_t(jobs) + 1, 0);
  values_.resize(cells);
}

std::size_t SrLedger::idx(int job, int worker) const {
  if (job < 1 || job > jobs_ || worker < 0 || worker >= n_)
    throw ParamError("sr ledger: index out of range (job " + std::to_string(job) + ", worker " +
                     std::to_string(worker) + ")");
  return std::size_t(job - 1) * std::size_t(n_) + std::size_t(worker);
}

void SrLedger::record(int job, int worker, int round, Eigen::VectorXd value) {
  std::size_t k = idx(job, worker);
  if (received_[k]) throw SimInvariantError("sr ledger: duplicate result for job/worker");
  received_[k] = 1;
  ++total_count_[std::size_t(job)];
  if (round == job) {
    own_round_[k] = 1;
    ++own_count_[std::size_t(job)];
  }
  values_[k] = std::move(value);
}

int SrLedger::results_in_own_round(int job) const {
  if (job < 1 || job > jobs_) return n_;  // convention: jobs outside the horizon are complete
  return own_count_[std::size_t(job)];
}

bool SrLedger::returned_in_own_round(int job, int worker) const {
  return own_round_[idx(job, worker)] != 0;
}

bool SrLedger::has_result(int job, int worker) const { return received_[idx(job, worker)] != 0; }

int SrLedger::result_count(int job) const {
  if (job < 1 || job > jobs_) return n_;
  return total_count_[std::size_t(job)];
}

const Eigen::VectorXd& SrLedger::value(int job, int worker) const {
  std::size_t k = idx(job, worker);
  if (!received_[k]) throw DecodeError("sr ledger: no result for job/worker");
  return values_[k];
}

std::vector<WorkerResult> SrLedger::results(int job) const {
  std::vector<WorkerResult> out;
  for (int i = 0; i < n_; ++i)
    if (has_result(job, i)) out.push_back({i, value(job, i)});
  return out;
}

std::vector<SrTask> sr_assign_round(const SrSgcParams& p, const SrLedger& ledger, int t,
                                    int jobs) {
  const int prev = t - p.B;
  const bool prev_live = prev >= 1 && prev <= jobs;
  int delta = ledger.results_in_own_round(prev);
  std::vector<SrTask> tasks;
  tasks.reserve(std::size_t(p.n));
  for (int i = 0; i < p.n; ++i) {
    if (prev_live && delta < p.n - p.s && !ledger.returned_in_own_round(prev, i)) {
      tasks.push_back({i, prev, false});
      ++delta;
    } else {
      tasks.push_back({i, t, t < 1 || t > jobs});
    }
  }
  if (delta < p.n - p.s)
    throw SimInvariantError("sr assignment: eligible worker shortfall in round " +
                            std::to_string(t));
  return tasks;
}

std::vector<SrTask> sr_rep_assign_round(const SrSgcParams& p, const SrLedger& ledger, int t,
                                        int jobs) {
  const int prev = t - p.B;
  const int group_size = p.s + 1;
  const bool prev_live = prev >= 1 && prev <= jobs;
  int delta = ledger.results_in_own_round(prev);
  std::vector<SrTask> tasks;
  tasks.reserve(std::size_t(p.n));
  for (int i = 0; i < p.n; ++i) {
    bool group_returned = !prev_live;
    if (prev_live) {
      int first = (i / group_size) * group_size;
      int last = std::min(first + group_size, p.n);
      for (int w = first; w < last && !group_returned; ++w)
        group_returned = ledger.returned_in_own_round(prev, w);
    }
    if (!group_returned && prev_live && delta < p.n - p.s &&
        !ledger.returned_in_own_round(prev, i)) {
      tasks.push_back({i, prev, false});
      ++delta;
    } else {
      tasks.push_back({i, t, t < 1 || t > jobs});
    }
  }
  return tasks;
}

SrScheme make_sr_scheme(int n, int B, int W, int lambda, std::uint64_t seed,
                        const GcCodeOptions& opts) {
  SrSgcParams p = derive_sr_params(n, B, W, lambda);
  return {p, GcCode::build(n, p.s, seed, opts)};
}

SrRepScheme make_sr_rep_scheme(int n, int B, int W, int lambda) {
  SrSgcParams p = derive_sr_params(n, B, W, lambda);
  return {p, GcRepCode::build(n, p.s)};
}

bool sr_job_decodable(const SrSgcParams& p, const SrLedger& ledger, int job) {
  return ledger.result_count(job) >= p.n - p.s;
}

bool sr_rep_job_decodable(const SrSgcParams& p, const SrLedger& ledger, int job) {
  const int group_size = p.s + 1;
  for (int first = 0; first < p.n; first += group_size) {
    bool any = false;
    int last = std::min(first + group_size, p.n);
    for (int w = first; w < last && !any; ++w) any = ledger.has_result(job, w);
    if (!any) return false;
  }
  return true;
}

DecodeOutput sr_decode_job(const SrScheme& scheme, const SrLedger& ledger, int job) {
  return gc_decode(scheme.code, ledger.results(job));
}

RepDecodeOutput sr_rep_decode_job(const SrRepScheme& scheme, const SrLedger& ledger, int job) {
  return gc_rep_decode(scheme.code, ledger.results(job));
}

}  // namespace seqgc
