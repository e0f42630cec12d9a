#include "seqgc/m_sgc.hpp"

#include <algorithm>
#include <string>

#include "seqgc/errors.hpp"
#include "seqgc/rng.hpp"

namespace seqgc {

MSgcParams derive_m_params(int n, int B, int W, int lambda) {
  if (n < 1) throw ParamError("m-sgc: n must be positive");
  if (lambda < 0 || lambda > n) throw ParamError("m-sgc: need 0 <= lambda <= n");
  if (B < 1) throw ParamError("m-sgc: need B > 0");
  if (W <= B) throw ParamError("m-sgc: need B < W");

  MSgcParams p;
  p.n = n;
  p.B = B;
  p.W = W;
  p.lambda = lambda;
  p.T = W - 2 + B;
  p.slots = W - 1 + B;
  p.d1_chunks = (W - 1) * n;
  if (lambda < n) {
    std::int64_t den = std::int64_t(n) * (B + (W - 1) * (lambda + 1));
    p.data_chunks = (W - 1 + B) * n;
    p.d1_chunk_size = Rat(lambda + 1, den);
    p.d2_chunk_size = Rat(1, den);
    p.load = Rat(std::int64_t(lambda + 1) * (W - 1 + B), den);
  } else {
    p.data_chunks = p.d1_chunks;
    p.d1_chunk_size = Rat(1, std::int64_t(W - 1) * n);
    p.d2_chunk_size = Rat(0);
    p.load = Rat(W - 1 + B, std::int64_t(n) * (W - 1));
  }
  // the chunks partition the data set
  Rat total = p.d1_chunk_size * p.d1_chunks + p.d2_chunk_size * (B * n);
  if (total != Rat(1)) throw SimInvariantError("m-sgc: chunk sizes do not partition the data");
  return p;
}

std::vector<int> m_d1_chunks(const MSgcParams& p, int worker) {
  std::vector<int> out(std::size_t(p.W - 1));
  for (int j = 0; j < p.W - 1; ++j) out[std::size_t(j)] = worker * (p.W - 1) + j;
  return out;
}

std::vector<int> m_d2_chunks(const MSgcParams& p, int worker, int group) {
  std::vector<int> out(std::size_t(p.lambda + 1));
  int base = (p.W - 1 + group) * p.n;
  for (int k = 0; k <= p.lambda; ++k) out[std::size_t(k)] = base + (worker + k) % p.n;
  return out;
}

std::vector<int> m_rep_d2_chunks(const MSgcParams& p, int worker, int group) {
  std::vector<int> out(std::size_t(p.lambda + 1));
  int base = (p.W - 1 + group) * p.n;
  int first = (worker / (p.lambda + 1)) * (p.lambda + 1);
  for (int k = 0; k <= p.lambda; ++k) out[std::size_t(k)] = base + first + k;
  return out;
}

MLedger::MLedger(const MSgcParams& p, int jobs)
    : n_(p.n), jobs_(jobs), d1_chunks_(p.d1_chunks), groups_(p.B) {
  if (jobs < 1) throw ParamError("m ledger: need positive jobs");
  d1_flags_.assign(std::size_t(jobs) * std::size_t(d1_chunks_), 0);
  d1_values_.resize(d1_flags_.size());
  d1_counts_.assign(std::size_t(jobs) + 1, 0);
  coded_flags_.assign(std::size_t(jobs) * std::size_t(groups_) * std::size_t(n_), 0);
  coded_values_.resize(coded_flags_.size());
  coded_counts_.assign(std::size_t(jobs) * std::size_t(groups_), 0);
}

std::size_t MLedger::d1_idx(int job, int chunk) const {
  if (job < 1 || job > jobs_ || chunk < 0 || chunk >= d1_chunks_)
    throw ParamError("m ledger: chunk index out of range");
  return std::size_t(job - 1) * std::size_t(d1_chunks_) + std::size_t(chunk);
}

std::size_t MLedger::coded_idx(int job, int group, int worker) const {
  if (job < 1 || job > jobs_ || group < 0 || group >= groups_ || worker < 0 || worker >= n_)
    throw ParamError("m ledger: coded index out of range");
  return (std::size_t(job - 1) * std::size_t(groups_) + std::size_t(group)) * std::size_t(n_) +
         std::size_t(worker);
}

void MLedger::record_d1(int job, int chunk, Eigen::VectorXd value) {
  std::size_t k = d1_idx(job, chunk);
  if (d1_flags_[k]) throw SimInvariantError("m ledger: duplicate uncoded result");
  d1_flags_[k] = 1;
  ++d1_counts_[std::size_t(job)];
  d1_values_[k] = std::move(value);
}

void MLedger::record_coded(int job, int group, int worker, Eigen::VectorXd value) {
  std::size_t k = coded_idx(job, group, worker);
  if (coded_flags_[k]) throw SimInvariantError("m ledger: duplicate coded result");
  coded_flags_[k] = 1;
  ++coded_counts_[std::size_t(job - 1) * std::size_t(groups_) + std::size_t(group)];
  coded_values_[k] = std::move(value);
}

bool MLedger::d1_received(int job, int chunk) const { return d1_flags_[d1_idx(job, chunk)] != 0; }

int MLedger::d1_count(int job) const {
  if (job < 1 || job > jobs_) throw ParamError("m ledger: job out of range");
  return d1_counts_[std::size_t(job)];
}

bool MLedger::all_d1_received(int job) const { return d1_count(job) == d1_chunks_; }

const Eigen::VectorXd& MLedger::d1_value(int job, int chunk) const {
  std::size_t k = d1_idx(job, chunk);
  if (!d1_flags_[k]) throw DecodeError("m ledger: missing uncoded result");
  return d1_values_[k];
}

bool MLedger::coded_received(int job, int group, int worker) const {
  return coded_flags_[coded_idx(job, group, worker)] != 0;
}

int MLedger::coded_count(int job, int group) const {
  if (job < 1 || job > jobs_ || group < 0 || group >= groups_)
    throw ParamError("m ledger: group out of range");
  return coded_counts_[std::size_t(job - 1) * std::size_t(groups_) + std::size_t(group)];
}

std::vector<WorkerResult> MLedger::coded_results(int job, int group) const {
  std::vector<WorkerResult> out;
  for (int w = 0; w < n_; ++w)
    if (coded_received(job, group, w)) out.push_back({w, coded_values_[coded_idx(job, group, w)]});
  return out;
}

std::vector<MiniTask> m_assign_round(const MSgcParams& p, const MLedger& ledger, int t, int jobs) {
  std::vector<MiniTask> tasks;
  tasks.reserve(std::size_t(p.n) * std::size_t(p.slots));
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j <= p.W - 2; ++j) {
      int job = t - j;
      if (job < 1 || job > jobs) {
        tasks.push_back({i, j, MiniTaskKind::Trivial, job});
      } else {
        tasks.push_back({i, j, MiniTaskKind::SingleGrad, job, i * (p.W - 1) + j});
      }
    }
    for (int j = p.W - 1; j <= p.W - 2 + p.B; ++j) {
      int job = t - j;
      int group = j - (p.W - 1);
      if (job < 1 || job > jobs) {
        tasks.push_back({i, j, MiniTaskKind::Trivial, job});
        continue;
      }
      int missing = -1;
      for (int jp = 0; jp <= p.W - 2 && missing < 0; ++jp) {
        int chunk = i * (p.W - 1) + jp;
        if (!ledger.d1_received(job, chunk)) missing = chunk;
      }
      if (missing >= 0) {
        tasks.push_back({i, j, MiniTaskKind::SingleGrad, job, missing});
      } else if (p.has_coded()) {
        MiniTask task{i, j, MiniTaskKind::Coded, job};
        task.group = group;
        tasks.push_back(task);
      } else {
        // lambda = n: the coded payload is identically zero, nothing to compute
        tasks.push_back({i, j, MiniTaskKind::Trivial, job});
      }
    }
  }
  return tasks;
}

MScheme make_m_scheme(int n, int B, int W, int lambda, std::uint64_t seed,
                      const GcCodeOptions& opts) {
  MSgcParams p = derive_m_params(n, B, W, lambda);
  MScheme scheme{p, {}};
  if (p.has_coded())
    for (int g = 0; g < B; ++g)
      scheme.group_codes.push_back(GcCode::build(n, lambda, absorb(seed, std::uint64_t(g)), opts));
  return scheme;
}

MRepScheme make_m_rep_scheme(int n, int B, int W, int lambda) {
  MSgcParams p = derive_m_params(n, B, W, lambda);
  // lambda = n has no coded chunks; keep a size-1-group placeholder code
  return {p, GcRepCode::build(n, p.has_coded() ? lambda : 0)};
}

bool m_job_decodable(const MSgcParams& p, const MLedger& ledger, int job) {
  if (!ledger.all_d1_received(job)) return false;
  if (!p.has_coded()) return true;
  for (int g = 0; g < p.B; ++g)
    if (ledger.coded_count(job, g) < p.n - p.lambda) return false;
  return true;
}

bool m_rep_job_decodable(const MSgcParams& p, const MLedger& ledger, int job) {
  if (!ledger.all_d1_received(job)) return false;
  if (!p.has_coded()) return true;
  int rep_groups = p.n / (p.lambda + 1);
  for (int g = 0; g < p.B; ++g)
    for (int r = 0; r < rep_groups; ++r) {
      bool any = false;
      for (int w = r * (p.lambda + 1); w < (r + 1) * (p.lambda + 1) && !any; ++w)
        any = ledger.coded_received(job, g, w);
      if (!any) return false;
    }
  return true;
}

namespace {

Eigen::VectorXd sum_d1(const MSgcParams& p, const MLedger& ledger, int job) {
  Eigen::VectorXd g = ledger.d1_value(job, 0);
  for (int c = 1; c < p.d1_chunks; ++c) g += ledger.d1_value(job, c);
  return g;
}

}  // namespace

MDecodeOutput m_decode_job(const MScheme& scheme, const MLedger& ledger, int job) {
  const MSgcParams& p = scheme.params;
  MDecodeOutput out{sum_d1(p, ledger, job), 0.0};
  for (int g = 0; g < int(scheme.group_codes.size()); ++g) {
    DecodeOutput dec = gc_decode(scheme.group_codes[std::size_t(g)], ledger.coded_results(job, g));
    out.gradient += dec.gradient;
    out.residual = std::max(out.residual, dec.residual);
  }
  return out;
}

MDecodeOutput m_rep_decode_job(const MRepScheme& scheme, const MLedger& ledger, int job) {
  const MSgcParams& p = scheme.params;
  MDecodeOutput out{sum_d1(p, ledger, job), 0.0};
  if (p.has_coded())
    for (int g = 0; g < p.B; ++g)
      out.gradient += gc_rep_decode(scheme.group_code, ledger.coded_results(job, g)).gradient;
  return out;
}

std::vector<ChunkInfo> m_layout(const MSgcParams& p) {
  std::vector<ChunkInfo> out;
  for (int c = 0; c < p.d1_chunks; ++c) out.push_back({c, p.d1_chunk_size, {p.d1_owner(c)}});
  if (!p.has_coded()) return out;
  for (int g = 0; g < p.B; ++g)
    for (int l = 0; l < p.n; ++l) {
      ChunkInfo info{(p.W - 1 + g) * p.n + l, p.d2_chunk_size, {}};
      // owners are the workers whose cyclic window covers chunk l
      for (int k = 0; k <= p.lambda; ++k) info.owners.push_back(((l - k) % p.n + p.n) % p.n);
      std::sort(info.owners.begin(), info.owners.end());
      out.push_back(std::move(info));
    }
  return out;
}

std::vector<ChunkInfo> m_rep_layout(const MSgcParams& p) {
  std::vector<ChunkInfo> out;
  for (int c = 0; c < p.d1_chunks; ++c) out.push_back({c, p.d1_chunk_size, {p.d1_owner(c)}});
  if (!p.has_coded()) return out;
  for (int g = 0; g < p.B; ++g)
    for (int l = 0; l < p.n; ++l) {
      ChunkInfo info{(p.W - 1 + g) * p.n + l, p.d2_chunk_size, {}};
      int first = (l / (p.lambda + 1)) * (p.lambda + 1);
      for (int w = first; w < first + p.lambda + 1 && w < p.n; ++w) info.owners.push_back(w);
      out.push_back(std::move(info));
    }
  return out;
}

}  // namespace seqgc
