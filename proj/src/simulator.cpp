#include "seqgc/simulator.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <utility>

#include "seqgc/errors.hpp"
#include "seqgc/gradient_oracle.hpp"
#include "seqgc/m_sgc.hpp"
#include "seqgc/rng.hpp"
#include "seqgc/sr_sgc.hpp"

namespace seqgc {

namespace {

constexpr std::uint64_t kCodeStream = 0xc0de;
constexpr std::uint64_t kOracleStream = 0x02ac1e;

}  // namespace

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Gc: return "gc";
    case SchemeKind::GcRep: return "gc-rep";
    case SchemeKind::SrSgc: return "sr-sgc";
    case SchemeKind::SrSgcRep: return "sr-sgc-rep";
    case SchemeKind::MSgc: return "m-sgc";
    case SchemeKind::MSgcRep: return "m-sgc-rep";
    case SchemeKind::NoCoding: return "no-coding";
  }
  throw ParamError("unknown scheme kind");
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "gc") return SchemeKind::Gc;
  if (name == "gc-rep") return SchemeKind::GcRep;
  if (name == "sr-sgc") return SchemeKind::SrSgc;
  if (name == "sr-sgc-rep") return SchemeKind::SrSgcRep;
  if (name == "m-sgc") return SchemeKind::MSgc;
  if (name == "m-sgc-rep") return SchemeKind::MSgcRep;
  if (name == "no-coding") return SchemeKind::NoCoding;
  throw ParamError("unknown scheme '" + name + "'");
}

StragglerModel design_model(const SchemeSpec& spec) {
  switch (spec.kind) {
    case SchemeKind::Gc:
    case SchemeKind::GcRep:
      if (spec.s < 0) throw ParamError("scheme parameter s is required");
      return PerRoundModel{spec.s};
    case SchemeKind::SrSgc:
    case SchemeKind::SrSgcRep:
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep:
      return BurstyModel{spec.B, spec.W, spec.lambda};
    case SchemeKind::NoCoding:
      throw ParamError("no-coding has no straggler model");
  }
  throw ParamError("unknown scheme kind");
}

Rat nominal_load(const SchemeSpec& spec) {
  if (spec.n < 1) throw ParamError("scheme needs n >= 1");
  switch (spec.kind) {
    case SchemeKind::Gc:
    case SchemeKind::GcRep:
      if (spec.s < 0 || spec.s >= spec.n) throw ParamError("gc needs 0 <= s < n");
      if (spec.kind == SchemeKind::GcRep && spec.n % (spec.s + 1) != 0)
        throw ParamError("gc-rep needs (s+1) dividing n");
      return Rat(spec.s + 1, spec.n);
    case SchemeKind::SrSgc:
    case SchemeKind::SrSgcRep: {
      SrSgcParams p = derive_sr_params(spec.n, spec.B, spec.W, spec.lambda);
      if (spec.kind == SchemeKind::SrSgcRep && spec.n % (p.s + 1) != 0)
        throw ParamError("sr-sgc-rep needs (s+1) dividing n");
      return p.load;
    }
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep: {
      MSgcParams p = derive_m_params(spec.n, spec.B, spec.W, spec.lambda);
      if (spec.kind == SchemeKind::MSgcRep && spec.lambda < spec.n &&
          spec.n % (spec.lambda + 1) != 0)
        throw ParamError("m-sgc-rep needs (lambda+1) dividing n");
      return p.load;
    }
    case SchemeKind::NoCoding:
      return Rat(1, spec.n);
  }
  throw ParamError("unknown scheme kind");
}

int scheme_delay_bound(const SchemeSpec& spec) {
  switch (spec.kind) {
    case SchemeKind::Gc:
    case SchemeKind::GcRep:
    case SchemeKind::NoCoding:
      return 0;
    case SchemeKind::SrSgc:
    case SchemeKind::SrSgcRep:
      return derive_sr_params(spec.n, spec.B, spec.W, spec.lambda).T;
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep:
      return derive_m_params(spec.n, spec.B, spec.W, spec.lambda).T;
  }
  throw ParamError("unknown scheme kind");
}

namespace {

// Per-scheme driver: plans round assignments, applies deliveries from
// non-stragglers, and decodes finished jobs against the reference gradient.
class Master {
 public:
  virtual ~Master() = default;
  virtual int delay_bound() const = 0;
  virtual int resolved_s() const = 0;
  virtual Rat nominal_load() const = 0;
  virtual std::vector<double> plan(int t) = 0;
  virtual void deliver(int t, const std::vector<std::uint8_t>& straggling) = 0;
  virtual bool decodable(int job) const = 0;
  virtual std::pair<Eigen::VectorXd, double> decode(int job) = 0;
  virtual Eigen::VectorXd reference(int job) const = 0;
};

class GcMaster : public Master {
 public:
  GcMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim,
           const GcCodeOptions& opts)
      : code_(GcCode::build(spec.n, spec.s, absorb(seed, kCodeStream), opts)),
        oracle_(absorb(seed, kOracleStream), dim),
        ledger_(spec.n, jobs),
        jobs_(jobs) {}

  int delay_bound() const override { return 0; }
  int resolved_s() const override { return code_.s(); }
  Rat nominal_load() const override { return code_.load(); }

  std::vector<double> plan(int t) override {
    round_ = t;
    return std::vector<double>(std::size_t(code_.n()), to_double(code_.load()));
  }

  void deliver(int t, const std::vector<std::uint8_t>& straggling) override {
    for (int i = 0; i < code_.n(); ++i) {
      if (straggling[std::size_t(i)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
      for (int c : code_.support(i)) v += code_.coefficient(i, c) * oracle_.chunk_gradient(t, c);
      ledger_.record(t, i, t, std::move(v));
    }
    (void)round_;
  }

  bool decodable(int job) const override { return ledger_.result_count(job) >= code_.n() - code_.s(); }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    DecodeOutput out = gc_decode(code_, ledger_.results(job));
    return {std::move(out.gradient), out.residual};
  }

  Eigen::VectorXd reference(int job) const override { return oracle_.total_gradient(job, code_.n()); }

 private:
  GcCode code_;
  GradientOracle oracle_;
  SrLedger ledger_;
  int jobs_ = 0;
  int round_ = 0;
};

class GcRepMaster : public Master {
 public:
  GcRepMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim)
      : code_(GcRepCode::build(spec.n, spec.s)),
        oracle_(absorb(seed, kOracleStream), dim),
        ledger_(spec.n, jobs) {}

  int delay_bound() const override { return 0; }
  int resolved_s() const override { return code_.s(); }
  Rat nominal_load() const override { return code_.load(); }

  std::vector<double> plan(int /*t*/) override {
    return std::vector<double>(std::size_t(code_.n()), to_double(code_.load()));
  }

  void deliver(int t, const std::vector<std::uint8_t>& straggling) override {
    for (int i = 0; i < code_.n(); ++i) {
      if (straggling[std::size_t(i)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
      for (int c : code_.support(i)) v += oracle_.chunk_gradient(t, c);
      ledger_.record(t, i, t, std::move(v));
    }
  }

  bool decodable(int job) const override {
    std::vector<bool> seen(std::size_t(code_.groups()), false);
    for (int i = 0; i < code_.n(); ++i)
      if (ledger_.has_result(job, i)) seen[std::size_t(code_.group_of(i))] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    RepDecodeOutput out = gc_rep_decode(code_, ledger_.results(job));
    return {std::move(out.gradient), 0.0};
  }

  Eigen::VectorXd reference(int job) const override { return oracle_.total_gradient(job, code_.n()); }

 private:
  GcRepCode code_;
  GradientOracle oracle_;
  SrLedger ledger_;
};

class SrMaster : public Master {
 public:
  SrMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim,
           const GcCodeOptions& opts)
      : scheme_(make_sr_scheme(spec.n, spec.B, spec.W, spec.lambda, absorb(seed, kCodeStream), opts)),
        oracle_(absorb(seed, kOracleStream), dim),
        ledger_(spec.n, jobs),
        jobs_(jobs) {}

  int delay_bound() const override { return scheme_.params.T; }
  int resolved_s() const override { return scheme_.params.s; }
  Rat nominal_load() const override { return scheme_.params.load; }

  std::vector<double> plan(int t) override {
    tasks_ = sr_assign_round(scheme_.params, ledger_, t, jobs_);
    std::vector<double> loads(std::size_t(scheme_.params.n), 0.0);
    for (const SrTask& task : tasks_)
      if (!task.trivial) loads[std::size_t(task.worker)] = to_double(scheme_.params.load);
    return loads;
  }

  void deliver(int t, const std::vector<std::uint8_t>& straggling) override {
    for (const SrTask& task : tasks_) {
      if (task.trivial || straggling[std::size_t(task.worker)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
      for (int c : scheme_.code.support(task.worker))
        v += scheme_.code.coefficient(task.worker, c) * oracle_.chunk_gradient(task.job, c);
      ledger_.record(task.job, task.worker, t, std::move(v));
    }
  }

  bool decodable(int job) const override { return sr_job_decodable(scheme_.params, ledger_, job); }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    DecodeOutput out = sr_decode_job(scheme_, ledger_, job);
    return {std::move(out.gradient), out.residual};
  }

  Eigen::VectorXd reference(int job) const override {
    return oracle_.total_gradient(job, scheme_.params.n);
  }

 private:
  SrScheme scheme_;
  GradientOracle oracle_;
  SrLedger ledger_;
  int jobs_ = 0;
  std::vector<SrTask> tasks_;
};

class SrRepMaster : public Master {
 public:
  SrRepMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim)
      : scheme_(make_sr_rep_scheme(spec.n, spec.B, spec.W, spec.lambda)),
        oracle_(absorb(seed, kOracleStream), dim),
        ledger_(spec.n, jobs),
        jobs_(jobs) {}

  int delay_bound() const override { return scheme_.params.T; }
  int resolved_s() const override { return scheme_.params.s; }
  Rat nominal_load() const override { return scheme_.params.load; }

  std::vector<double> plan(int t) override {
    tasks_ = sr_rep_assign_round(scheme_.params, ledger_, t, jobs_);
    std::vector<double> loads(std::size_t(scheme_.params.n), 0.0);
    for (const SrTask& task : tasks_)
      if (!task.trivial) loads[std::size_t(task.worker)] = to_double(scheme_.params.load);
    return loads;
  }

  void deliver(int t, const std::vector<std::uint8_t>& straggling) override {
    for (const SrTask& task : tasks_) {
      if (task.trivial || straggling[std::size_t(task.worker)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
      for (int c : scheme_.code.support(task.worker)) v += oracle_.chunk_gradient(task.job, c);
      ledger_.record(task.job, task.worker, t, std::move(v));
    }
  }

  bool decodable(int job) const override { return sr_rep_job_decodable(scheme_.params, ledger_, job); }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    RepDecodeOutput out = sr_rep_decode_job(scheme_, ledger_, job);
    return {std::move(out.gradient), 0.0};
  }

  Eigen::VectorXd reference(int job) const override {
    return oracle_.total_gradient(job, scheme_.params.n);
  }

 private:
  SrRepScheme scheme_;
  GradientOracle oracle_;
  SrLedger ledger_;
  int jobs_ = 0;
  std::vector<SrTask> tasks_;
};

template <class Scheme>
class MMasterBase : public Master {
 public:
  MMasterBase(Scheme scheme, int jobs, std::uint64_t seed, int dim)
      : scheme_(std::move(scheme)),
        oracle_(absorb(seed, kOracleStream), dim),
        ledger_(scheme_.params, jobs),
        jobs_(jobs) {}

  int delay_bound() const override { return scheme_.params.T; }
  int resolved_s() const override { return scheme_.params.lambda; }
  Rat nominal_load() const override { return scheme_.params.load; }

  std::vector<double> plan(int t) override {
    const MSgcParams& p = scheme_.params;
    tasks_ = m_assign_round(p, ledger_, t, jobs_);
    std::vector<double> loads(std::size_t(p.n), 0.0);
    for (const MiniTask& task : tasks_) {
      if (task.kind == MiniTaskKind::SingleGrad)
        loads[std::size_t(task.worker)] += to_double(p.d1_chunk_size);
      else if (task.kind == MiniTaskKind::Coded)
        loads[std::size_t(task.worker)] += to_double(p.d2_chunk_size) * (p.lambda + 1);
    }
    return loads;
  }

  void deliver(int t, const std::vector<std::uint8_t>& straggling) override {
    (void)t;
    for (const MiniTask& task : tasks_) {
      if (task.kind == MiniTaskKind::Trivial || straggling[std::size_t(task.worker)]) continue;
      if (task.kind == MiniTaskKind::SingleGrad)
        ledger_.record_d1(task.job, task.chunk, oracle_.chunk_gradient(task.job, task.chunk));
      else
        ledger_.record_coded(task.job, task.group, task.worker,
                             coded_value(task.worker, task.group, task.job));
    }
  }

  Eigen::VectorXd reference(int job) const override {
    return oracle_.total_gradient(job, scheme_.params.data_chunks);
  }

 protected:
  virtual Eigen::VectorXd coded_value(int worker, int group, int job) const = 0;

  Scheme scheme_;
  GradientOracle oracle_;
  MLedger ledger_;
  int jobs_ = 0;
  std::vector<MiniTask> tasks_;
};

class MMaster : public MMasterBase<MScheme> {
 public:
  MMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim,
          const GcCodeOptions& opts)
      : MMasterBase(make_m_scheme(spec.n, spec.B, spec.W, spec.lambda, absorb(seed, kCodeStream), opts),
                    jobs, seed, dim) {}

  bool decodable(int job) const override { return m_job_decodable(scheme_.params, ledger_, job); }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    MDecodeOutput out = m_decode_job(scheme_, ledger_, job);
    return {std::move(out.gradient), out.residual};
  }

 protected:
  Eigen::VectorXd coded_value(int worker, int group, int job) const override {
    const MSgcParams& p = scheme_.params;
    const GcCode& code = scheme_.group_codes[std::size_t(group)];
    const int base = (p.W - 1 + group) * p.n;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
    for (int l : code.support(worker))
      v += code.coefficient(worker, l) * oracle_.chunk_gradient(job, base + l);
    return v;
  }
};

class MRepMaster : public MMasterBase<MRepScheme> {
 public:
  MRepMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim)
      : MMasterBase(make_m_rep_scheme(spec.n, spec.B, spec.W, spec.lambda), jobs, seed, dim) {}

  bool decodable(int job) const override { return m_rep_job_decodable(scheme_.params, ledger_, job); }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    MDecodeOutput out = m_rep_decode_job(scheme_, ledger_, job);
    return {std::move(out.gradient), out.residual};
  }

 protected:
  Eigen::VectorXd coded_value(int worker, int group, int job) const override {
    const MSgcParams& p = scheme_.params;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(oracle_.dim());
    for (int c : m_rep_d2_chunks(p, worker, group)) v += oracle_.chunk_gradient(job, c);
    return v;
  }
};

// Uncoded baseline: one chunk per worker, the master waits for all of them.
class NoCodingMaster : public Master {
 public:
  NoCodingMaster(const SchemeSpec& spec, int jobs, std::uint64_t seed, int dim)
      : n_(spec.n), oracle_(absorb(seed, kOracleStream), dim), ledger_(spec.n, jobs) {}

  int delay_bound() const override { return 0; }
  int resolved_s() const override { return 0; }
  Rat nominal_load() const override { return Rat(1, n_); }

  std::vector<double> plan(int /*t*/) override {
    return std::vector<double>(std::size_t(n_), 1.0 / n_);
  }

  void deliver(int t, const std::vector<std::uint8_t>& /*straggling*/) override {
    for (int i = 0; i < n_; ++i) ledger_.record(t, i, t, oracle_.chunk_gradient(t, i));
  }

  bool decodable(int job) const override { return ledger_.result_count(job) >= n_; }

  std::pair<Eigen::VectorXd, double> decode(int job) override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(oracle_.dim());
    for (const WorkerResult& r : ledger_.results(job)) g += r.value;
    return {std::move(g), 0.0};
  }

  Eigen::VectorXd reference(int job) const override { return oracle_.total_gradient(job, n_); }

 private:
  int n_;
  GradientOracle oracle_;
  SrLedger ledger_;
};

std::unique_ptr<Master> make_master(const SimConfig& config) {
  const SchemeSpec& spec = config.scheme;
  if (spec.n < 1) throw ParamError("scheme needs n >= 1");
  switch (spec.kind) {
    case SchemeKind::Gc:
      return std::make_unique<GcMaster>(spec, config.jobs, config.seed, config.dim,
                                        config.code_options);
    case SchemeKind::GcRep:
      return std::make_unique<GcRepMaster>(spec, config.jobs, config.seed, config.dim);
    case SchemeKind::SrSgc:
      return std::make_unique<SrMaster>(spec, config.jobs, config.seed, config.dim,
                                        config.code_options);
    case SchemeKind::SrSgcRep:
      return std::make_unique<SrRepMaster>(spec, config.jobs, config.seed, config.dim);
    case SchemeKind::MSgc:
      return std::make_unique<MMaster>(spec, config.jobs, config.seed, config.dim,
                                       config.code_options);
    case SchemeKind::MSgcRep:
      return std::make_unique<MRepMaster>(spec, config.jobs, config.seed, config.dim);
    case SchemeKind::NoCoding:
      return std::make_unique<NoCodingMaster>(spec, config.jobs, config.seed, config.dim);
  }
  throw ParamError("unknown scheme kind");
}

int cyclic_round(const DelayProfile& profile, int t) { return (t - 1) % profile.rounds() + 1; }

std::vector<int> mu_rule_stragglers(const DelayProfile& profile, double mu, int t, int n) {
  const int r = cyclic_round(profile, t);
  const double cutoff = (1.0 + mu) * profile.column_min(r);
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (profile.at(i, r) > cutoff) out.push_back(i);
  return out;
}

}  // namespace

WaitoutDecision waitout_rule(StragglerPattern& effective, int t, const std::vector<int>& candidate,
                             const StragglerModel& model) {
  effective.set_column(t, candidate);
  if (column_extension_ok(effective, model, t)) return {false};
  effective.clear_column(t);
  if (!column_extension_ok(effective, model, t))
    throw SimInvariantError("waited-out round still violates the enforcement model");
  return {true};
}

SimReport run(const SimConfig& config) {
  if (config.jobs < 1) throw ParamError("jobs must be >= 1");
  if (config.dim < 1) throw ParamError("dim must be >= 1");
  if (config.decode_tol <= 0) throw ParamError("decode tolerance must be positive");

  std::unique_ptr<Master> master = make_master(config);
  const int n = config.scheme.n;
  const int T = master->delay_bound();
  const int jobs = config.jobs;
  const int rounds = jobs + T;

  const bool timed = std::holds_alternative<TimedInput>(config.input);
  const PatternInput* pat = std::get_if<PatternInput>(&config.input);
  const TimedInput* tim = std::get_if<TimedInput>(&config.input);
  if (pat) {
    if (pat->pattern.n() != n) throw ParamError("pattern worker count does not match scheme");
    if (pat->pattern.rounds() < rounds)
      throw ParamError("pattern covers " + std::to_string(pat->pattern.rounds()) +
                       " rounds, run needs " + std::to_string(rounds));
  } else {
    if (tim->profile.n() != n) throw ParamError("profile worker count does not match scheme");
    if (tim->profile.rounds() < 1) throw ParamError("profile must cover at least one round");
    if (tim->mu < 0) throw ParamError("mu must be >= 0");
  }
  if (config.waitout) validate_model(*config.waitout, n);
  const bool enforce = config.waitout.has_value() && config.scheme.kind != SchemeKind::NoCoding;

  SimReport report;
  report.scheme = config.scheme;
  report.s = master->resolved_s();
  report.T = T;
  report.jobs = jobs;
  report.rounds = rounds;
  report.dim = config.dim;
  report.seed = config.seed;
  report.nominal_load = master->nominal_load();
  report.timed = timed;
  report.mu = tim ? tim->mu : 0.0;
  report.waitout_enforced = enforce;
  report.completion_round.assign(std::size_t(jobs) + 1, 0);
  report.delay.assign(std::size_t(jobs) + 1, 0);
  report.decode_residual.assign(std::size_t(jobs) + 1, 0.0);
  report.decode_rel_error.assign(std::size_t(jobs) + 1, 0.0);
  report.round_duration.assign(std::size_t(rounds) + 1, 0.0);
  report.waited.assign(std::size_t(rounds) + 1, 0);
  report.realized_load.assign(std::size_t(rounds) + 1, {});
  report.effective = StragglerPattern(n, rounds);

  std::set<int> pending;
  for (int t = 1; t <= rounds; ++t) {
    if (t <= jobs) pending.insert(t);

    report.realized_load[std::size_t(t)] = master->plan(t);

    std::vector<int> candidate;
    if (config.scheme.kind != SchemeKind::NoCoding) {
      candidate = pat ? pat->pattern.stragglers(t) : mu_rule_stragglers(tim->profile, tim->mu, t, n);
    }
    bool waited = false;
    if (enforce) {
      waited = waitout_rule(report.effective, t, candidate, *config.waitout).waited;
    } else {
      report.effective.set_column(t, candidate);
    }
    report.waited[std::size_t(t)] = waited ? 1 : 0;
    if (waited) ++report.waitout_count;

    std::vector<std::uint8_t> straggling(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) straggling[std::size_t(i)] = report.effective.at(i, t) ? 1 : 0;
    master->deliver(t, straggling);

    if (timed) {
      const int r = cyclic_round(tim->profile, t);
      const double mx = tim->profile.column_max(r);
      const bool wait_all = waited || config.scheme.kind == SchemeKind::NoCoding;
      report.round_duration[std::size_t(t)] =
          wait_all ? mx : (1.0 + tim->mu) * tim->profile.column_min(r);
      report.total_runtime += report.round_duration[std::size_t(t)];
    }

    for (auto it = pending.begin(); it != pending.end();) {
      const int job = *it;
      if (master->decodable(job)) {
        auto [gradient, residual] = master->decode(job);
        const Eigen::VectorXd expected = master->reference(job);
        const double rel =
            (gradient - expected).norm() / std::max(expected.norm(), 1e-9);
        if (rel > config.decode_tol)
          throw SimInvariantError("job " + std::to_string(job) +
                                  " decoded gradient mismatches reference (rel err " +
                                  std::to_string(rel) + ")");
        report.completion_round[std::size_t(job)] = t;
        report.delay[std::size_t(job)] = t - job;
        report.decode_residual[std::size_t(job)] = residual;
        report.decode_rel_error[std::size_t(job)] = rel;
        it = pending.erase(it);
      } else {
        if (t >= job + T)
          throw SimInvariantError(
              "job " + std::to_string(job) + " undecodable at its deadline (round " +
              std::to_string(t) +
              (enforce ? ") despite wait-out enforcement"
                       : "); straggler pattern does not conform to the scheme's model"));
        ++it;
      }
    }
  }
  if (!pending.empty())
    throw SimInvariantError("job " + std::to_string(*pending.begin()) + " never completed");
  return report;
}

}  // namespace seqgc
