#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqgc/gc_code.hpp"
#include "seqgc/rational.hpp"
#include "seqgc/straggler.hpp"

namespace seqgc {

enum class SchemeKind { Gc, GcRep, SrSgc, SrSgcRep, MSgc, MSgcRep, NoCoding };

std::string scheme_name(SchemeKind k);
SchemeKind scheme_from_name(const std::string& name);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::Gc;
  int n = 0;
  int s = -1;                      // gc, gc-rep
  int B = 0, W = 0, lambda = -1;   // sr-sgc, m-sgc
};

// The straggler model a scheme is designed against; used as the default
// wait-out enforcement model. No-coding waits for everyone and has none.
StragglerModel design_model(const SchemeSpec& spec);

// Per-worker fraction of a job's data the scheme assigns, without building
// any code matrices. Throws ParamError on infeasible parameters.
Rat nominal_load(const SchemeSpec& spec);

// Worst-case completion delay T the scheme guarantees under its design model;
// a run spans jobs + T rounds.
int scheme_delay_bound(const SchemeSpec& spec);

struct PatternInput {
  StragglerPattern pattern;
};

// Measured per-round worker times; stragglers are identified by the mu-rule
// against each round's fastest worker. Profiles shorter than the run repeat
// cyclically.
struct TimedInput {
  DelayProfile profile;
  double mu = 0.0;
};

struct SimConfig {
  SchemeSpec scheme;
  int jobs = 1;
  int dim = 4;
  std::uint64_t seed = 0;
  // engaged: rounds whose straggler set would break the model are waited out
  std::optional<StragglerModel> waitout;
  std::variant<PatternInput, TimedInput> input = PatternInput{StragglerPattern(1, 1)};
  GcCodeOptions code_options;
  double decode_tol = 1e-8;
};

struct SimReport {
  SchemeSpec scheme;
  int s = -1;  // resolved code parameter
  int T = 0;
  int jobs = 0, rounds = 0, dim = 0;
  std::uint64_t seed = 0;
  Rat nominal_load;
  bool timed = false;
  double mu = 0.0;
  bool waitout_enforced = false;

  // indexed by job, entry 0 unused
  std::vector<int> completion_round, delay;
  std::vector<double> decode_residual, decode_rel_error;

  // indexed by round, entry 0 unused
  std::vector<double> round_duration;  // timed mode only
  std::vector<std::uint8_t> waited;
  std::vector<std::vector<double>> realized_load;

  int waitout_count = 0;
  double total_runtime = 0.0;
  StragglerPattern effective{1, 1};
};

// Accept the candidate as round t's column if the first t columns stay
// prefix-conforming with it in place; otherwise wait out all workers (empty
// column). `effective` must have column t clear on entry and holds the
// accepted column on return.
struct WaitoutDecision {
  bool waited = false;
};
WaitoutDecision waitout_rule(StragglerPattern& effective, int t, const std::vector<int>& candidate,
                             const StragglerModel& model);

// Round-driven run over jobs 1..J plus the scheme's trailing T rounds. Every
// completed job is decoded from received results and checked against the
// reference gradient; a job that is still undecodable at its deadline raises
// SimInvariantError.
SimReport run(const SimConfig& config);

}  // namespace seqgc
