#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace seqgc {

// Boolean straggler matrix: workers 0-based, rounds 1-based.
class StragglerPattern {
 public:
  StragglerPattern(int n, int rounds);

  int n() const { return n_; }
  int rounds() const { return rounds_; }

  bool at(int worker, int round) const { return cells_[idx(worker, round)] != 0; }
  void set(int worker, int round, bool v) { cells_[idx(worker, round)] = v ? 1 : 0; }
  void set_column(int round, const std::vector<int>& stragglers);
  void clear_column(int round);

  std::vector<int> stragglers(int round) const;
  int column_sum(int round) const;

  static StragglerPattern read_csv(const std::string& path);
  void write_csv(const std::string& path) const;

 private:
  std::size_t idx(int worker, int round) const;

  int n_, rounds_;
  std::vector<std::uint8_t> cells_;  // [round-1][worker]
};

// Per-round worker completion times in seconds; same indexing as StragglerPattern.
class DelayProfile {
 public:
  DelayProfile(int n, int rounds, double fill = 1.0);

  int n() const { return n_; }
  int rounds() const { return rounds_; }

  double at(int worker, int round) const { return cells_[idx(worker, round)]; }
  // profiles shorter than a run are reused cyclically
  double at_cyclic(int worker, int round) const { return at(worker, (round - 1) % rounds_ + 1); }
  void set(int worker, int round, double v);
  double column_min(int round) const;
  double column_max(int round) const;

  static DelayProfile read_csv(const std::string& path);
  void write_csv(const std::string& path) const;

 private:
  std::size_t idx(int worker, int round) const;

  int n_, rounds_;
  std::vector<double> cells_;
};

// In every length-W window: at most lambda distinct stragglers, and a worker
// straggling at round t inside the window is clean from t+B to the window end.
struct BurstyModel {
  int B, W, lambda;
};

// In every length-W window: at most lambda distinct stragglers, and each worker
// straggles at most N rounds of the window.
struct ArbitraryModel {
  int N, W, lambda;
};

// Every round has at most s stragglers.
struct PerRoundModel {
  int s;
};

using StragglerModel = std::variant<BurstyModel, ArbitraryModel, PerRoundModel>;

void validate_model(const StragglerModel& model, int n);
std::string model_name(const StragglerModel& model);

struct CheckResult {
  bool ok = true;
  std::string detail;  // first violation, empty when conforming

  explicit operator bool() const { return ok; }
};

// Offline checkers: quantify over windows fully contained in [1:rounds].
CheckResult check_bursty(const StragglerPattern& p, const BurstyModel& m);
CheckResult check_arbitrary(const StragglerPattern& p, const ArbitraryModel& m);
CheckResult check_per_round(const StragglerPattern& p, const PerRoundModel& m);
CheckResult check_model(const StragglerPattern& p, const StragglerModel& m);

// Zero-extension conformance of the first `upto` columns: every window clipped
// to [1:upto] must conform, including the not-yet-complete ones. This is the
// online form the wait-out rule needs; it implies the offline check on every
// completed window, and an offline-conforming pattern (rounds >= W) satisfies
// it at every prefix.
bool prefix_conforms(const StragglerPattern& p, const StragglerModel& m, int upto);
// Incremental step: true if the windows touching round t conform with the
// pattern's first t columns in place.
bool column_extension_ok(const StragglerPattern& p, const StragglerModel& m, int t);

// Two-state Markov chain per worker: straggling state is entered with
// probability p_n from the normal state and left with probability p_s; all
// workers start in the normal state. Stationary straggler fraction is
// p_n / (p_n + p_s).
StragglerPattern gen_ge(int n, int rounds, double p_s, double p_n, std::uint64_t seed);

// Worst-case conforming patterns: the first `lambda` workers straggle in
// aligned bursts of length B repeating with period W-1+B (every round when
// B == W), resp. the first N rounds of every length-W period.
StragglerPattern gen_periodic_bursty(int n, int rounds, const BurstyModel& m);
StragglerPattern gen_periodic_arbitrary(int n, int rounds, const ArbitraryModel& m);

// Straggler identification rule: worker i straggles in round t iff its time
// exceeds (1+mu) times the round's fastest worker.
StragglerPattern pattern_from_profile(const DelayProfile& profile, double mu);

}  // namespace seqgc
