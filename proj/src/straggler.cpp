#include "seqgc/straggler.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "seqgc/errors.hpp"
#include "seqgc/rng.hpp"

namespace seqgc {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool looks_like_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields)
    for (char c : f)
      if (std::isalpha(static_cast<unsigned char>(c))) return true;
  return false;
}

struct CsvTable {
  int n = 0;
  std::vector<std::vector<std::string>> rows;  // value fields only, round column stripped
};

CsvTable read_table(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParamError(std::string(what) + ": cannot open " + path);

  CsvTable t;
  bool round_column = false;
  bool saw_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    if (!saw_header && t.rows.empty() && looks_like_header(fields)) {
      saw_header = true;
      round_column = !fields.empty() && (fields[0] == "round" || fields[0] == "t");
      t.n = int(fields.size()) - (round_column ? 1 : 0);
      continue;
    }
    if (round_column) fields.erase(fields.begin());
    if (t.rows.empty() && !saw_header) t.n = int(fields.size());
    if (int(fields.size()) != t.n)
      throw ParamError(std::string(what) + ": " + path + ":" + std::to_string(lineno) +
                       ": expected " + std::to_string(t.n) + " values, got " +
                       std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
  }
  if (t.rows.empty()) throw ParamError(std::string(what) + ": " + path + " has no data rows");
  if (t.n < 1) throw ParamError(std::string(what) + ": " + path + " has no worker columns");
  return t;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string window_str(int j, int e) {
  return "[" + std::to_string(j) + ":" + std::to_string(e) + "]";
}

// shared clipped-window checks; e is the (possibly clipped) window end
std::optional<std::string> bursty_window_violation(const StragglerPattern& p, const BurstyModel& m,
                                                   int j, int e) {
  int distinct = 0;
  for (int i = 0; i < p.n(); ++i) {
    int first = 0, last = 0;
    for (int t = j; t <= e; ++t) {
      if (!p.at(i, t)) continue;
      if (first == 0) first = t;
      last = t;
    }
    if (first == 0) continue;
    ++distinct;
    if (last - first > m.B - 1)
      return "window " + window_str(j, e) + ": worker " + std::to_string(i) +
             " straggles at rounds " + std::to_string(first) + " and " + std::to_string(last) +
             ", allowed burst span is " + std::to_string(m.B);
  }
  if (distinct > m.lambda)
    return "window " + window_str(j, e) + ": " + std::to_string(distinct) +
           " distinct stragglers exceed lambda=" + std::to_string(m.lambda);
  return std::nullopt;
}

std::optional<std::string> arbitrary_window_violation(const StragglerPattern& p,
                                                      const ArbitraryModel& m, int j, int e) {
  int distinct = 0;
  for (int i = 0; i < p.n(); ++i) {
    int count = 0;
    for (int t = j; t <= e; ++t)
      if (p.at(i, t)) ++count;
    if (count == 0) continue;
    ++distinct;
    if (count > m.N)
      return "window " + window_str(j, e) + ": worker " + std::to_string(i) + " straggles " +
             std::to_string(count) + " rounds, allowed N=" + std::to_string(m.N);
  }
  if (distinct > m.lambda)
    return "window " + window_str(j, e) + ": " + std::to_string(distinct) +
           " distinct stragglers exceed lambda=" + std::to_string(m.lambda);
  return std::nullopt;
}

std::optional<std::string> per_round_violation(const StragglerPattern& p, const PerRoundModel& m,
                                               int t) {
  int c = p.column_sum(t);
  if (c > m.s)
    return "round " + std::to_string(t) + ": " + std::to_string(c) +
           " stragglers exceed s=" + std::to_string(m.s);
  return std::nullopt;
}

std::optional<std::string> window_violation(const StragglerPattern& p, const StragglerModel& m,
                                            int j, int e) {
  if (const auto* b = std::get_if<BurstyModel>(&m)) return bursty_window_violation(p, *b, j, e);
  if (const auto* a = std::get_if<ArbitraryModel>(&m)) return arbitrary_window_violation(p, *a, j, e);
  return per_round_violation(p, std::get<PerRoundModel>(m), e);
}

int model_window(const StragglerModel& m) {
  if (const auto* b = std::get_if<BurstyModel>(&m)) return b->W;
  if (const auto* a = std::get_if<ArbitraryModel>(&m)) return a->W;
  return 1;
}

}  // namespace

StragglerPattern::StragglerPattern(int n, int rounds) : n_(n), rounds_(rounds) {
  if (n < 1) throw ParamError("pattern: n must be positive");
  if (rounds < 0) throw ParamError("pattern: rounds must be non-negative");
  cells_.assign(std::size_t(n) * std::size_t(rounds), 0);
}

std::size_t StragglerPattern::idx(int worker, int round) const {
  if (worker < 0 || worker >= n_ || round < 1 || round > rounds_)
    throw ParamError("pattern: index out of range (worker " + std::to_string(worker) + ", round " +
                     std::to_string(round) + ")");
  return std::size_t(round - 1) * std::size_t(n_) + std::size_t(worker);
}

void StragglerPattern::set_column(int round, const std::vector<int>& stragglers) {
  clear_column(round);
  for (int w : stragglers) set(w, round, true);
}

void StragglerPattern::clear_column(int round) {
  for (int i = 0; i < n_; ++i) set(i, round, false);
}

std::vector<int> StragglerPattern::stragglers(int round) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (at(i, round)) out.push_back(i);
  return out;
}

int StragglerPattern::column_sum(int round) const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    if (at(i, round)) ++c;
  return c;
}

StragglerPattern StragglerPattern::read_csv(const std::string& path) {
  CsvTable t = read_table(path, "pattern csv");
  StragglerPattern p(t.n, int(t.rows.size()));
  for (int r = 0; r < int(t.rows.size()); ++r)
    for (int i = 0; i < t.n; ++i) {
      const std::string& f = t.rows[r][i];
      if (f == "0")
        p.set(i, r + 1, false);
      else if (f == "1")
        p.set(i, r + 1, true);
      else
        throw ParamError("pattern csv: " + path + ": cell '" + f + "' is not 0 or 1");
    }
  return p;
}

void StragglerPattern::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParamError("pattern csv: cannot write " + path);
  out << "round";
  for (int i = 0; i < n_; ++i) out << ",w" << i;
  out << "\n";
  for (int t = 1; t <= rounds_; ++t) {
    out << t;
    for (int i = 0; i < n_; ++i) out << ',' << (at(i, t) ? 1 : 0);
    out << "\n";
  }
}

DelayProfile::DelayProfile(int n, int rounds, double fill) : n_(n), rounds_(rounds) {
  if (n < 1) throw ParamError("profile: n must be positive");
  if (rounds < 1) throw ParamError("profile: rounds must be positive");
  if (fill <= 0) throw ParamError("profile: entries must be positive");
  cells_.assign(std::size_t(n) * std::size_t(rounds), fill);
}

std::size_t DelayProfile::idx(int worker, int round) const {
  if (worker < 0 || worker >= n_ || round < 1 || round > rounds_)
    throw ParamError("profile: index out of range (worker " + std::to_string(worker) + ", round " +
                     std::to_string(round) + ")");
  return std::size_t(round - 1) * std::size_t(n_) + std::size_t(worker);
}

void DelayProfile::set(int worker, int round, double v) {
  if (!(v > 0)) throw ParamError("profile: entries must be positive");
  cells_[idx(worker, round)] = v;
}

double DelayProfile::column_min(int round) const {
  double m = at(0, round);
  for (int i = 1; i < n_; ++i) m = std::min(m, at(i, round));
  return m;
}

double DelayProfile::column_max(int round) const {
  double m = at(0, round);
  for (int i = 1; i < n_; ++i) m = std::max(m, at(i, round));
  return m;
}

DelayProfile DelayProfile::read_csv(const std::string& path) {
  CsvTable t = read_table(path, "profile csv");
  DelayProfile p(t.n, int(t.rows.size()));
  for (int r = 0; r < int(t.rows.size()); ++r)
    for (int i = 0; i < t.n; ++i) {
      const std::string& f = t.rows[r][i];
      double v = 0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw ParamError("profile csv: " + path + ": cell '" + f + "' is not a number");
      if (!(v > 0))
        throw ParamError("profile csv: " + path + ": entries must be positive, got '" + f + "'");
      p.set(i, r + 1, v);
    }
  return p;
}

void DelayProfile::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParamError("profile csv: cannot write " + path);
  out << "round";
  for (int i = 0; i < n_; ++i) out << ",w" << i;
  out << "\n";
  for (int t = 1; t <= rounds_; ++t) {
    out << t;
    for (int i = 0; i < n_; ++i) out << ',' << format_double(at(i, t));
    out << "\n";
  }
}

void validate_model(const StragglerModel& model, int n) {
  if (const auto* b = std::get_if<BurstyModel>(&model)) {
    if (b->B < 1 || b->B > b->W)
      throw ParamError("bursty model: need 1 <= B <= W");
    if (b->lambda < 0 || b->lambda > n)
      throw ParamError("bursty model: need 0 <= lambda <= n");
  } else if (const auto* a = std::get_if<ArbitraryModel>(&model)) {
    if (a->W < 1) throw ParamError("arbitrary model: need W >= 1");
    if (a->N < 0 || a->N > a->W) throw ParamError("arbitrary model: need 0 <= N <= W");
    if (a->lambda < 0 || a->lambda > n)
      throw ParamError("arbitrary model: need 0 <= lambda <= n");
  } else {
    const auto& r = std::get<PerRoundModel>(model);
    if (r.s < 0 || r.s >= n) throw ParamError("per-round model: need 0 <= s < n");
  }
}

std::string model_name(const StragglerModel& model) {
  if (std::holds_alternative<BurstyModel>(model)) return "bursty";
  if (std::holds_alternative<ArbitraryModel>(model)) return "arbitrary";
  return "per-round";
}

CheckResult check_bursty(const StragglerPattern& p, const BurstyModel& m) {
  validate_model(m, p.n());
  for (int j = 1; j + m.W - 1 <= p.rounds(); ++j)
    if (auto v = bursty_window_violation(p, m, j, j + m.W - 1)) return {false, *v};
  return {};
}

CheckResult check_arbitrary(const StragglerPattern& p, const ArbitraryModel& m) {
  validate_model(m, p.n());
  for (int j = 1; j + m.W - 1 <= p.rounds(); ++j)
    if (auto v = arbitrary_window_violation(p, m, j, j + m.W - 1)) return {false, *v};
  return {};
}

CheckResult check_per_round(const StragglerPattern& p, const PerRoundModel& m) {
  validate_model(m, p.n());
  for (int t = 1; t <= p.rounds(); ++t)
    if (auto v = per_round_violation(p, m, t)) return {false, *v};
  return {};
}

CheckResult check_model(const StragglerPattern& p, const StragglerModel& m) {
  if (const auto* b = std::get_if<BurstyModel>(&m)) return check_bursty(p, *b);
  if (const auto* a = std::get_if<ArbitraryModel>(&m)) return check_arbitrary(p, *a);
  return check_per_round(p, std::get<PerRoundModel>(m));
}

bool prefix_conforms(const StragglerPattern& p, const StragglerModel& m, int upto) {
  validate_model(m, p.n());
  if (upto > p.rounds()) throw ParamError("prefix_conforms: upto exceeds pattern rounds");
  int w = model_window(m);
  for (int j = 1; j <= upto; ++j)
    if (window_violation(p, m, j, std::min(j + w - 1, upto))) return false;
  return true;
}

bool column_extension_ok(const StragglerPattern& p, const StragglerModel& m, int t) {
  int w = model_window(m);
  for (int j = std::max(1, t - w + 1); j <= t; ++j)
    if (window_violation(p, m, j, std::min(j + w - 1, t))) return false;
  return true;
}

StragglerPattern gen_ge(int n, int rounds, double p_s, double p_n, std::uint64_t seed) {
  if (p_s < 0 || p_s > 1 || p_n < 0 || p_n > 1)
    throw ParamError("ge generator: probabilities must lie in [0,1]");
  StragglerPattern p(n, rounds);
  for (int i = 0; i < n; ++i) {
    Rng rng(absorb(absorb(seed, 0x9e), std::uint64_t(i)));
    bool straggling = false;  // all workers start in the normal state
    for (int t = 1; t <= rounds; ++t) {
      if (t > 1) straggling = straggling ? !rng.bernoulli(p_s) : rng.bernoulli(p_n);
      p.set(i, t, straggling);
    }
  }
  return p;
}

StragglerPattern gen_periodic_bursty(int n, int rounds, const BurstyModel& m) {
  validate_model(m, n);
  StragglerPattern p(n, rounds);
  for (int t = 1; t <= rounds; ++t) {
    bool burst = m.B == m.W || ((t - 1) % (m.W - 1 + m.B)) < m.B;
    if (!burst) continue;
    for (int i = 0; i < m.lambda; ++i) p.set(i, t, true);
  }
  return p;
}

StragglerPattern gen_periodic_arbitrary(int n, int rounds, const ArbitraryModel& m) {
  validate_model(m, n);
  StragglerPattern p(n, rounds);
  for (int t = 1; t <= rounds; ++t) {
    if (((t - 1) % m.W) >= m.N) continue;
    for (int i = 0; i < m.lambda; ++i) p.set(i, t, true);
  }
  return p;
}

StragglerPattern pattern_from_profile(const DelayProfile& profile, double mu) {
  if (mu < 0) throw ParamError("straggler identification: mu must be non-negative");
  StragglerPattern p(profile.n(), profile.rounds());
  for (int t = 1; t <= profile.rounds(); ++t) {
    double cutoff = (1.0 + mu) * profile.column_min(t);
    for (int i = 0; i < profile.n(); ++i) p.set(i, t, profile.at(i, t) > cutoff);
  }
  return p;
}

}  // namespace seqgc
