#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqgc/bounds.hpp"
#include "seqgc/errors.hpp"
#include "seqgc/m_sgc.hpp"
#include "seqgc/report_json.hpp"
#include "seqgc/rng.hpp"
#include "seqgc/simulator.hpp"
#include "seqgc/sr_sgc.hpp"
#include "seqgc/straggler.hpp"
#include "seqgc/tuner.hpp"
#include "seqgc/version.hpp"

namespace {

using namespace seqgc;

std::uint64_t default_seed() {
  const char* env = std::getenv("SEQGRAD_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(env, &pos, 10);
    if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParamError(std::string("SEQGRAD_SEED is not a valid unsigned integer: '") + env + "'");
  }
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParamError(what + " is not a number: '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// "a", "a:b", or "a:b:step", inclusive
std::vector<int> parse_range(const std::string& text, const std::string& what) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.empty() || parts.size() > 3) throw ParamError(what + ": bad range '" + text + "'");
  int a = 0, b = 0, step = 1;
  try {
    a = std::stoi(parts[0]);
    b = parts.size() > 1 ? std::stoi(parts[1]) : a;
    step = parts.size() > 2 ? std::stoi(parts[2]) : 1;
  } catch (const std::exception&) {
    throw ParamError(what + ": bad range '" + text + "'");
  }
  if (step < 1) throw ParamError(what + ": range step must be >= 1");
  if (b < a) throw ParamError(what + ": range end below start in '" + text + "'");
  std::vector<int> values;
  for (int v = a; v <= b; v += step) values.push_back(v);
  return values;
}

// "B=1:3,W=2:7,lambda=1:8:1"
std::map<std::string, std::vector<int>> parse_grid(const std::string& text,
                                                   const std::string& what) {
  std::map<std::string, std::vector<int>> grid;
  for (const std::string& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParamError(what + ": expected name=range, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (grid.count(key)) throw ParamError(what + ": duplicate key '" + key + "'");
    grid[key] = parse_range(item.substr(eq + 1), what + " " + key);
  }
  return grid;
}

void require_keys(const std::map<std::string, std::vector<int>>& grid,
                  const std::vector<std::string>& keys, const std::string& what) {
  for (const auto& [key, values] : grid) {
    (void)values;
    bool known = false;
    for (const std::string& k : keys) known = known || k == key;
    if (!known) throw ParamError(what + ": unknown key '" + key + "'");
  }
  for (const std::string& k : keys)
    if (!grid.count(k)) throw ParamError(what + ": missing key '" + k + "'");
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParamError("cannot open output file '" + path + "'");
  out << bytes;
  if (!out) throw ParamError("write failed for '" + path + "'");
}

std::string manifest_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension();
  p += ".manifest.json";
  return p.string();
}

void write_report(const std::string& path, const std::string& bytes, const RunManifest& manifest) {
  write_file(path, bytes);
  write_file(manifest_path(path), manifest_json(manifest).dump(2) + "\n");
}

// --- simulate -------------------------------------------------------------

struct SimulateOpts {
  std::string scheme;
  int n = 0, s = -1, B = 0, W = 0, lambda = -1;
  int jobs = 0, dim = 4;
  double mu = 0.5;
  std::string pattern_file, profile_file, gen_spec;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool no_waitout = false;
  std::string out_file, events_file;
};

StragglerPattern generated_pattern(const SimulateOpts& o, const SchemeSpec& spec, int rounds) {
  if (o.gen_spec.rfind("ge:", 0) == 0) {
    const std::vector<std::string> parts = split(o.gen_spec.substr(3), ',');
    if (parts.size() != 2) throw ParamError("--gen ge takes 'ge:pS,pN'");
    const double p_s = parse_double(parts[0], "--gen ge pS");
    const double p_n = parse_double(parts[1], "--gen ge pN");
    return gen_ge(spec.n, rounds, p_s, p_n, absorb(o.seed, 0x6e57));
  }
  if (o.gen_spec == "periodic") {
    const StragglerModel model = design_model(spec);
    if (const auto* b = std::get_if<BurstyModel>(&model))
      return gen_periodic_bursty(spec.n, rounds, *b);
    const auto& p = std::get<PerRoundModel>(model);
    return gen_periodic_bursty(spec.n, rounds, BurstyModel{1, 1, p.s});
  }
  throw ParamError("--gen expects 'ge:pS,pN' or 'periodic', got '" + o.gen_spec + "'");
}

std::string events_csv(const SimReport& report) {
  std::ostringstream out;
  out << "round,worker,straggled,waited,load,duration_s\n";
  for (int t = 1; t <= report.rounds; ++t)
    for (int i = 0; i < report.scheme.n; ++i)
      out << t << ',' << i << ',' << (report.effective.at(i, t) ? 1 : 0) << ','
          << int(report.waited[std::size_t(t)]) << ','
          << format_compact(report.realized_load[std::size_t(t)][std::size_t(i)]) << ','
          << format_compact(report.round_duration[std::size_t(t)]) << '\n';
  return out.str();
}

int run_simulate(const SimulateOpts& o) {
  SchemeSpec spec;
  spec.kind = scheme_from_name(o.scheme);
  spec.n = o.n;
  spec.s = o.s;
  spec.B = o.B;
  spec.W = o.W;
  spec.lambda = o.lambda;

  const int given =
      int(!o.pattern_file.empty()) + int(!o.profile_file.empty()) + int(!o.gen_spec.empty());
  if (given != 1) throw ParamError("simulate needs exactly one of --pattern, --profile, --gen");

  SimConfig config;
  config.scheme = spec;
  config.jobs = o.jobs;
  config.dim = o.dim;
  config.seed = o.seed;

  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.seed = o.seed;

  ordered_json input_cfg;
  if (!o.pattern_file.empty()) {
    config.input = PatternInput{StragglerPattern::read_csv(o.pattern_file)};
    manifest.inputs.emplace_back(o.pattern_file, file_digest_hex(o.pattern_file));
    input_cfg = {{"type", "pattern"}, {"path", o.pattern_file}};
  } else if (!o.profile_file.empty()) {
    config.input = TimedInput{DelayProfile::read_csv(o.profile_file), o.mu};
    manifest.inputs.emplace_back(o.profile_file, file_digest_hex(o.profile_file));
    input_cfg = {{"type", "profile"}, {"path", o.profile_file}, {"mu", o.mu}};
  } else {
    const int rounds = o.jobs + scheme_delay_bound(spec);
    config.input = PatternInput{generated_pattern(o, spec, rounds)};
    input_cfg = {{"type", "gen"}, {"spec", o.gen_spec}, {"rounds", rounds}};
  }

  if (!o.no_waitout && spec.kind != SchemeKind::NoCoding) config.waitout = design_model(spec);

  const SimReport report = run(config);

  ordered_json cfg;
  cfg["scheme"] = scheme_spec_json(spec);
  cfg["jobs"] = o.jobs;
  cfg["dim"] = o.dim;
  cfg["seed"] = o.seed;
  cfg["input"] = input_cfg;
  cfg["waitout"] = config.waitout ? model_json(*config.waitout) : ordered_json(nullptr);
  cfg["decode_tol"] = config.decode_tol;
  cfg["out"] = o.out_file.empty() ? ordered_json(nullptr) : ordered_json(o.out_file);
  cfg["events"] = o.events_file.empty() ? ordered_json(nullptr) : ordered_json(o.events_file);
  manifest.config = cfg;

  if (!o.out_file.empty())
    write_report(o.out_file, sim_report_json(report).dump(2) + "\n", manifest);
  if (!o.events_file.empty()) write_report(o.events_file, events_csv(report), manifest);

  int max_delay = 0;
  for (int job = 1; job <= report.jobs; ++job)
    max_delay = std::max(max_delay, report.delay[std::size_t(job)]);
  std::cout << "scheme " << scheme_name(spec.kind) << "  n=" << spec.n << "  load "
            << to_string(report.nominal_load) << " (" << to_double(report.nominal_load) << ")\n";
  std::cout << "jobs " << report.jobs << "  rounds " << report.rounds << "  max delay "
            << max_delay << " (bound " << report.T << ")  wait-outs " << report.waitout_count
            << "\n";
  if (report.timed) std::cout << "total runtime " << format_compact(report.total_runtime) << " s\n";
  if (!o.out_file.empty()) std::cout << "report: " << o.out_file << "\n";
  return 0;
}

// --- check-pattern / gen-pattern -------------------------------------------

struct ModelOpts {
  std::string model;
  int B = 0, W = 0, lambda = -1, N = -1, s = -1;
};

StragglerModel parse_model_opts(const ModelOpts& o) {
  if (o.model == "bursty") {
    if (o.W <= 0 || o.lambda < 0) throw ParamError("bursty model needs --B, --W, --lambda");
    return BurstyModel{o.B, o.W, o.lambda};
  }
  if (o.model == "arbitrary") {
    if (o.N < 0 || o.W <= 0 || o.lambda < 0)
      throw ParamError("arbitrary model needs --N, --W, --lambda");
    return ArbitraryModel{o.N, o.W, o.lambda};
  }
  if (o.model == "per-round") {
    if (o.s < 0) throw ParamError("per-round model needs --s");
    return PerRoundModel{o.s};
  }
  throw ParamError("unknown model '" + o.model + "' (bursty|arbitrary|per-round)");
}

int run_check_pattern(const ModelOpts& mo, const std::string& pattern_file) {
  const StragglerPattern pattern = StragglerPattern::read_csv(pattern_file);
  const StragglerModel model = parse_model_opts(mo);
  validate_model(model, pattern.n());
  const CheckResult result = check_model(pattern, model);
  if (result.ok) {
    std::cout << "conforms\n";
    return 0;
  }
  std::cout << "violation: " << result.detail << "\n";
  return 1;
}

struct GenOpts {
  std::string gen;
  ModelOpts model;
  int n = 0, rounds = 0;
  std::uint64_t seed = 0;
  std::string out_file;
};

int run_gen_pattern(const GenOpts& o) {
  if (o.n < 1) throw ParamError("--n must be >= 1");
  if (o.rounds < 1) throw ParamError("--rounds must be >= 1");
  StragglerPattern pattern(1, 1);
  ordered_json cfg;
  cfg["n"] = o.n;
  cfg["rounds"] = o.rounds;
  cfg["gen"] = o.gen;
  if (o.gen.rfind("ge:", 0) == 0) {
    const std::vector<std::string> parts = split(o.gen.substr(3), ',');
    if (parts.size() != 2) throw ParamError("--gen ge takes 'ge:pS,pN'");
    const double p_s = parse_double(parts[0], "--gen ge pS");
    const double p_n = parse_double(parts[1], "--gen ge pN");
    pattern = gen_ge(o.n, o.rounds, p_s, p_n, o.seed);
    cfg["seed"] = o.seed;
  } else if (o.gen == "periodic") {
    const StragglerModel model = parse_model_opts(o.model);
    validate_model(model, o.n);
    if (const auto* b = std::get_if<BurstyModel>(&model)) {
      pattern = gen_periodic_bursty(o.n, o.rounds, *b);
    } else if (const auto* a = std::get_if<ArbitraryModel>(&model)) {
      pattern = gen_periodic_arbitrary(o.n, o.rounds, *a);
    } else {
      pattern = gen_periodic_bursty(o.n, o.rounds,
                                    BurstyModel{1, 1, std::get<PerRoundModel>(model).s});
    }
    cfg["model"] = model_json(model);
  } else {
    throw ParamError("--gen expects 'ge:pS,pN' or 'periodic', got '" + o.gen + "'");
  }
  cfg["out"] = o.out_file;

  RunManifest manifest;
  manifest.subcommand = "gen-pattern";
  manifest.seed = o.seed;
  manifest.config = cfg;

  pattern.write_csv(o.out_file);
  write_file(manifest_path(o.out_file), manifest_json(manifest).dump(2) + "\n");
  std::cout << "pattern: " << o.out_file << " (" << o.n << " workers, " << o.rounds
            << " rounds)\n";
  return 0;
}

// --- bounds -----------------------------------------------------------------

void print_scheme_line(const std::string& label, const Rat& load, const Rat& bound) {
  const Rat gap = load - bound;
  std::cout << "  " << label << " load = " << to_string(load) << " = " << to_double(load)
            << "   gap = " << to_string(gap) << " = " << to_double(gap) << "\n";
}

struct BoundsOpts {
  int n = 0, B = 0, W = 0, lambda = -1, N = -1;
  std::string sweep_w;
  std::string out_file;
};

int run_bounds(const BoundsOpts& o) {
  if (o.n < 1) throw ParamError("--n must be >= 1");
  if (o.lambda < 0) throw ParamError("--lambda is required");
  if (o.B <= 0 && o.N < 0) throw ParamError("give --B (bursty) and/or --N (arbitrary)");

  if (o.B > 0) {
    const BurstyModel model{o.B, o.W, o.lambda};
    const Rat lb = lb_bursty(o.n, model);
    std::cout << "L_B*(n=" << o.n << ", B=" << o.B << ", W=" << o.W << ", lambda=" << o.lambda
              << ") = " << to_string(lb) << " = " << to_double(lb) << "\n";
    if (o.B < o.W) {
      print_scheme_line("m-sgc", derive_m_params(o.n, o.B, o.W, o.lambda).load, lb);
      try {
        print_scheme_line("sr-sgc", derive_sr_params(o.n, o.B, o.W, o.lambda).load, lb);
      } catch (const ParamError& e) {
        std::cout << "  sr-sgc: infeasible (" << e.what() << ")\n";
      }
    }
    if (o.lambda < o.n)
      print_scheme_line("gc (s=lambda)", Rat(o.lambda + 1, o.n), lb);
    else
      std::cout << "  gc (s=lambda): infeasible (s must be < n)\n";
  }

  if (o.N >= 0) {
    const ArbitraryModel model{o.N, o.W, o.lambda};
    const Rat lb = lb_arbitrary(o.n, model);
    std::cout << "L_A*(n=" << o.n << ", N=" << o.N << ", W'=" << o.W << ", lambda'=" << o.lambda
              << ") = " << to_string(lb) << " = " << to_double(lb) << "\n";
    if (o.N >= 1 && o.N < o.W) {
      // a burst-tolerant layout with B=N and W = W'-N+1 covers this model
      print_scheme_line("m-sgc (B=N, W=W'-N+1)",
                        derive_m_params(o.n, o.N, o.W - o.N + 1, o.lambda).load, lb);
    }
  }

  if (!o.sweep_w.empty()) {
    if (o.B <= 0) throw ParamError("--sweep-W needs the bursty --B and --lambda");
    if (o.out_file.empty()) throw ParamError("--sweep-W needs --out FILE");
    std::ostringstream csv;
    csv << "W,lb,lb_value,m_load,m_load_value,gap,gap_value,gap_times_w,gap_times_w_value\n";
    for (int w : parse_range(o.sweep_w, "--sweep-W")) {
      if (w <= o.B) continue;
      const Rat lb = lb_bursty(o.n, BurstyModel{o.B, w, o.lambda});
      const Rat load = derive_m_params(o.n, o.B, w, o.lambda).load;
      const Rat gap = load - lb;
      const Rat gw = gap * w;
      csv << w << ',' << to_string(lb) << ',' << format_compact(to_double(lb)) << ','
          << to_string(load) << ',' << format_compact(to_double(load)) << ',' << to_string(gap)
          << ',' << format_compact(to_double(gap)) << ',' << to_string(gw) << ','
          << format_compact(to_double(gw)) << '\n';
    }
    RunManifest manifest;
    manifest.subcommand = "bounds";
    manifest.config = ordered_json{{"n", o.n},      {"B", o.B},
                                   {"W", o.W},      {"lambda", o.lambda},
                                   {"N", o.N},      {"sweep_W", o.sweep_w},
                                   {"out", o.out_file}};
    write_report(o.out_file, csv.str(), manifest);
    std::cout << "sweep: " << o.out_file << "\n";
  }
  return 0;
}

// --- layout -----------------------------------------------------------------

struct LayoutOpts {
  std::string scheme;
  int n = 0, s = -1, B = 0, W = 0, lambda = -1;
  std::string out_file;
};

ordered_json chunk_json(int chunk, const Rat& size, const std::vector<int>& owners) {
  ordered_json row;
  row["chunk"] = chunk;
  row["size"] = rational_json(size);
  row["owners"] = owners;
  return row;
}

int run_layout(const LayoutOpts& o) {
  SchemeSpec spec;
  spec.kind = scheme_from_name(o.scheme);
  spec.n = o.n;
  spec.s = o.s;
  spec.B = o.B;
  spec.W = o.W;
  spec.lambda = o.lambda;

  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["scheme"] = scheme_spec_json(spec);
  ordered_json chunks = ordered_json::array();

  auto cyclic_chunks = [&](int s) {
    j["resolved_s"] = s;
    for (int c = 0; c < o.n; ++c) {
      std::vector<int> owners;
      for (int i = 0; i < o.n; ++i)
        for (int k = 0; k <= s; ++k)
          if ((i + k) % o.n == c) owners.push_back(i);
      chunks.push_back(chunk_json(c, Rat(1, o.n), owners));
    }
  };
  auto group_chunks = [&](int s) {
    j["resolved_s"] = s;
    for (int c = 0; c < o.n; ++c) {
      const int g = c / (s + 1);
      std::vector<int> owners;
      for (int i = g * (s + 1); i < (g + 1) * (s + 1); ++i) owners.push_back(i);
      chunks.push_back(chunk_json(c, Rat(1, o.n), owners));
    }
  };

  switch (spec.kind) {
    case SchemeKind::Gc:
      (void)nominal_load(spec);
      cyclic_chunks(o.s);
      break;
    case SchemeKind::GcRep:
      (void)nominal_load(spec);
      group_chunks(o.s);
      break;
    case SchemeKind::SrSgc:
      cyclic_chunks(derive_sr_params(o.n, o.B, o.W, o.lambda).s);
      break;
    case SchemeKind::SrSgcRep: {
      const int s = derive_sr_params(o.n, o.B, o.W, o.lambda).s;
      if (o.n % (s + 1) != 0) throw ParamError("sr-sgc-rep needs (s+1) dividing n");
      group_chunks(s);
      break;
    }
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep: {
      const MSgcParams p = derive_m_params(o.n, o.B, o.W, o.lambda);
      j["resolved_s"] = p.lambda;
      const std::vector<ChunkInfo> infos =
          spec.kind == SchemeKind::MSgc ? m_layout(p) : m_rep_layout(p);
      for (const ChunkInfo& info : infos) chunks.push_back(chunk_json(info.chunk, info.size, info.owners));
      break;
    }
    case SchemeKind::NoCoding:
      j["resolved_s"] = 0;
      for (int c = 0; c < o.n; ++c) chunks.push_back(chunk_json(c, Rat(1, o.n), {c}));
      break;
    default:
      break;
  }
  j["chunks"] = std::move(chunks);

  if (!o.out_file.empty()) {
    RunManifest manifest;
    manifest.subcommand = "layout";
    manifest.config = ordered_json{{"scheme", scheme_spec_json(spec)}, {"out", o.out_file}};
    write_report(o.out_file, j.dump(2) + "\n", manifest);
    std::cout << "layout: " << o.out_file << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// --- tune ---------------------------------------------------------------

struct TuneOpts {
  std::string profile_file, fit_samples_file;
  double mu = 0.5;
  double alpha = -1.0;
  bool alpha_given = false;
  std::string grid_gc, grid_sr, grid_m;
  int jobs = 0;
  int dim = 4;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out_file;
  int probe_jobs = 0;
  std::string workflow_out;
};

std::vector<FitSample> read_fit_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot read fit samples file '" + path + "'");
  std::vector<FitSample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 2)
      throw ParamError(path + ":" + std::to_string(lineno) + ": expected 'load,time'");
    if (lineno == 1 && cells[0].find_first_not_of("0123456789.eE+-") != std::string::npos)
      continue;  // header
    samples.push_back({parse_double(cells[0], path + " load"), parse_double(cells[1], path + " time")});
  }
  return samples;
}

int run_tune(const TuneOpts& o) {
  TuneConfig config;
  config.profile = DelayProfile::read_csv(o.profile_file);
  config.n = config.profile.n();
  config.jobs = o.jobs > 0 ? o.jobs : config.profile.rounds();
  config.dim = o.dim;
  config.mu = o.mu;
  config.seed = o.seed;
  config.threads = o.threads;

  RunManifest manifest;
  manifest.subcommand = "tune";
  manifest.seed = o.seed;
  manifest.inputs.emplace_back(o.profile_file, file_digest_hex(o.profile_file));

  if (o.alpha_given && !o.fit_samples_file.empty())
    throw ParamError("give either --alpha or --fit-samples, not both");
  if (!o.alpha_given && o.fit_samples_file.empty())
    throw ParamError("one of --alpha or --fit-samples is required");
  if (o.alpha_given) {
    config.alpha = o.alpha;
  } else {
    const SlopeFit fit = fit_slope(read_fit_samples(o.fit_samples_file));
    config.alpha = fit.alpha;
    manifest.inputs.emplace_back(o.fit_samples_file, file_digest_hex(o.fit_samples_file));
    std::cout << "fitted slope alpha = " << format_compact(fit.alpha)
              << " (intercept " << format_compact(fit.intercept) << ", r2 "
              << format_compact(fit.r2) << ")\n";
  }

  if (o.grid_gc.empty() && o.grid_sr.empty() && o.grid_m.empty())
    throw ParamError("at least one of --grid-gc, --grid-sr, --grid-m is required");

  const int n = config.n;
  if (!o.grid_gc.empty()) {
    const auto grid = parse_grid(o.grid_gc, "--grid-gc");
    require_keys(grid, {"s"}, "--grid-gc");
    for (int s : grid.at("s"))
      if (s >= 0 && s < n) config.candidates.push_back({SchemeKind::Gc, n, s, 0, 0, -1});
  }
  if (!o.grid_sr.empty()) {
    const auto grid = parse_grid(o.grid_sr, "--grid-sr");
    require_keys(grid, {"B", "W", "lambda"}, "--grid-sr");
    for (int B : grid.at("B"))
      for (int W : grid.at("W"))
        for (int lambda : grid.at("lambda")) {
          if (B < 1 || W < B + 1 || (W - 1) % B != 0 || lambda < 1 || lambda > n) continue;
          try {
            (void)derive_sr_params(n, B, W, lambda);
          } catch (const ParamError&) {
            continue;
          }
          config.candidates.push_back({SchemeKind::SrSgc, n, -1, B, W, lambda});
        }
  }
  if (!o.grid_m.empty()) {
    const auto grid = parse_grid(o.grid_m, "--grid-m");
    require_keys(grid, {"B", "W", "lambda"}, "--grid-m");
    for (int B : grid.at("B"))
      for (int W : grid.at("W"))
        for (int lambda : grid.at("lambda")) {
          if (B < 1 || W <= B || lambda < 0 || lambda > n) continue;
          config.candidates.push_back({SchemeKind::MSgc, n, -1, B, W, lambda});
        }
  }
  if (config.candidates.empty()) throw ParamError("grids produced no valid candidate");
  config.candidates.push_back({SchemeKind::NoCoding, n, -1, 0, 0, -1});

  const TuneResult result = grid_search(config);

  ordered_json cfg;
  cfg["profile"] = o.profile_file;
  cfg["n"] = n;
  cfg["jobs"] = config.jobs;
  cfg["dim"] = config.dim;
  cfg["mu"] = config.mu;
  cfg["alpha"] = config.alpha;
  cfg["seed"] = config.seed;
  cfg["threads"] = config.threads;
  cfg["grid_gc"] = o.grid_gc;
  cfg["grid_sr"] = o.grid_sr;
  cfg["grid_m"] = o.grid_m;
  cfg["candidates"] = config.candidates.size();
  cfg["out"] = o.out_file.empty() ? ordered_json(nullptr) : ordered_json(o.out_file);
  manifest.config = cfg;

  const std::string csv = tune_csv(result);
  if (!o.out_file.empty())
    write_report(o.out_file, csv, manifest);
  else
    std::cout << csv;

  const TuneEntry& best = result.entries[std::size_t(result.best)];
  std::cout << "best: " << scheme_name(best.spec.kind);
  if (best.spec.kind == SchemeKind::Gc)
    std::cout << " s=" << best.spec.s;
  else if (best.spec.kind != SchemeKind::NoCoding)
    std::cout << " B=" << best.spec.B << " W=" << best.spec.W << " lambda=" << best.spec.lambda;
  std::cout << "  load " << to_string(best.load) << "  runtime "
            << format_compact(best.runtime) << " s  wait-outs " << best.waitout_count << "\n";

  if (!o.workflow_out.empty() || o.probe_jobs > 0) {
    if (o.workflow_out.empty() || o.probe_jobs <= 0)
      throw ParamError("workflow mode needs both --probe-jobs and --workflow-out");
    // phase 1: measure uncoded on the raw profile
    SimConfig probe;
    probe.scheme = {SchemeKind::NoCoding, n, -1, 0, 0, -1};
    probe.jobs = o.probe_jobs;
    probe.dim = config.dim;
    probe.seed = absorb(config.seed, 0x9206e);
    probe.input = TimedInput{config.profile, config.mu};
    const SimReport probe_report = run(probe);

    // phase 2: continue with the winner where the probe left off
    DelayProfile rotated(n, config.profile.rounds());
    for (int t = 1; t <= config.profile.rounds(); ++t)
      for (int i = 0; i < n; ++i) rotated.set(i, t, config.profile.at_cyclic(i, t + o.probe_jobs));
    TuneConfig coded_cfg = config;
    coded_cfg.profile = rotated;
    const EstimateResult coded =
        estimate_runtime(best.spec, coded_cfg, absorb(config.seed, 0xc0ded));

    ordered_json wf;
    wf["tool"] = kToolName;
    wf["version"] = kVersion;
    wf["probe"] = ordered_json{{"scheme", "no-coding"},
                               {"jobs", o.probe_jobs},
                               {"runtime_s", probe_report.total_runtime}};
    wf["coded"] = ordered_json{{"scheme", scheme_spec_json(best.spec)},
                               {"jobs", config.jobs},
                               {"runtime_s", coded.runtime},
                               {"waitout_count", coded.waitout_count}};
    wf["total_runtime_s"] = probe_report.total_runtime + coded.runtime;
    RunManifest wf_manifest = manifest;
    wf_manifest.config["probe_jobs"] = o.probe_jobs;
    wf_manifest.config["workflow_out"] = o.workflow_out;
    write_report(o.workflow_out, wf.dump(2) + "\n", wf_manifest);
    std::cout << "workflow: " << o.workflow_out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential gradient coding: simulate, tune, and inspect straggler-tolerant schemes"};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "run a round-based simulation");
  c_sim->add_option("--scheme", sim.scheme, "gc|gc-rep|sr-sgc|sr-sgc-rep|m-sgc|m-sgc-rep|no-coding")
      ->required();
  c_sim->add_option("--n", sim.n, "number of workers")->required();
  c_sim->add_option("--s", sim.s, "gc straggler tolerance");
  c_sim->add_option("--B", sim.B, "burst length");
  c_sim->add_option("--W", sim.W, "window length");
  c_sim->add_option("--lambda", sim.lambda, "stragglers per window");
  c_sim->add_option("--jobs", sim.jobs, "number of jobs")->required();
  c_sim->add_option("--dim", sim.dim, "gradient dimension");
  c_sim->add_option("--mu", sim.mu, "straggler cutoff multiplier for --profile");
  c_sim->add_option("--pattern", sim.pattern_file, "straggler pattern CSV");
  c_sim->add_option("--profile", sim.profile_file, "per-round worker times CSV");
  c_sim->add_option("--gen", sim.gen_spec, "generate input: ge:pS,pN or periodic");
  auto* sim_seed = c_sim->add_option("--seed", sim.seed, "rng seed (default $SEQGRAD_SEED or 0)");
  c_sim->add_flag("--no-waitout", sim.no_waitout, "disable wait-out enforcement");
  c_sim->add_option("--out", sim.out_file, "write report JSON here");
  c_sim->add_option("--events", sim.events_file, "write per-round event CSV here");

  ModelOpts chk_model;
  std::string chk_pattern;
  CLI::App* c_chk = app.add_subcommand("check-pattern", "check a pattern against a model");
  c_chk->add_option("--model", chk_model.model, "bursty|arbitrary|per-round")->required();
  c_chk->add_option("--B", chk_model.B, "burst length");
  c_chk->add_option("--W", chk_model.W, "window length");
  c_chk->add_option("--lambda", chk_model.lambda, "stragglers per window");
  c_chk->add_option("--N", chk_model.N, "straggles per worker per window");
  c_chk->add_option("--s", chk_model.s, "stragglers per round");
  c_chk->add_option("--pattern", chk_pattern, "straggler pattern CSV")->required();

  GenOpts gen;
  CLI::App* c_gen = app.add_subcommand("gen-pattern", "generate a straggler pattern CSV");
  c_gen->add_option("--gen", gen.gen, "ge:pS,pN or periodic")->required();
  c_gen->add_option("--model", gen.model.model, "periodic worst case: bursty|arbitrary|per-round");
  c_gen->add_option("--B", gen.model.B, "burst length");
  c_gen->add_option("--W", gen.model.W, "window length");
  c_gen->add_option("--lambda", gen.model.lambda, "stragglers per window");
  c_gen->add_option("--N", gen.model.N, "straggles per worker per window");
  c_gen->add_option("--s", gen.model.s, "stragglers per round");
  c_gen->add_option("--n", gen.n, "number of workers")->required();
  c_gen->add_option("--rounds", gen.rounds, "number of rounds")->required();
  auto* gen_seed = c_gen->add_option("--seed", gen.seed, "rng seed (default $SEQGRAD_SEED or 0)");
  c_gen->add_option("--out", gen.out_file, "output CSV path")->required();

  BoundsOpts bnd;
  CLI::App* c_bnd = app.add_subcommand("bounds", "load lower bounds and scheme gaps");
  c_bnd->add_option("--n", bnd.n, "number of workers")->required();
  c_bnd->add_option("--B", bnd.B, "bursty burst length");
  c_bnd->add_option("--W", bnd.W, "window length (W or W')")->required();
  c_bnd->add_option("--lambda", bnd.lambda, "stragglers per window")->required();
  c_bnd->add_option("--N", bnd.N, "arbitrary per-worker straggles per window");
  c_bnd->add_option("--sweep-W", bnd.sweep_w, "CSV sweep range a:b[:step] over W");
  c_bnd->add_option("--out", bnd.out_file, "sweep CSV path");

  LayoutOpts lay;
  CLI::App* c_lay = app.add_subcommand("layout", "chunk placement as JSON");
  c_lay->add_option("--scheme", lay.scheme, "gc|gc-rep|sr-sgc|sr-sgc-rep|m-sgc|m-sgc-rep|no-coding")
      ->required();
  c_lay->add_option("--n", lay.n, "number of workers")->required();
  c_lay->add_option("--s", lay.s, "gc straggler tolerance");
  c_lay->add_option("--B", lay.B, "burst length");
  c_lay->add_option("--W", lay.W, "window length");
  c_lay->add_option("--lambda", lay.lambda, "stragglers per window");
  c_lay->add_option("--out", lay.out_file, "write JSON here (default stdout)");

  TuneOpts tune;
  CLI::App* c_tune = app.add_subcommand("tune", "pick scheme parameters from a delay profile");
  c_tune->add_option("--profile", tune.profile_file, "reference delay profile CSV")->required();
  c_tune->add_option("--mu", tune.mu, "straggler cutoff multiplier");
  auto* alpha_opt = c_tune->add_option("--alpha", tune.alpha, "seconds per unit load");
  c_tune->add_option("--fit-samples", tune.fit_samples_file, "load,time CSV to fit alpha");
  c_tune->add_option("--grid-gc", tune.grid_gc, "e.g. s=1:8");
  c_tune->add_option("--grid-sr", tune.grid_sr, "e.g. B=1:2,W=2:7,lambda=1:8");
  c_tune->add_option("--grid-m", tune.grid_m, "e.g. B=1:3,W=2:4,lambda=1:8");
  c_tune->add_option("--jobs", tune.jobs, "estimation horizon (default: profile rounds)");
  c_tune->add_option("--dim", tune.dim, "gradient dimension");
  c_tune->add_option("--threads", tune.threads, "parallel candidate evaluations");
  auto* tune_seed = c_tune->add_option("--seed", tune.seed, "rng seed (default $SEQGRAD_SEED or 0)");
  c_tune->add_option("--out", tune.out_file, "ranking CSV path (default stdout)");
  c_tune->add_option("--probe-jobs", tune.probe_jobs, "uncoded probe rounds before switching");
  c_tune->add_option("--workflow-out", tune.workflow_out, "probe-then-coded report JSON path");

  try {
    app.parse(argc, argv);
    if (!sim_seed->count()) sim.seed = default_seed();
    if (!gen_seed->count()) gen.seed = default_seed();
    if (!tune_seed->count()) tune.seed = default_seed();
    tune.alpha_given = alpha_opt->count() > 0;

    if (app.got_subcommand(c_sim)) return run_simulate(sim);
    if (app.got_subcommand(c_chk)) return run_check_pattern(chk_model, chk_pattern);
    if (app.got_subcommand(c_gen)) return run_gen_pattern(gen);
    if (app.got_subcommand(c_bnd)) return run_bounds(bnd);
    if (app.got_subcommand(c_lay)) return run_layout(lay);
    if (app.got_subcommand(c_tune)) return run_tune(tune);
    throw ParamError("no subcommand");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SimInvariantError& e) {
    std::cerr << "simulation invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const DecodeError& e) {
    std::cerr << "decode failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
