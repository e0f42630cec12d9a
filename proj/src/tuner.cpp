#include "seqgc/tuner.hpp"

#include <cmath>
#include <future>
#include <utility>

#include "seqgc/errors.hpp"
#include "seqgc/rng.hpp"

namespace seqgc {

SlopeFit fit_slope(const std::vector<FitSample>& samples) {
  if (samples.size() < 2) throw ParamError("slope fit needs at least two samples");
  double mx = 0.0, my = 0.0;
  for (const FitSample& s : samples) {
    mx += s.load;
    my += s.time;
  }
  mx /= double(samples.size());
  my /= double(samples.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const FitSample& s : samples) {
    sxx += (s.load - mx) * (s.load - mx);
    sxy += (s.load - mx) * (s.time - my);
    syy += (s.time - my) * (s.time - my);
  }
  if (sxx <= 0.0) throw ParamError("slope fit needs at least two distinct loads");
  SlopeFit fit;
  fit.alpha = sxy / sxx;
  fit.intercept = my - fit.alpha * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

DelayProfile adjust_profile(const DelayProfile& profile, double alpha, double candidate_load,
                            double baseline_load) {
  const double shift = alpha * (candidate_load - baseline_load);
  DelayProfile out(profile.n(), profile.rounds());
  for (int t = 1; t <= profile.rounds(); ++t)
    for (int i = 0; i < profile.n(); ++i) {
      const double v = profile.at(i, t) + shift;
      if (v <= 0.0)
        throw ParamError("adjusted profile entry is not positive; slope or loads are off");
      out.set(i, t, v);
    }
  return out;
}

EstimateResult estimate_runtime(const SchemeSpec& spec, const TuneConfig& config,
                                std::uint64_t candidate_seed) {
  const double load = to_double(nominal_load(spec));
  SimConfig sim;
  sim.scheme = spec;
  sim.jobs = config.jobs;
  sim.dim = config.dim;
  sim.seed = candidate_seed;
  sim.code_options = config.code_options;
  sim.input = TimedInput{adjust_profile(config.profile, config.alpha, load, 1.0 / config.n),
                         config.mu};
  if (spec.kind != SchemeKind::NoCoding) sim.waitout = design_model(spec);
  SimReport report = run(sim);
  return {report.total_runtime, report.waitout_count};
}

std::uint64_t tune_candidate_seed(const TuneConfig& config, const SchemeSpec& spec) {
  std::uint64_t h = absorb(config.seed, 0x747e);
  h = absorb(h, std::uint64_t(int(spec.kind) + 1));
  h = absorb(h, std::uint64_t(spec.n));
  h = absorb(h, std::uint64_t(spec.s + 2));
  h = absorb(h, std::uint64_t(spec.B));
  h = absorb(h, std::uint64_t(spec.W));
  h = absorb(h, std::uint64_t(spec.lambda + 2));
  return h;
}

namespace {

TuneEntry evaluate(const TuneConfig& config, const SchemeSpec& spec) {
  TuneEntry entry;
  entry.spec = spec;
  try {
    entry.load = nominal_load(spec);
    EstimateResult est = estimate_runtime(spec, config, tune_candidate_seed(config, spec));
    entry.runtime = est.runtime;
    entry.waitout_count = est.waitout_count;
    entry.ok = true;
  } catch (const std::exception& e) {
    entry.ok = false;
    entry.error = e.what();
  }
  return entry;
}

bool better(const TuneEntry& a, const TuneEntry& b) {
  if (a.runtime != b.runtime) return a.runtime < b.runtime;
  if (a.load != b.load) return a.load < b.load;
  if (a.spec.B != b.spec.B) return a.spec.B < b.spec.B;
  if (a.spec.W != b.spec.W) return a.spec.W < b.spec.W;
  if (a.spec.lambda != b.spec.lambda) return a.spec.lambda < b.spec.lambda;
  if (a.spec.s != b.spec.s) return a.spec.s < b.spec.s;
  return int(a.spec.kind) < int(b.spec.kind);
}

}  // namespace

TuneResult grid_search(const TuneConfig& config) {
  if (config.n < 1) throw ParamError("tuner needs n >= 1");
  if (config.profile.n() != config.n) throw ParamError("profile worker count does not match n");
  if (config.candidates.empty()) throw ParamError("tuner needs at least one candidate");
  if (!(config.alpha >= 0.0) || !std::isfinite(config.alpha))
    throw ParamError("slope must be finite and >= 0");
  for (const SchemeSpec& spec : config.candidates)
    if (spec.n != config.n) throw ParamError("candidate n does not match tuner n");

  TuneResult result;
  result.alpha = config.alpha;
  result.entries.resize(config.candidates.size());

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < config.candidates.size(); ++i)
      result.entries[i] = evaluate(config, config.candidates[i]);
  } else {
    for (std::size_t base = 0; base < config.candidates.size(); base += std::size_t(threads)) {
      const std::size_t end = std::min(base + std::size_t(threads), config.candidates.size());
      std::vector<std::future<TuneEntry>> batch;
      for (std::size_t i = base; i < end; ++i)
        batch.push_back(std::async(std::launch::async, [&config, i] {
          return evaluate(config, config.candidates[i]);
        }));
      for (std::size_t i = base; i < end; ++i) result.entries[i] = batch[i - base].get();
    }
  }

  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    if (!result.entries[i].ok) continue;
    if (result.best < 0 || better(result.entries[i], result.entries[std::size_t(result.best)]))
      result.best = int(i);
  }
  if (result.best < 0) throw ParamError("no feasible candidate in the grid");
  return result;
}

}  // namespace seqgc
