#include "seqgc/report_json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

#include "seqgc/errors.hpp"
#include "seqgc/version.hpp"

namespace seqgc {

std::string format_compact(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

ordered_json rational_json(const Rat& r) {
  return ordered_json{{"num", r.numerator()}, {"den", r.denominator()}, {"value", to_double(r)}};
}

ordered_json scheme_spec_json(const SchemeSpec& spec) {
  ordered_json j;
  j["kind"] = scheme_name(spec.kind);
  j["n"] = spec.n;
  switch (spec.kind) {
    case SchemeKind::Gc:
    case SchemeKind::GcRep:
      j["s"] = spec.s;
      break;
    case SchemeKind::SrSgc:
    case SchemeKind::SrSgcRep:
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep:
      j["B"] = spec.B;
      j["W"] = spec.W;
      j["lambda"] = spec.lambda;
      break;
    case SchemeKind::NoCoding:
      break;
  }
  return j;
}

ordered_json model_json(const StragglerModel& m) {
  ordered_json j;
  j["name"] = model_name(m);
  if (const auto* b = std::get_if<BurstyModel>(&m)) {
    j["B"] = b->B;
    j["W"] = b->W;
    j["lambda"] = b->lambda;
  } else if (const auto* a = std::get_if<ArbitraryModel>(&m)) {
    j["N"] = a->N;
    j["W"] = a->W;
    j["lambda"] = a->lambda;
  } else {
    j["s"] = std::get<PerRoundModel>(m).s;
  }
  return j;
}

ordered_json sim_report_json(const SimReport& report) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["scheme"] = scheme_spec_json(report.scheme);
  j["resolved_s"] = report.s;
  j["delay_bound"] = report.T;
  j["jobs"] = report.jobs;
  j["rounds"] = report.rounds;
  j["dim"] = report.dim;
  j["seed"] = report.seed;
  j["nominal_load"] = rational_json(report.nominal_load);
  j["timed"] = report.timed;
  if (report.timed) j["mu"] = report.mu;
  j["waitout_enforced"] = report.waitout_enforced;
  j["waitout_count"] = report.waitout_count;

  int max_delay = 0;
  for (int job = 1; job <= report.jobs; ++job)
    max_delay = std::max(max_delay, report.delay[std::size_t(job)]);
  ordered_json summary;
  summary["max_delay"] = max_delay;
  summary["waited_rounds"] = report.waitout_count;
  if (report.timed) summary["total_runtime_s"] = report.total_runtime;
  j["summary"] = summary;

  auto job_slice = [&](const auto& v) {
    ordered_json arr = ordered_json::array();
    for (int job = 1; job <= report.jobs; ++job) arr.push_back(v[std::size_t(job)]);
    return arr;
  };
  ordered_json jobs;
  jobs["completion_round"] = job_slice(report.completion_round);
  jobs["delay"] = job_slice(report.delay);
  jobs["decode_residual"] = job_slice(report.decode_residual);
  jobs["decode_rel_error"] = job_slice(report.decode_rel_error);
  j["jobs_detail"] = jobs;

  ordered_json rounds = ordered_json::array();
  for (int t = 1; t <= report.rounds; ++t) {
    ordered_json row;
    row["round"] = t;
    row["stragglers"] = report.effective.stragglers(t);
    row["waited"] = report.waited[std::size_t(t)] != 0;
    if (report.timed) row["duration_s"] = report.round_duration[std::size_t(t)];
    row["worker_load"] = report.realized_load[std::size_t(t)];
    rounds.push_back(std::move(row));
  }
  j["rounds_detail"] = rounds;
  return j;
}

namespace {

std::string params_field(const SchemeSpec& spec) {
  std::ostringstream out;
  out << "n=" << spec.n;
  switch (spec.kind) {
    case SchemeKind::Gc:
    case SchemeKind::GcRep:
      out << ";s=" << spec.s;
      break;
    case SchemeKind::SrSgc:
    case SchemeKind::SrSgcRep:
    case SchemeKind::MSgc:
    case SchemeKind::MSgcRep:
      out << ";B=" << spec.B << ";W=" << spec.W << ";lambda=" << spec.lambda;
      break;
    case SchemeKind::NoCoding:
      break;
  }
  return out.str();
}

}  // namespace

std::string tune_csv(const TuneResult& result) {
  std::ostringstream out;
  out << "scheme,params,load,estimated_runtime_s,waitout_count\n";
  for (const TuneEntry& entry : result.entries) {
    if (!entry.ok) continue;
    out << scheme_name(entry.spec.kind) << ',' << params_field(entry.spec) << ','
        << to_string(entry.load) << ',' << format_compact(entry.runtime) << ','
        << entry.waitout_count << '\n';
  }
  return out.str();
}

ordered_json tune_json(const TuneResult& result) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["alpha"] = result.alpha;
  ordered_json entries = ordered_json::array();
  for (const TuneEntry& entry : result.entries) {
    ordered_json row;
    row["scheme"] = scheme_spec_json(entry.spec);
    row["ok"] = entry.ok;
    if (entry.ok) {
      row["load"] = rational_json(entry.load);
      row["estimated_runtime_s"] = entry.runtime;
      row["waitout_count"] = entry.waitout_count;
    } else {
      row["error"] = entry.error;
    }
    entries.push_back(std::move(row));
  }
  j["entries"] = entries;
  j["best"] = result.best;
  if (result.best >= 0)
    j["best_scheme"] = scheme_spec_json(result.entries[std::size_t(result.best)].spec);
  return j;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = hex[digest & 0xf];
    digest >>= 4;
  }
  return out;
}

std::string file_digest_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamError("cannot read input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return digest_hex(fnv1a64(bytes.data(), bytes.size()));
}

ordered_json manifest_json(const RunManifest& manifest) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["subcommand"] = manifest.subcommand;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config;
  ordered_json inputs = ordered_json::array();
  for (const auto& [path, digest] : manifest.inputs) {
    ordered_json row;
    row["path"] = path;
    row["digest_fnv1a64"] = digest;
    inputs.push_back(std::move(row));
  }
  j["inputs"] = inputs;
  return j;
}

}  // namespace seqgc
