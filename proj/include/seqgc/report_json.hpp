#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seqgc/simulator.hpp"
#include "seqgc/straggler.hpp"
#include "seqgc/tuner.hpp"

namespace seqgc {

using ordered_json = nlohmann::ordered_json;

std::string format_compact(double v);  // shortest round-trip decimal

ordered_json rational_json(const Rat& r);
ordered_json scheme_spec_json(const SchemeSpec& spec);
ordered_json model_json(const StragglerModel& m);

ordered_json sim_report_json(const SimReport& report);

// scheme,params,load,estimated_runtime_s,waitout_count; evaluated rows only
std::string tune_csv(const TuneResult& result);
ordered_json tune_json(const TuneResult& result);

// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string digest_hex(std::uint64_t digest);
std::string file_digest_hex(const std::string& path);  // throws ParamError if unreadable

struct RunManifest {
  std::string subcommand;
  std::uint64_t seed = 0;
  ordered_json config;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
};
ordered_json manifest_json(const RunManifest& manifest);

}  // namespace seqgc
