#pragma once

#include <stdexcept>

namespace seqgc {

// Invalid scheme/model parameters or malformed input files. CLI exit code 2.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Decode attempted with insufficient or inconsistent results.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A run broke a guarantee the engine is supposed to uphold
// (e.g. a job missed its deadline under enforcement). CLI exit code 3.
struct SimInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace seqgc
