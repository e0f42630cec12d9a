#pragma once

namespace seqgc {

inline constexpr const char* kToolName = "seqgc";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace seqgc
