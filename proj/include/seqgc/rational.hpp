#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <sstream>
#include <string>

namespace seqgc {

// Exact arithmetic for loads and bounds; all comparisons stay in the rationals.
using Rat = boost::rational<std::int64_t>;

inline double to_double(const Rat& r) { return boost::rational_cast<double>(r); }

inline std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  return os.str();
}

}  // namespace seqgc
