#pragma once

#include "seqgc/rational.hpp"
#include "seqgc/straggler.hpp"

namespace seqgc {

// Smallest per-worker load any scheme with zero-error sequential recovery can
// sustain against the given model, as an exact rational.
Rat lb_bursty(int n, const BurstyModel& m);
Rat lb_arbitrary(int n, const ArbitraryModel& m);
Rat load_lower_bound(int n, const StragglerModel& m);

}  // namespace seqgc
