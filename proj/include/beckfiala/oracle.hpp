#pragma once

#include "beckfiala/set_system.hpp"

namespace bf {

// Exact minimum over all 2^n colorings of max_S |chi(S)|, by enumeration with
// chi(0) pinned to +1 (sign symmetry). Throws when n exceeds the cap.
long long brute_force_discrepancy(const SetSystem& sys, int cap = 24);

}  // namespace bf
