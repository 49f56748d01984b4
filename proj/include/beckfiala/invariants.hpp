#pragma once

#include "beckfiala/state.hpp"

#include <array>

namespace bf {

struct Finding {
    bool ok = true;
    std::string witness;  // first counterexample, empty when ok
};

// Verdicts for the eighteen labeled invariants. I1 is a transition predicate
// and needs the previous state; with prev == nullptr it passes vacuously.
struct InvariantReport {
    std::array<Finding, 19> inv;  // index by invariant number, [0] unused

    bool all_ok() const;
    std::string first_failure() const;  // "I7: ..." or empty
};

InvariantReport check_invariants(const AlgorithmState* prev, const AlgorithmState& cur);

struct LemmaReport {
    Finding bannersign;
    Finding onesided_benign;
    Finding genonesided_benign;
    Finding other_chi_half_alpha;  // gamma = alpha/2
    Finding other_chi_zero;        // gamma = 0
    bool all_ok() const;
    std::string first_failure() const;
};

LemmaReport lemma_checks(const AlgorithmState& cur);

}  // namespace bf
