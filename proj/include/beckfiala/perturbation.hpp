#pragma once

#include "beckfiala/state.hpp"

#include <map>
#include <optional>

namespace bf {

// One linear condition over the floating unknowns. Frozen coordinates are
// folded into rhs, so the current floating chi satisfies every row exactly.
struct LinearRow {
    std::map<int, Rat> coeff;  // element index -> coefficient
    Rat rhs;
};

struct LinearSystem {
    std::vector<LinearRow> rows;
    std::vector<int> unknowns;  // floating element indices, ascending
};

// One row per pool set, one per unmatched cohort set (with the banner clamp
// 2^D beta_r), one per matching edge (clamp 2^(D+1) beta_r).
LinearSystem build_equations(const AlgorithmState& st);

// A nonzero rational direction in the homogeneous kernel, computed by exact
// Gaussian elimination with lowest-index pivoting; the lowest-index free
// variable is set to 1. nullopt when the kernel is trivial.
std::optional<std::map<int, Rat>> kernel_direction(const LinearSystem& lin);

// chi + t* v for the largest t* keeping all coordinates in [-1,+1]; tries +v
// first when sign_preference is +1, -v first otherwise. At least one floating
// coordinate lands exactly on +-1.
FloatingColoring walk_to_boundary(const FloatingColoring& chi, const std::map<int, Rat>& dir,
                                  int sign_preference = +1);

// Matrix-market-like text dump for debugging.
std::string dump_equations(const LinearSystem& lin);

}  // namespace bf
