#pragma once

#include "beckfiala/engine.hpp"

#include <memory>

namespace bft {

using namespace bf;

inline std::shared_ptr<const SetSystem> make_sys(int n, std::vector<std::vector<int>> sets) {
    return std::make_shared<const SetSystem>(make_set_system(n, std::move(sets)));
}

// Small manual profile used across the cohort tests: delta=2, alpha=1/4,
// Tw=[4,4], beta=[16,16], W=2. Satisfies (a),(b),(c) so the step engine's
// profile-independent bookkeeping is exercised honestly.
inline ConstantProfile toy_profile(long long w = 2) {
    return manual_profile(2, Rat(1, 4), {BigInt(4), BigInt(4)}, {BigInt(16), BigInt(16)}, BigInt(w));
}

// A 27-element, 7-set instance of degree 3 whose mid-run state sits exactly
// at a Step-9 boundary: steps 1-8 are blocked and banner 0 carries two nasty
// sets with Th- = 2d-1. Element roles:
//   0        banner, chi = 7/8
//   1, 2     pinned floats of the padding sets W1/W2, chi = 0
//   3..6     floats of the blocker T and of V1/V2, chi = -7/32
//   7..26    frozen at -1 (three per S, three per V, four per W)
struct ForgeFixture {
    std::shared_ptr<const SetSystem> sys;
    AlgorithmState state;
};

inline ForgeFixture forge_fixture() {
    ForgeFixture f;
    f.sys = make_sys(27, {
                             {0, 1, 7, 8, 9},      // S1: nasty, Th- = 5
                             {0, 2, 10, 11, 12},   // S2: nasty, Th- = 5
                             {0, 3, 4, 5, 6},      // T: large blocker, Th+ = 5
                             {3, 4, 13, 14, 15},   // V1
                             {5, 6, 16, 17, 18},   // V2
                             {1, 19, 20, 21, 22},  // W1
                             {2, 23, 24, 25, 26},  // W2
                         });
    f.state = init_state(f.sys, toy_profile());
    f.state.chi.values[0] = Rat(7, 8);
    for (int x : {3, 4, 5, 6}) f.state.chi.values[x] = Rat(-7, 32);
    for (int x = 7; x < 27; ++x) f.state.chi.values[x] = Rat(-1);
    return f;
}

}  // namespace bft
