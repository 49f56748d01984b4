#pragma once

#include "beckfiala/rational.hpp"

#include <string>
#include <vector>

namespace bf {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ground set {0..n-1} plus an ordered family of subsets. Sets are kept in
// canonical form (strictly increasing indices); the family may contain
// repeated sets, which count as distinct members by position.
struct SetSystem {
    int n = 0;
    std::vector<std::vector<int>> sets;
    int degree = 0;                            // d: max number of sets containing one element
    std::vector<std::vector<int>> containing;  // element -> set indices, ascending

    int num_sets() const { return static_cast<int>(sets.size()); }
};

// Validates, canonicalizes (sorts members), rejects duplicates within a set
// and empty families; computes degree and incidence lists.
SetSystem make_set_system(int n, std::vector<std::vector<int>> sets);

// JSON instance format: {"n": <int>, "sets": [[<int>...], ...]}
SetSystem parse_set_system(const std::string& text);
std::string instance_to_json(const SetSystem& sys);

// chi: X -> [-1,+1], exact rationals. An element is frozen iff chi(x) is
// exactly +-1; it never changes afterwards.
struct FloatingColoring {
    std::vector<Rat> values;

    bool frozen(int x) const { return values[x] == 1 || values[x] == -1; }
    int frozen_count() const;
    bool all_frozen() const;
    int size() const { return static_cast<int>(values.size()); }
};

FloatingColoring zero_coloring(int n);

struct SetStats {
    long long sz = 0;  // floating-element count Sz(S)
    Rat chi;           // chi(S)
    Rat fr;            // total color of frozen elements
    Rat fl;            // total color of floating elements
    Rat th_neg;        // Sz - Fr
    Rat th_pos;        // Sz + Fr
    Rat th;            // max of the two
};

SetStats set_stats(const SetSystem& sys, const FloatingColoring& chi, int s);

Rat discrepancy_of(const SetSystem& sys, const FloatingColoring& chi);

// {"colors": [+1|-1...], "discrepancy": <int>}; requires an all-frozen coloring.
std::string coloring_to_json(const SetSystem& sys, const FloatingColoring& chi);

// Reads the output format back; validates length and +-1 entries.
FloatingColoring coloring_from_json(const SetSystem& sys, const std::string& text);

}  // namespace bf
