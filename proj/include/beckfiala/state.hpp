#pragma once

#include "beckfiala/constants.hpp"
#include "beckfiala/set_system.hpp"

#include <map>
#include <memory>

namespace bf {

// A cohort groups nasty sets sharing a common banner element. Defeat counts
// D[S] live in AlgorithmState since match resolution mutates them.
struct Cohort {
    std::vector<int> members;  // set indices, ascending
    int banner = -1;
    int sign = +1;  // epsilon_i
    int rank = 0;   // r_i in 0..delta-1
    std::vector<std::pair<int, int>> matching;  // normalized (a < b), sorted

    bool is_matched(int s) const;
};

struct AlgorithmState {
    enum class Loc : unsigned char { Pool, Benign, InCohort };

    std::shared_ptr<const SetSystem> sys;
    ConstantProfile profile;
    FloatingColoring chi;
    std::vector<Loc> loc;        // per set index
    std::vector<int> cohort_of;  // cohort index, -1 unless InCohort
    std::vector<Cohort> cohorts;
    std::map<int, long long> defeats;  // D[S], defined exactly on cohort members

    std::vector<int> pool_sets() const;
    std::vector<int> benign_sets() const;
    int floating_count() const;
    SetStats stats(int s) const { return set_stats(*sys, chi, s); }
    BigInt benign_threshold() const;  // 2d - delta

    // Mutators keep loc/cohort_of/defeats consistent.
    void move_to_benign(int s);
    void move_to_pool(int s);
    void remove_cohort(int ci);  // survivors keep their order (compaction)
};

AlgorithmState init_state(std::shared_ptr<const SetSystem> sys, ConstantProfile profile);

// I = F + 4|B| - m + sum_i(|M_i| + |C_i|), F = frozen-element count.
long long potential(const AlgorithmState& st);

// Debug/trace snapshot; colorings as "p/q" strings.
std::string state_to_json(const AlgorithmState& st);
AlgorithmState state_from_json(std::shared_ptr<const SetSystem> sys, const std::string& text);

}  // namespace bf
