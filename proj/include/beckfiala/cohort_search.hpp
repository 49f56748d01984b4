#pragma once

#include "beckfiala/state.hpp"

#include <map>
#include <optional>

namespace bf {

// B+ / B-: floating elements with sign*chi(x) >= 1 - alpha. Note the >= here
// versus the strict > used by the rounding step and the seed search; both
// predicates are exposed on purpose.
struct NearlyFrozen {
    std::vector<int> plus, minus;
};
NearlyFrozen nearly_frozen_sets(const AlgorithmState& st);

// The strict rounding/seed threshold sign*chi(x) > 1 - alpha, floating only.
bool strictly_roundable(const AlgorithmState& st, int x, int sign);

struct CohortSeed {
    int banner = -1;
    int sign = +1;
    int rank = 0;
    std::vector<int> members;  // exactly W pool sets, ascending
};

// Direct search: smallest rank first, then lowest banner index; members are
// the W lowest-indexed qualifying pool sets. sign_preference only reorders
// the (vacuous) per-banner sign tie. Absent when no bucket fills up.
std::optional<CohortSeed> find_seed(const AlgorithmState& st, int sign_preference = +1);

// Empty string when the seed satisfies all CohortSeed invariants against st.
std::string seed_violation(const AlgorithmState& st, const CohortSeed& seed);

struct ChargeEntry {
    int element = -1;
    int set = -1;
    int rule_case = 0;  // 1..4 per the five-case definition (case 5 is zero)
    Rat value;
};

struct ChargeLedger {
    std::vector<ChargeEntry> entries;      // nonzero charges only
    std::map<int, Rat> element_totals;     // x in B+ u B-
    std::map<int, Rat> set_totals;         // every S in G
    std::vector<int> anomalies;            // qualifying small sets with empty B+-/S overlap
};

ChargeLedger charge_ledger(const AlgorithmState& st);
std::string charge_ledger_csv(const ChargeLedger& ledger);

struct ChargeDiagnostics {
    bool changeundercount_ok = true;   // per-set totals < Sz(S) - d on covered sets
    std::string changeundercount_witness;
    int skipped_step1_pending = 0;     // pool sets a blocked Step 1 would remove
    int anomaly_count = 0;
    bool negative_total_exists = false;
    int negative_element = -1;
    bool prop_neg_ok = true;           // Ch >= -(delta + 2 Tw_{delta-1} + 2)/d on cases 1/2
    bool prop_pos_ok = true;           // Ch >= 1/(8 + 4 delta) on threatened large sets
    std::string prop_witness;
    bool gszbnd_ok = true;             // sum over G of (Sz - d) <= 0
    bool gszbnd_equality = false;
    bool cohorts_present = false;      // equality should imply no cohorts
};

// Verifies the cohort-seed existence machinery on the concrete state;
// intended where Steps 1-8 are blocked. Report-only.
ChargeDiagnostics charge_diagnostics(const AlgorithmState& st);

}  // namespace bf
