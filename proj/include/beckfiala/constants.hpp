#pragma once

#include "beckfiala/rational.hpp"

#include <string>
#include <vector>

namespace bf {

struct ProfileError : std::runtime_error {
    enum class Kind { InfeasibleW, TowerOverflow, Invalid };
    Kind kind;
    ProfileError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Iterated base-2 logarithm count: min t with log^(t) x <= 1. log_star(1) = 0
// by convention (no log needed), log_star(2) = 1. Throws on x < 1.
long long log_star(const BigInt& x);

// R_D = (D-2)*2^D - (2^D-1)*delta + 2. May be negative; R_0 = 0.
BigInt r_term(long long D, long long delta);

// The constant system driving the cohort algorithm. Paper-derived profiles
// follow Tw_0 = Tw_1 = delta, Tw_r = 2^(8*Tw_{r-2}), beta_r = 4*Tw_r and
// W = floor(d / (64*delta^2*Tw_{delta-1})). Manual profiles are free-form:
// positive tables, alpha in (0,1), no recurrence enforced.
struct ConstantProfile {
    static constexpr long long kDefaultTowerBitCap = 1 << 20;

    long long delta = 0;
    Rat alpha;
    std::vector<BigInt> tw;    // size delta, tw[r] for 0 <= r < delta
    std::vector<BigInt> beta;  // size delta
    BigInt w;
    enum class Source { PaperDerived, Manual } source = Source::Manual;
    long long tower_bit_cap = kDefaultTowerBitCap;

    void validate() const;  // throws ProfileError(Invalid)
};

// Builds the paper tables for a given d without gating on W >= 1 (w may come
// out 0; useful for diagnostics). Throws TowerOverflow when a Tw value would
// exceed the bit cap, Invalid when d < 2.
ConstantProfile paper_tables(const BigInt& d, long long bit_cap = ConstantProfile::kDefaultTowerBitCap);

// paper_tables plus the feasibility gate: throws InfeasibleW when W < 1.
ConstantProfile paper_profile(const BigInt& d, long long bit_cap = ConstantProfile::kDefaultTowerBitCap);

ConstantProfile manual_profile(long long delta, const Rat& alpha, std::vector<BigInt> tw,
                               std::vector<BigInt> beta, const BigInt& w);

// {"delta":.., "alpha":"1/4", "tw":[..], "beta":[..], "w":..}; big values may
// be decimal strings.
ConstantProfile profile_from_json(const std::string& text);
std::string profile_to_json(const ConstantProfile& p);

struct InequalityEntry {
    char id = '?';  // 'a'..'j'
    int r = -1;     // -1 for the global inequalities (e), (f), (g)
    enum class Verdict { Holds, Fails, Unrepresentable, NotApplicable } verdict = Verdict::NotApplicable;
    std::string lhs, rhs;  // exact values, or symbolic like "2^K" when huge
};

struct InequalityReport {
    std::vector<InequalityEntry> entries;
    bool all_hold() const;  // every entry Holds or NotApplicable
    const InequalityEntry* find(char id, int r = -1) const;
};

// Evaluates (a)..(j) exactly for every applicable r < delta. Report-only.
InequalityReport check_inequalities(const ConstantProfile& p, const BigInt& d);
std::string inequality_report_to_json(const InequalityReport& rep);

}  // namespace bf
