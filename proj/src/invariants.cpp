#include "beckfiala/invariants.hpp"

#include <map>
#include <set>
#include <sstream>

namespace bf {

namespace {

long long defeat_of(const AlgorithmState& st, int s) {
    auto it = st.defeats.find(s);
    return it == st.defeats.end() ? 0 : it->second;
}

// Th values are integers (Sz +- an integer frozen sum); extract for indexing.
BigInt rat_to_int(const Rat& v) { return rat_num(v) / rat_den(v); }

std::string set_witness(int s) { return "set " + std::to_string(s); }

}  // namespace

bool InvariantReport::all_ok() const {
    for (int i = 1; i <= 18; ++i)
        if (!inv[i].ok) return false;
    return true;
}

std::string InvariantReport::first_failure() const {
    for (int i = 1; i <= 18; ++i)
        if (!inv[i].ok) return "I" + std::to_string(i) + ": " + inv[i].witness;
    return {};
}

InvariantReport check_invariants(const AlgorithmState* prev, const AlgorithmState& cur) {
    InvariantReport rep;
    const SetSystem& sys = *cur.sys;
    const ConstantProfile& p = cur.profile;
    const long long d = sys.degree;
    const Rat benign_bound{cur.benign_threshold()};
    auto fail = [&rep](int i, const std::string& w) {
        if (rep.inv[i].ok) rep.inv[i] = {false, w};
    };

    std::vector<SetStats> st(sys.num_sets());
    for (int s = 0; s < sys.num_sets(); ++s) st[s] = cur.stats(s);

    // I1: frozen elements stay frozen at the same value.
    if (prev) {
        for (int x = 0; x < sys.n; ++x)
            if (prev->chi.frozen(x) && cur.chi.values[x] != prev->chi.values[x])
                fail(1, "element " + std::to_string(x) + " changed after freezing");
    }

    // I2: benign sets satisfy Th <= 2d - delta.
    for (int s : cur.benign_sets())
        if (st[s].th > benign_bound) fail(2, set_witness(s) + " has Th = " + rat_to_string(st[s].th));

    // I3: Sz <= d implies Th <= 2d.
    for (int s = 0; s < sys.num_sets(); ++s)
        if (st[s].sz <= d && st[s].th > Rat(2 * d))
            fail(3, set_witness(s) + " has Sz <= d but Th = " + rat_to_string(st[s].th));

    for (size_t ci = 0; ci < cur.cohorts.size(); ++ci) {
        const Cohort& c = cur.cohorts[ci];
        std::string cw = "cohort " + std::to_string(ci);

        // I4: banner common to all members.
        for (int s : c.members)
            if (!std::binary_search(sys.sets[s].begin(), sys.sets[s].end(), c.banner))
                fail(4, cw + ": banner not in " + set_witness(s));

        // I5: matching pairs drawn from members, disjoint.
        std::set<int> touched;
        for (const auto& [a, b] : c.matching) {
            bool in = std::binary_search(c.members.begin(), c.members.end(), a) &&
                      std::binary_search(c.members.begin(), c.members.end(), b) && a != b;
            if (!in) fail(5, cw + ": edge {" + std::to_string(a) + "," + std::to_string(b) + "} not on members");
            bool dup_a = !touched.insert(a).second;
            bool dup_b = !touched.insert(b).second;
            if (dup_a || dup_b) fail(5, cw + ": edges overlap at set " + std::to_string(dup_a ? a : b));
        }

        // I6: matched pairs have equal defeat counts.
        for (const auto& [a, b] : c.matching)
            if (defeat_of(cur, a) != defeat_of(cur, b))
                fail(6, cw + ": edge {" + std::to_string(a) + "," + std::to_string(b) + "} has D " +
                            std::to_string(defeat_of(cur, a)) + " vs " + std::to_string(defeat_of(cur, b)));

        const BigInt& tw = p.tw[c.rank];
        const BigInt& beta = p.beta[c.rank];
        BigInt elim_sum = 0;
        for (int s : c.members) {
            long long D = defeat_of(cur, s);
            BigInt twoD = pow2ll(D);
            elim_sum += twoD;

            // I7: Sz(S) <= d + 1 - 2^D.
            if (BigInt(st[s].sz) > d + 1 - twoD)
                fail(7, cw + ": " + set_witness(s) + " Sz=" + std::to_string(st[s].sz) + " D=" + std::to_string(D));

            // I8/I9: the off-sign threat is tiny.
            Rat off_bound{BigInt(p.delta) + 2 - 2 * twoD};
            if (c.sign == +1 && st[s].th_pos > off_bound)
                fail(8, cw + ": " + set_witness(s) + " Th+ = " + rat_to_string(st[s].th_pos));
            if (c.sign == -1 && st[s].th_neg > off_bound)
                fail(9, cw + ": " + set_witness(s) + " Th- = " + rat_to_string(st[s].th_neg));

            // I18: D[S] <= 4 Tw_r.
            if (BigInt(D) > 4 * tw) fail(18, cw + ": " + set_witness(s) + " D = " + std::to_string(D));

            BigInt RD = r_term(D, p.delta);
            bool matched = c.is_matched(s);
            if (!matched) {
                // I14 (sign -1) / I15 (sign +1): clamped chi bound for unmatched sets.
                Rat clamp = Rat(twoD * beta);
                Rat rhs = Rat(twoD * tw) - RD;
                if (c.sign == -1) {
                    Rat lhs = st[s].chi + clamp * (cur.chi.values[c.banner] + 1 - p.alpha);
                    if (lhs > rhs - p.alpha / 2 * st[s].th_neg)
                        fail(14, cw + ": " + set_witness(s));
                } else {
                    Rat lhs = -st[s].chi - clamp * (cur.chi.values[c.banner] - 1 + p.alpha);
                    if (lhs > rhs - p.alpha / 2 * st[s].th_pos)
                        fail(15, cw + ": " + set_witness(s));
                }
            }
        }

        // I16/I17: matched-pair versions.
        for (const auto& [a, b] : c.matching) {
            long long D = defeat_of(cur, a);
            BigInt twoD1 = pow2ll(D + 1);
            Rat clamp = Rat(twoD1 * beta);
            Rat rhs = Rat(twoD1 * tw) - 2 * r_term(D, p.delta);
            if (c.sign == -1) {
                Rat lhs = st[a].chi + st[b].chi + clamp * (cur.chi.values[c.banner] + 1 - p.alpha);
                if (lhs > rhs - p.alpha / 2 * (st[a].th_neg + st[b].th_neg))
                    fail(16, cw + ": edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
            } else {
                Rat lhs = -st[a].chi - st[b].chi - clamp * (cur.chi.values[c.banner] - 1 + p.alpha);
                if (lhs > rhs - p.alpha / 2 * (st[a].th_pos + st[b].th_pos))
                    fail(17, cw + ": edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
            }
        }

        // I11: sum of 2^D over the cohort is at most W.
        if (elim_sum > p.w) fail(11, cw + ": sum 2^D = " + elim_sum.str());
    }

    // I10: a banner of cohorts i_1..i_k lies in at least sum(W - |C_ij|) benign sets.
    {
        std::map<int, BigInt> required;
        for (const auto& c : cur.cohorts)
            required[c.banner] += p.w - BigInt(c.members.size());
        for (const auto& [b, need] : required) {
            BigInt have = 0;
            for (int s : sys.containing[b])
                if (cur.loc[s] == AlgorithmState::Loc::Benign) ++have;
            if (have < need)
                fail(10, "banner " + std::to_string(b) + " in " + have.str() + " benign sets, needs " + need.str());
        }
    }

    // I12/I13: pool chi bounds, keyed by r = 2d - Th+-.
    for (int s : cur.pool_sets()) {
        auto check_side = [&](int which, const Rat& th_same, const Rat& th_other, const Rat& signed_chi) {
            BigInt r = 2 * BigInt(d) - rat_to_int(th_same);
            if (r >= p.delta) return;  // vacuous
            if (st[s].sz >= d && signed_chi > 0)
                fail(which, set_witness(s) + " (Sz >= d branch)");
            if (st[s].sz <= d) {
                if (r < 0) {
                    fail(which, set_witness(s) + " has Th beyond 2d with Sz <= d");
                    return;
                }
                Rat bound = Rat(p.tw[r.convert_to<long long>()]) - p.alpha / 2 * th_other;
                if (signed_chi > bound) fail(which, set_witness(s) + " (Sz <= d branch, r=" + r.str() + ")");
            }
        };
        check_side(12, st[s].th_pos, st[s].th_neg, st[s].chi);
        check_side(13, st[s].th_neg, st[s].th_pos, -st[s].chi);
    }

    return rep;
}

bool LemmaReport::all_ok() const {
    return bannersign.ok && onesided_benign.ok && genonesided_benign.ok && other_chi_half_alpha.ok &&
           other_chi_zero.ok;
}

std::string LemmaReport::first_failure() const {
    if (!bannersign.ok) return "bannersign: " + bannersign.witness;
    if (!onesided_benign.ok) return "onesided_benign: " + onesided_benign.witness;
    if (!genonesided_benign.ok) return "genonesided_benign: " + genonesided_benign.witness;
    if (!other_chi_half_alpha.ok) return "other_chi_bound(alpha/2): " + other_chi_half_alpha.witness;
    if (!other_chi_zero.ok) return "other_chi_bound(0): " + other_chi_zero.witness;
    return {};
}

LemmaReport lemma_checks(const AlgorithmState& cur) {
    LemmaReport rep;
    const SetSystem& sys = *cur.sys;
    const long long d = sys.degree;
    const Rat benign_bound{cur.benign_threshold()};

    for (size_t ci = 0; ci < cur.cohorts.size(); ++ci) {
        const Cohort& c = cur.cohorts[ci];
        if (!c.members.empty() && rep.bannersign.ok) {
            const Rat& v = cur.chi.values[c.banner];
            bool ok = (c.sign == +1 && v > 0) || (c.sign == -1 && v < 0);
            if (!ok) rep.bannersign = {false, "cohort " + std::to_string(ci) + " banner chi = " + rat_to_string(v)};
        }
        for (int s : c.members) {
            SetStats st = cur.stats(s);
            const Rat& th_same = c.sign == +1 ? st.th_pos : st.th_neg;
            if (rep.onesided_benign.ok && th_same > benign_bound)
                rep.onesided_benign = {false, "cohort " + std::to_string(ci) + " " + set_witness(s)};
            Rat bound = Rat(BigInt(cur.profile.delta) + 2 - pow2ll(defeat_of(cur, s) + 1));
            Rat signed_chi = c.sign == +1 ? st.chi : -st.chi;
            if (rep.other_chi_half_alpha.ok && signed_chi - cur.profile.alpha / 2 * th_same > bound)
                rep.other_chi_half_alpha = {false, set_witness(s)};
            if (rep.other_chi_zero.ok && signed_chi > bound)
                rep.other_chi_zero = {false, set_witness(s)};
        }
    }

    for (int s = 0; s < sys.num_sets() && rep.genonesided_benign.ok; ++s) {
        SetStats st = cur.stats(s);
        if (st.sz > d) continue;
        if (st.th_pos > benign_bound && !(st.th_neg < Rat(cur.profile.delta)))
            rep.genonesided_benign = {false, set_witness(s) + " Th+ side"};
        else if (st.th_neg > benign_bound && !(st.th_pos < Rat(cur.profile.delta)))
            rep.genonesided_benign = {false, set_witness(s) + " Th- side"};
    }
    return rep;
}

}  // namespace bf
