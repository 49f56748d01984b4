#include "beckfiala/cohort_search.hpp"

#include <algorithm>
#include <sstream>

namespace bf {

namespace {

BigInt rat_to_int(const Rat& v) { return rat_num(v) / rat_den(v); }

}  // namespace

NearlyFrozen nearly_frozen_sets(const AlgorithmState& st) {
    NearlyFrozen out;
    Rat threshold = Rat(1) - st.profile.alpha;
    for (int x = 0; x < st.sys->n; ++x) {
        if (st.chi.frozen(x)) continue;
        if (st.chi.values[x] >= threshold) out.plus.push_back(x);
        if (-st.chi.values[x] >= threshold) out.minus.push_back(x);
    }
    return out;
}

bool strictly_roundable(const AlgorithmState& st, int x, int sign) {
    if (st.chi.frozen(x)) return false;
    return Rat(sign) * st.chi.values[x] > Rat(1) - st.profile.alpha;
}

std::optional<CohortSeed> find_seed(const AlgorithmState& st, int sign_preference) {
    const SetSystem& sys = *st.sys;
    const long long d = sys.degree;
    const int first_sign = sign_preference >= 0 ? +1 : -1;

    for (long long r = 0; r < st.profile.delta; ++r) {
        BigInt target = 2 * BigInt(d) - r;  // required Th value on the opposite side
        for (int b = 0; b < sys.n; ++b) {
            for (int sign : {first_sign, -first_sign}) {
                if (!strictly_roundable(st, b, sign)) continue;
                std::vector<int> bucket;
                for (int s : sys.containing[b]) {
                    if (st.loc[s] != AlgorithmState::Loc::Pool) continue;
                    SetStats stats = st.stats(s);
                    if (stats.sz > d) continue;
                    const Rat& th_opp = sign == +1 ? stats.th_neg : stats.th_pos;
                    if (th_opp == Rat(target)) bucket.push_back(s);
                }
                if (BigInt(bucket.size()) >= st.profile.w) {
                    CohortSeed seed;
                    seed.banner = b;
                    seed.sign = sign;
                    seed.rank = static_cast<int>(r);
                    size_t take = st.profile.w.convert_to<size_t>();
                    seed.members.assign(bucket.begin(), bucket.begin() + take);
                    return seed;
                }
            }
        }
    }
    return std::nullopt;
}

std::string seed_violation(const AlgorithmState& st, const CohortSeed& seed) {
    const SetSystem& sys = *st.sys;
    const long long d = sys.degree;
    if (seed.sign != 1 && seed.sign != -1) return "sign must be +-1";
    if (seed.rank < 0 || seed.rank >= st.profile.delta) return "rank out of range";
    if (seed.banner < 0 || seed.banner >= sys.n) return "banner out of range";
    if (!strictly_roundable(st, seed.banner, seed.sign))
        return "banner fails the strict |chi| > 1 - alpha test";
    if (BigInt(seed.members.size()) != st.profile.w) return "seed must have exactly W members";
    BigInt target = 2 * BigInt(d) - seed.rank;
    for (int s : seed.members) {
        if (st.loc[s] != AlgorithmState::Loc::Pool) return "member " + std::to_string(s) + " is not in the pool";
        if (!std::binary_search(sys.sets[s].begin(), sys.sets[s].end(), seed.banner))
            return "banner not in member " + std::to_string(s);
        SetStats stats = st.stats(s);
        if (stats.sz > d) return "member " + std::to_string(s) + " has Sz > d";
        const Rat& th_opp = seed.sign == +1 ? stats.th_neg : stats.th_pos;
        if (th_opp != Rat(target))
            return "member " + std::to_string(s) + " has Th = " + rat_to_string(th_opp) + ", expected " + target.str();
    }
    return {};
}

ChargeLedger charge_ledger(const AlgorithmState& st) {
    ChargeLedger ledger;
    const SetSystem& sys = *st.sys;
    const long long d = sys.degree;
    const Rat benign_bound{st.benign_threshold()};
    NearlyFrozen nf = nearly_frozen_sets(st);
    std::vector<char> in_plus(sys.n, 0), in_minus(sys.n, 0);
    for (int x : nf.plus) in_plus[x] = 1;
    for (int x : nf.minus) in_minus[x] = 1;
    for (int x : nf.plus) ledger.element_totals[x] = 0;
    for (int x : nf.minus) ledger.element_totals[x] = 0;

    for (int s : st.pool_sets()) {
        SetStats stats = st.stats(s);
        ledger.set_totals[s] = 0;
        int cnt_plus = 0, cnt_minus = 0;
        for (int x : sys.sets[s]) {
            cnt_plus += in_plus[x];
            cnt_minus += in_minus[x];
        }
        bool small = stats.sz <= d;
        bool big = stats.sz >= d + 1;
        bool case1 = small && stats.th_neg > benign_bound;  // charges S cap B+
        bool case2 = small && stats.th_pos > benign_bound;  // charges S cap B-
        if (case1 && cnt_plus == 0) ledger.anomalies.push_back(s);
        if (case2 && cnt_minus == 0) ledger.anomalies.push_back(s);
        for (int x : sys.sets[s]) {
            Rat value;
            int rule = 0;
            if (in_plus[x]) {
                if (case1) {
                    value = Rat(BigInt(stats.sz) - d - 1, BigInt(cnt_plus));
                    rule = 1;
                } else if (big) {
                    value = Rat(BigInt(stats.sz) - d, 4 * BigInt(cnt_plus));
                    rule = 3;
                }
            } else if (in_minus[x]) {
                if (case2) {
                    value = Rat(BigInt(stats.sz) - d - 1, BigInt(cnt_minus));
                    rule = 2;
                } else if (big) {
                    value = Rat(BigInt(stats.sz) - d, 4 * BigInt(cnt_minus));
                    rule = 4;
                }
            }
            if (rule != 0 && value != 0) {
                ledger.entries.push_back({x, s, rule, value});
                ledger.element_totals[x] += value;
                ledger.set_totals[s] += value;
            }
        }
    }
    return ledger;
}

std::string charge_ledger_csv(const ChargeLedger& ledger) {
    std::ostringstream os;
    os << "element,set,case,value\n";
    for (const auto& e : ledger.entries)
        os << e.element << "," << e.set << "," << e.rule_case << "," << rat_to_string(e.value) << "\n";
    return os.str();
}

ChargeDiagnostics charge_diagnostics(const AlgorithmState& st) {
    ChargeDiagnostics diag;
    const SetSystem& sys = *st.sys;
    const long long d = sys.degree;
    const Rat benign_bound{st.benign_threshold()};
    ChargeLedger ledger = charge_ledger(st);
    diag.anomaly_count = static_cast<int>(ledger.anomalies.size());
    diag.cohorts_present = !st.cohorts.empty();

    std::vector<char> anomalous(sys.num_sets(), 0);
    for (int s : ledger.anomalies) anomalous[s] = 1;

    Rat gsum = 0;
    for (int s : st.pool_sets()) {
        SetStats stats = st.stats(s);
        gsum += Rat(stats.sz) - d;
        if (stats.th <= benign_bound) {
            ++diag.skipped_step1_pending;  // Step 1 would remove it; outside the lemma's setting
            continue;
        }
        if (anomalous[s]) continue;  // uncovered mass, reported separately
        if (!(ledger.set_totals.at(s) < Rat(stats.sz) - d) && diag.changeundercount_ok) {
            diag.changeundercount_ok = false;
            diag.changeundercount_witness = "set " + std::to_string(s);
        }
    }
    diag.gszbnd_ok = gsum <= 0;
    diag.gszbnd_equality = gsum == 0 && !st.pool_sets().empty();

    for (const auto& [x, total] : ledger.element_totals)
        if (total < 0) {
            diag.negative_total_exists = true;
            diag.negative_element = x;
            break;
        }

    Rat neg_bound = -Rat(BigInt(st.profile.delta) + 2 * st.profile.tw[st.profile.delta - 1] + 2, BigInt(d));
    Rat pos_bound = Rat(BigInt(1), BigInt(8 + 4 * st.profile.delta));
    for (const auto& e : ledger.entries) {
        if (e.rule_case <= 2) {
            if (e.value < neg_bound && diag.prop_neg_ok) {
                diag.prop_neg_ok = false;
                diag.prop_witness = "Ch(" + std::to_string(e.element) + "," + std::to_string(e.set) + ")";
            }
        } else {
            SetStats stats = st.stats(e.set);
            const Rat& th_same = e.rule_case == 3 ? stats.th_pos : stats.th_neg;
            if (th_same > benign_bound && e.value < pos_bound && diag.prop_pos_ok) {
                diag.prop_pos_ok = false;
                diag.prop_witness = "Ch(" + std::to_string(e.element) + "," + std::to_string(e.set) + ")";
            }
        }
    }
    return diag;
}

}  // namespace bf
