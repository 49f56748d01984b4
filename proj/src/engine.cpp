#include "beckfiala/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace bf {

using nlohmann::json;

namespace {

// A pool set blocks rounding x toward `sign` when it is large and its
// same-sign threat is still above the benign bound.
bool rounding_blocked(const AlgorithmState& st, int x, int sign) {
    const long long d = st.sys->degree;
    const Rat bound{st.benign_threshold()};
    for (int s : st.sys->containing[x]) {
        if (st.loc[s] != AlgorithmState::Loc::Pool) continue;
        SetStats stats = st.stats(s);
        if (stats.sz < d + 1) continue;
        const Rat& th = sign == +1 ? stats.th_pos : stats.th_neg;
        if (th > bound) return true;
    }
    return false;
}

long long perturbation_row_count(const AlgorithmState& st) {
    long long n = static_cast<long long>(st.pool_sets().size());
    for (const auto& c : st.cohorts)
        n += static_cast<long long>(c.members.size()) - static_cast<long long>(c.matching.size());
    return n;
}

}  // namespace

std::optional<Witness> step_guard(int step, const AlgorithmState& cur, int sign_convention) {
    const Rat bound{cur.benign_threshold()};
    const long long d = cur.sys->degree;
    Witness w;
    switch (step) {
        case 1:
            for (int s : cur.pool_sets())
                if (cur.stats(s).th <= bound) {
                    w.set = s;
                    return w;
                }
            return std::nullopt;
        case 2:
            for (size_t i = 0; i < cur.cohorts.size(); ++i)
                if (cur.cohorts[i].members.empty()) {
                    w.cohort = static_cast<int>(i);
                    return w;
                }
            return std::nullopt;
        case 3: {
            const int first = sign_convention >= 0 ? +1 : -1;
            for (int x = 0; x < cur.sys->n; ++x)
                for (int sign : {first, -first})
                    if (strictly_roundable(cur, x, sign) && !rounding_blocked(cur, x, sign)) {
                        w.element = x;
                        w.sign = sign;
                        return w;
                    }
            return std::nullopt;
        }
        case 4: {
            int best = -1, best_ci = -1;
            for (size_t i = 0; i < cur.cohorts.size(); ++i)
                for (int s : cur.cohorts[i].members) {
                    if (cur.cohorts[i].is_matched(s)) continue;
                    if (best >= 0 && s >= best) continue;
                    if (cur.stats(s).th <= bound) {
                        best = s;
                        best_ci = static_cast<int>(i);
                    }
                }
            if (best < 0) return std::nullopt;
            w.set = best;
            w.cohort = best_ci;
            return w;
        }
        case 5:
            for (size_t i = 0; i < cur.cohorts.size(); ++i)
                if (cur.chi.frozen(cur.cohorts[i].banner)) {
                    w.cohort = static_cast<int>(i);
                    return w;
                }
            return std::nullopt;
        case 6:
            for (size_t i = 0; i < cur.cohorts.size(); ++i)
                for (const auto& [a, b] : cur.cohorts[i].matching) {
                    auto da = cur.defeats.find(a), db = cur.defeats.find(b);
                    if (da == cur.defeats.end() || db == cur.defeats.end() || da->second != db->second)
                        continue;
                    BigInt lhs = BigInt(cur.stats(a).sz) + cur.stats(b).sz + pow2ll(da->second + 1) - 2;
                    if (lhs <= d) {
                        w.set = a;
                        w.set2 = b;
                        w.cohort = static_cast<int>(i);
                        return w;
                    }
                }
            return std::nullopt;
        case 7:
            for (size_t i = 0; i < cur.cohorts.size(); ++i) {
                const Cohort& c = cur.cohorts[i];
                for (size_t ai = 0; ai < c.members.size(); ++ai) {
                    int a = c.members[ai];
                    if (c.is_matched(a)) continue;
                    for (size_t bi = ai + 1; bi < c.members.size(); ++bi) {
                        int b = c.members[bi];
                        if (c.is_matched(b)) continue;
                        if (cur.defeats.at(a) == cur.defeats.at(b)) {
                            w.set = a;
                            w.set2 = b;
                            w.cohort = static_cast<int>(i);
                            return w;
                        }
                    }
                }
            }
            return std::nullopt;
        case 8:
            if (cur.floating_count() > perturbation_row_count(cur)) return w;
            return std::nullopt;
        case 9:
            for (int s = 0; s < cur.sys->num_sets(); ++s)
                if (cur.loc[s] != AlgorithmState::Loc::Benign) return w;
            return std::nullopt;
        default:
            throw std::invalid_argument("step id must be 1..9");
    }
}

int first_fireable_step(const AlgorithmState& cur, int sign_convention) {
    for (int step = 1; step <= 9; ++step)
        if (step_guard(step, cur, sign_convention)) return step;
    return 0;
}

int execute_step(AlgorithmState& cur, Witness& w, int sign_convention, std::string& seed_failure) {
    seed_failure.clear();
    const Rat bound{cur.benign_threshold()};
    for (int step = 1; step <= 9; ++step) {
        auto guard = step_guard(step, cur, sign_convention);
        if (!guard) continue;
        w = *guard;
        switch (step) {
            case 1:
                cur.move_to_benign(w.set);
                return 1;
            case 2:
                cur.remove_cohort(w.cohort);
                return 2;
            case 3:
                cur.chi.values[w.element] = w.sign;
                return 3;
            case 4:
                cur.move_to_benign(w.set);
                return 4;
            case 5:
                cur.remove_cohort(w.cohort);  // members return to the pool
                return 5;
            case 6: {
                Cohort& c = cur.cohorts[w.cohort];
                c.matching.erase(std::find(c.matching.begin(), c.matching.end(),
                                           std::make_pair(std::min(w.set, w.set2), std::max(w.set, w.set2))));
                long long sz_a = cur.stats(w.set).sz, sz_b = cur.stats(w.set2).sz;
                int survivor = sz_a > sz_b ? w.set : (sz_b > sz_a ? w.set2 : std::min(w.set, w.set2));
                int loser = survivor == w.set ? w.set2 : w.set;
                cur.move_to_benign(loser);
                if (cur.stats(survivor).th <= bound)
                    cur.move_to_benign(survivor);
                else
                    ++cur.defeats.at(survivor);
                // keep the record's set as the survivor, set2 as the loser
                w.set = survivor;
                w.set2 = loser;
                return 6;
            }
            case 7: {
                Cohort& c = cur.cohorts[w.cohort];
                c.matching.emplace_back(std::min(w.set, w.set2), std::max(w.set, w.set2));
                std::sort(c.matching.begin(), c.matching.end());
                return 7;
            }
            case 8: {
                LinearSystem lin = build_equations(cur);
                auto dir = kernel_direction(lin);
                if (!dir)
                    throw std::logic_error(
                        "perturbation kernel vanished although floating elements exceed the row count");
                cur.chi = walk_to_boundary(cur.chi, *dir, sign_convention);
                return 8;
            }
            case 9: {
                auto seed = find_seed(cur, sign_convention);
                if (!seed) {
                    std::ostringstream os;
                    NearlyFrozen nf = nearly_frozen_sets(cur);
                    os << "no cohort seed: " << cur.pool_sets().size() << " pool sets, " << nf.plus.size()
                       << "/" << nf.minus.size() << " nearly-frozen elements";
                    seed_failure = os.str();
                    return 9;
                }
                std::string violation = seed_violation(cur, *seed);
                if (!violation.empty()) throw std::logic_error("cohort seed failed re-validation: " + violation);
                Cohort c;
                c.members = seed->members;
                c.banner = seed->banner;
                c.sign = seed->sign;
                c.rank = seed->rank;
                int ci = static_cast<int>(cur.cohorts.size());
                for (int s : c.members) {
                    cur.loc[s] = AlgorithmState::Loc::InCohort;
                    cur.cohort_of[s] = ci;
                    cur.defeats[s] = 0;
                }
                cur.cohorts.push_back(std::move(c));
                w.element = seed->banner;
                w.sign = seed->sign;
                w.cohort = ci;
                w.set = seed->rank;  // rank rides in the set slot of the witness
                return 9;
            }
        }
    }
    return 0;
}

FloatingColoring round_residual(const AlgorithmState& st, int sign_convention) {
    for (int s = 0; s < st.sys->num_sets(); ++s)
        if (st.loc[s] != AlgorithmState::Loc::Benign)
            throw std::logic_error("round_residual called before termination");
    FloatingColoring out = st.chi;
    Rat fill{sign_convention >= 0 ? 1 : -1};
    for (int x = 0; x < out.size(); ++x)
        if (!out.frozen(x)) out.values[x] = fill;
    return out;
}

namespace {

struct CheckContext {
    // Snapshots for the transition predicates (I1, Th-monotonicity) and the
    // Step-8 post-properties.
    AlgorithmState before;
    std::vector<SetStats> before_stats;
};

std::string step8_post_failures(const CheckContext& ctx, const AlgorithmState& cur) {
    const AlgorithmState& pre = ctx.before;
    if (cur.chi.frozen_count() <= pre.chi.frozen_count()) return "step8-post: frozen count did not increase";
    for (int s : pre.pool_sets()) {
        Rat then = ctx.before_stats[s].chi;
        Rat now = cur.stats(s).chi;
        if (then != now) return "step8-post: pool chi changed on set " + std::to_string(s);
    }
    for (size_t ci = 0; ci < pre.cohorts.size(); ++ci) {
        const Cohort& c = pre.cohorts[ci];
        const BigInt& beta = pre.profile.beta[c.rank];
        auto combo = [&](const AlgorithmState& st, int s, long long D) {
            return st.stats(s).chi + Rat(pow2ll(D) * beta) * st.chi.values[c.banner];
        };
        for (int s : c.members) {
            if (c.is_matched(s)) continue;
            long long D = pre.defeats.at(s);
            if (combo(pre, s, D) != combo(cur, s, D))
                return "step8-post: clamped combination changed on set " + std::to_string(s);
        }
        for (const auto& [a, b] : c.matching) {
            long long D = pre.defeats.at(a);
            Rat then = pre.stats(a).chi + pre.stats(b).chi +
                       Rat(pow2ll(D + 1) * beta) * pre.chi.values[c.banner];
            Rat now = cur.stats(a).chi + cur.stats(b).chi +
                      Rat(pow2ll(D + 1) * beta) * cur.chi.values[c.banner];
            if (then != now) return "step8-post: matched combination changed on edge {" + std::to_string(a) +
                                    "," + std::to_string(b) + "}";
        }
    }
    return {};
}

std::string th_monotonicity_failure(const CheckContext& ctx, const AlgorithmState& cur) {
    for (int s = 0; s < cur.sys->num_sets(); ++s) {
        SetStats now = cur.stats(s);
        if (now.th_pos > ctx.before_stats[s].th_pos || now.th_neg > ctx.before_stats[s].th_neg)
            return "thmonotone: threat increased on set " + std::to_string(s);
    }
    return {};
}

}  // namespace

RunResult run_from(AlgorithmState cur, const RunOptions& opt) {
    RunResult res;
    const long long d = cur.sys->degree;
    const long long X = cur.sys->n;
    const long long F = cur.sys->num_sets();
    long long cap = opt.step_cap;
    if (cap < 0) cap = std::max<long long>(16, 10 * d * X * (X + 4 * F));

    auto due = [&](long long stage) {
        if (opt.check == CheckMode::Off) return false;
        if (opt.check == CheckMode::PerStep) return true;
        return stage % std::max<long long>(1, opt.check_every) == 0;
    };

    long long stage = 0;
    while (true) {
        if (first_fireable_step(cur, opt.sign_convention) != 0 && res.steps_executed >= cap) {
            res.abort = AbortKind::StepCapExceeded;
            res.abort_detail = "step cap " + std::to_string(cap) + " exceeded";
            break;
        }
        ++stage;
        bool checking = due(stage);
        std::optional<CheckContext> ctx;
        if (checking) {
            ctx.emplace();
            ctx->before = cur;
            ctx->before_stats.reserve(F);
            for (int s = 0; s < F; ++s) ctx->before_stats.push_back(cur.stats(s));
        }

        StepRecord rec;
        rec.stage = stage;
        rec.potential_before = potential(cur);
        int frozen_before = cur.chi.frozen_count();

        std::string seed_failure;
        int step;
        try {
            step = execute_step(cur, rec.witness, opt.sign_convention, seed_failure);
        } catch (const std::logic_error& e) {
            res.abort = AbortKind::InternalError;
            res.abort_detail = e.what();
            break;
        }
        if (step == 0) {
            // terminated: every set is benign; any rounding stays within Th
            cur.chi = round_residual(cur, opt.sign_convention);
            res.final_coloring = cur.chi;
            Rat disc = discrepancy_of(*cur.sys, cur.chi);
            res.discrepancy = rat_num(disc) / rat_den(disc);
            res.bound_claimed = cur.benign_threshold();
            res.guarantee = check_inequalities(cur.profile, BigInt(d)).all_hold()
                                ? RunResult::Guarantee::Cohort2dMinusDelta
                                : RunResult::Guarantee::None;
            return res;
        }
        if (step == 9 && !seed_failure.empty()) {
            res.abort = AbortKind::SeedNotFound;
            res.abort_detail = seed_failure;
            break;
        }

        rec.step = step;
        rec.potential_after = potential(cur);
        rec.frozen_delta = cur.chi.frozen_count() - frozen_before;
        ++res.steps_executed;
        ++res.step_histogram[step];

        if (checking) {
            rec.checked = 1;
            InvariantReport rep = check_invariants(&ctx->before, cur);
            if (!rep.all_ok()) rec.failure = rep.first_failure();
            if (rec.failure.empty()) {
                LemmaReport lem = lemma_checks(cur);
                if (!lem.all_ok()) rec.failure = lem.first_failure();
            }
            if (rec.failure.empty()) rec.failure = th_monotonicity_failure(*ctx, cur);
            if (rec.failure.empty() && step == 8) rec.failure = step8_post_failures(*ctx, cur);
            if (!rec.failure.empty()) {
                if (opt.record_trace) res.trace.push_back(rec);
                res.abort = AbortKind::InvariantFailure;
                res.abort_detail = "stage " + std::to_string(stage) + ": " + rec.failure;
                break;
            }
        }
        if (opt.record_trace) res.trace.push_back(rec);
    }
    res.final_coloring = cur.chi;
    return res;
}

RunResult run(std::shared_ptr<const SetSystem> sys, ConstantProfile profile, const RunOptions& opt) {
    return run_from(init_state(std::move(sys), std::move(profile)), opt);
}

BigInt classic_bound(int d) {
    if (d >= 2) return 2 * BigInt(d) - 2;
    if (d == 1) return 1;
    return 0;
}

RunResult classic_beck_fiala_from(const std::shared_ptr<const SetSystem>& sys, FloatingColoring chi,
                                  const RunOptions& opt) {
    RunResult res;
    const SetSystem& S = *sys;
    const Rat bound{classic_bound(S.degree)};
    long long cap = opt.step_cap;
    if (cap < 0) cap = 4LL * S.n + 16;

    long long stage = 0;
    while (!chi.all_frozen()) {
        if (res.steps_executed >= cap) {
            res.abort = AbortKind::StepCapExceeded;
            res.abort_detail = "step cap " + std::to_string(cap) + " exceeded";
            res.final_coloring = chi;
            return res;
        }
        ++stage;
        StepRecord rec;
        rec.stage = stage;
        rec.potential_before = chi.frozen_count();

        std::vector<int> dangerous;
        for (int s = 0; s < S.num_sets(); ++s) {
            SetStats st = set_stats(S, chi, s);
            if (st.th > bound) dangerous.push_back(s);
        }
        LinearSystem lin;
        for (int x = 0; x < S.n; ++x)
            if (!chi.frozen(x)) lin.unknowns.push_back(x);
        for (int s : dangerous) {
            LinearRow row;
            for (int x : S.sets[s]) {
                if (chi.frozen(x)) continue;
                row.coeff[x] += 1;
                row.rhs += chi.values[x];
            }
            lin.rows.push_back(std::move(row));
        }

        auto dir = kernel_direction(lin);
        if (dir) {
            chi = walk_to_boundary(chi, *dir, opt.sign_convention);
            rec.step = 8;
        } else {
            // Degenerate regular case: every dangerous set has exactly d
            // floating elements and one-sided frozen mass d-1; rounding the
            // lowest floating element against that mass defuses all its sets.
            int x = -1;
            for (int cand = 0; cand < S.n && x < 0; ++cand)
                if (!chi.frozen(cand)) x = cand;
            int sigma = 0;
            for (int s : S.containing[x]) {
                SetStats st = set_stats(S, chi, s);
                if (!(st.th > bound)) continue;
                int this_sign = st.fr > 0 ? +1 : (st.fr < 0 ? -1 : 0);
                if (this_sign == 0 || (sigma != 0 && this_sign != sigma)) {
                    res.abort = AbortKind::InternalError;
                    res.abort_detail = "degenerate case without a one-sided frozen mass at element " +
                                       std::to_string(x);
                    res.final_coloring = chi;
                    return res;
                }
                sigma = this_sign;
            }
            if (sigma == 0) {
                res.abort = AbortKind::InternalError;
                res.abort_detail = "stuck without any dangerous set at element " + std::to_string(x);
                res.final_coloring = chi;
                return res;
            }
            chi.values[x] = -sigma;
            rec.step = 3;
            rec.witness.element = x;
            rec.witness.sign = -sigma;
        }
        rec.potential_after = chi.frozen_count();
        rec.frozen_delta = static_cast<int>(rec.potential_after - rec.potential_before);
        ++res.steps_executed;
        ++res.step_histogram[rec.step];
        if (opt.record_trace) res.trace.push_back(rec);
    }

    res.final_coloring = chi;
    Rat disc = discrepancy_of(S, chi);
    res.discrepancy = rat_num(disc) / rat_den(disc);
    res.bound_claimed = classic_bound(S.degree);
    if (Rat(res.discrepancy) > bound) {
        res.abort = AbortKind::InternalError;
        res.abort_detail = "classic output " + res.discrepancy.str() + " exceeds the bound " +
                           rat_to_string(bound);
        return res;
    }
    res.guarantee = S.degree >= 2 ? RunResult::Guarantee::Classic2dMinus2 : RunResult::Guarantee::None;
    return res;
}

RunResult classic_beck_fiala(const std::shared_ptr<const SetSystem>& sys, const RunOptions& opt) {
    return classic_beck_fiala_from(sys, zero_coloring(sys->n), opt);
}

std::string step_record_to_json(const StepRecord& rec) {
    json j;
    j["stage"] = rec.stage;
    j["step"] = rec.step;
    json w = json::object();
    if (rec.witness.set >= 0) w["set"] = rec.witness.set;
    if (rec.witness.set2 >= 0) w["set2"] = rec.witness.set2;
    if (rec.witness.element >= 0) w["element"] = rec.witness.element;
    if (rec.witness.cohort >= 0) w["cohort"] = rec.witness.cohort;
    if (rec.witness.sign != 0) w["sign"] = rec.witness.sign;
    j["witnesses"] = w;
    j["potential_before"] = rec.potential_before;
    j["potential_after"] = rec.potential_after;
    j["frozen_delta"] = rec.frozen_delta;
    if (rec.checked) {
        j["checked"] = true;
        j["failure"] = rec.failure;
    }
    return j.dump();
}

std::string trace_to_jsonl(const std::vector<StepRecord>& trace) {
    std::string out;
    for (const auto& rec : trace) {
        out += step_record_to_json(rec);
        out += "\n";
    }
    return out;
}

std::vector<StepRecord> trace_from_jsonl(const std::string& text) {
    std::vector<StepRecord> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        StepRecord rec;
        rec.stage = j.at("stage").get<long long>();
        rec.step = j.at("step").get<int>();
        const json& w = j.at("witnesses");
        if (w.contains("set")) rec.witness.set = w["set"].get<int>();
        if (w.contains("set2")) rec.witness.set2 = w["set2"].get<int>();
        if (w.contains("element")) rec.witness.element = w["element"].get<int>();
        if (w.contains("cohort")) rec.witness.cohort = w["cohort"].get<int>();
        if (w.contains("sign")) rec.witness.sign = w["sign"].get<int>();
        rec.potential_before = j.at("potential_before").get<long long>();
        rec.potential_after = j.at("potential_after").get<long long>();
        rec.frozen_delta = j.at("frozen_delta").get<int>();
        if (j.contains("checked") && j["checked"].get<bool>()) {
            rec.checked = 1;
            rec.failure = j.value("failure", std::string());
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace bf
