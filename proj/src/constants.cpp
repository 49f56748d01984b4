#include "beckfiala/constants.hpp"

#include <json.hpp>

#include <algorithm>

namespace bf {

using nlohmann::json;

long long log_star(const BigInt& x) {
    if (x < 1) throw std::invalid_argument("log_star requires x >= 1");
    if (x == 1) return 0;
    // log* is constant between consecutive tower values 2, 4, 16, 65536, ...
    // and those are integers, so iterating x -> ceil(log2 x) is exact.
    BigInt cur = x;
    long long t = 0;
    while (cur > 2) {
        cur = bit_length(cur - 1);  // ceil(log2 cur)
        ++t;
    }
    return t + 1;  // cur == 2, one final log reaches 1
}

BigInt r_term(long long D, long long delta) {
    if (D < 0) throw std::invalid_argument("r_term requires D >= 0");
    BigInt p = pow2ll(D);
    return (BigInt(D) - 2) * p - (p - 1) * delta + 2;
}

void ConstantProfile::validate() const {
    auto fail = [](const std::string& m) { throw ProfileError(ProfileError::Kind::Invalid, m); };
    if (delta < 1) fail("delta must be positive");
    if (!(alpha > 0 && alpha < 1)) fail("alpha must lie in (0,1)");
    if (static_cast<long long>(tw.size()) != delta) fail("tw table must have delta entries");
    if (static_cast<long long>(beta.size()) != delta) fail("beta table must have delta entries");
    for (const auto& v : tw)
        if (v < 1) fail("tw entries must be positive");
    for (const auto& v : beta)
        if (v < 1) fail("beta entries must be positive");
    if (w < 0) fail("w must be nonnegative");
}

ConstantProfile paper_tables(const BigInt& d, long long bit_cap) {
    if (d < 2) throw ProfileError(ProfileError::Kind::Invalid, "paper profile requires d >= 2");
    ConstantProfile p;
    p.source = ConstantProfile::Source::PaperDerived;
    p.tower_bit_cap = bit_cap;
    p.delta = log_star(d);
    p.alpha = Rat(1, 4);
    for (long long r = 0; r < p.delta; ++r) {
        if (r < 2) {
            p.tw.emplace_back(p.delta);
        } else {
            auto v = checked_pow2(8 * p.tw[r - 2], bit_cap);
            if (!v)
                throw ProfileError(ProfileError::Kind::TowerOverflow,
                                   "Tw_" + std::to_string(r) + " exceeds the " +
                                       std::to_string(bit_cap) + "-bit tower cap");
            p.tw.push_back(*v);
        }
        p.beta.push_back(4 * p.tw.back());
    }
    p.w = d / (64 * BigInt(p.delta) * p.delta * p.tw[p.delta - 1]);
    // Construction-time self-check of the recurrence and beta = 4*Tw.
    for (long long r = 0; r < p.delta; ++r) {
        bool ok;
        if (r < 2) {
            ok = p.tw[r] == p.delta;
        } else {
            auto expect = checked_pow2(8 * p.tw[r - 2], bit_cap);
            ok = expect && p.tw[r] == *expect;
        }
        if (!ok || p.beta[r] != 4 * p.tw[r])
            throw ProfileError(ProfileError::Kind::Invalid, "paper table recurrence self-check failed");
    }
    p.validate();
    return p;
}

ConstantProfile paper_profile(const BigInt& d, long long bit_cap) {
    ConstantProfile p = paper_tables(d, bit_cap);
    if (p.w < 1)
        throw ProfileError(ProfileError::Kind::InfeasibleW,
                           "paper profile infeasible at d=" + d.str() + ": W = floor(d/(64*delta^2*Tw_{delta-1})) = 0 " +
                               "(delta=" + std::to_string(p.delta) + ")");
    return p;
}

ConstantProfile manual_profile(long long delta, const Rat& alpha, std::vector<BigInt> tw,
                               std::vector<BigInt> beta, const BigInt& w) {
    ConstantProfile p;
    p.source = ConstantProfile::Source::Manual;
    p.delta = delta;
    p.alpha = alpha;
    p.tw = std::move(tw);
    p.beta = std::move(beta);
    p.w = w;
    p.validate();
    if (p.w < 1) throw ProfileError(ProfileError::Kind::Invalid, "manual profile requires w >= 1");
    return p;
}

namespace {

BigInt big_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ProfileError(ProfileError::Kind::Invalid, std::string(what) + " must be an integer or decimal string");
}

json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

}  // namespace

ConstantProfile profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ProfileError(ProfileError::Kind::Invalid, std::string("malformed profile document: ") + e.what());
    }
    if (!j.is_object()) throw ProfileError(ProfileError::Kind::Invalid, "profile must be a JSON object");
    ConstantProfile p;
    try {
        p.delta = j.at("delta").get<long long>();
        if (j.at("alpha").is_string())
            p.alpha = rat_from_string(j.at("alpha").get<std::string>());
        else
            p.alpha = Rat(j.at("alpha").get<long long>());
        for (const auto& v : j.at("tw")) p.tw.push_back(big_from_json(v, "tw entry"));
        for (const auto& v : j.at("beta")) p.beta.push_back(big_from_json(v, "beta entry"));
        p.w = big_from_json(j.at("w"), "w");
        if (j.contains("tower_bit_cap")) p.tower_bit_cap = j["tower_bit_cap"].get<long long>();
        if (j.contains("source") && j["source"].get<std::string>() == "paper")
            p.source = ConstantProfile::Source::PaperDerived;
    } catch (const json::exception& e) {
        throw ProfileError(ProfileError::Kind::Invalid, std::string("bad profile field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ProfileError(ProfileError::Kind::Invalid, std::string("bad profile field: ") + e.what());
    }
    p.validate();
    if (p.w < 1) throw ProfileError(ProfileError::Kind::Invalid, "profile requires w >= 1");
    return p;
}

std::string profile_to_json(const ConstantProfile& p) {
    json j;
    j["delta"] = p.delta;
    j["alpha"] = rat_to_string(p.alpha);
    json tw = json::array(), beta = json::array();
    for (const auto& v : p.tw) tw.push_back(big_to_json(v));
    for (const auto& v : p.beta) beta.push_back(big_to_json(v));
    j["tw"] = tw;
    j["beta"] = beta;
    j["w"] = big_to_json(p.w);
    j["source"] = p.source == ConstantProfile::Source::PaperDerived ? "paper" : "manual";
    j["tower_bit_cap"] = p.tower_bit_cap;
    return j.dump();
}

bool InequalityReport::all_hold() const {
    return std::all_of(entries.begin(), entries.end(), [](const InequalityEntry& e) {
        return e.verdict == InequalityEntry::Verdict::Holds ||
               e.verdict == InequalityEntry::Verdict::NotApplicable;
    });
}

const InequalityEntry* InequalityReport::find(char id, int r) const {
    for (const auto& e : entries)
        if (e.id == id && e.r == r) return &e;
    return nullptr;
}

namespace {

using V = InequalityEntry::Verdict;

// Q >= 2^k for Q >= 0, k >= 0, without materializing 2^k.
bool ge_pow2(const BigInt& Q, const BigInt& k) {
    if (Q <= 0) return false;
    return BigInt(bit_length(Q)) > k;
}

std::string fmt_rat(const Rat& v) {
    BigInt num = rat_num(v), den = rat_den(v);
    if (bit_length(num) > 160)
        return (num < 0 ? std::string("-~2^") : std::string("~2^")) + std::to_string(bit_length(num) - 1) +
               (den == 1 ? "" : "/" + den.str());
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string fmt_big(const BigInt& v) { return fmt_rat(Rat(v)); }

InequalityEntry entry(char id, int r, V verdict, std::string lhs, std::string rhs) {
    return InequalityEntry{id, r, verdict, std::move(lhs), std::move(rhs)};
}

// M >= 2^k for a rational M, exactly; 2^k is an integer so this reduces to
// floor(num/den) >= 2^k.
bool rat_ge_pow2(const Rat& M, const BigInt& k) {
    if (M <= 0) return false;
    return ge_pow2(rat_num(M) / rat_den(M), k);
}

}  // namespace

InequalityReport check_inequalities(const ConstantProfile& p, const BigInt& d) {
    p.validate();
    InequalityReport rep;
    const long long delta = p.delta;
    const Rat alpha = p.alpha;
    const BigInt& twLast = p.tw[delta - 1];

    for (long long r = 0; r < delta; ++r) {  // (a) delta <= Tw_r
        bool ok = BigInt(delta) <= p.tw[r];
        rep.entries.push_back(entry('a', (int)r, ok ? V::Holds : V::Fails, std::to_string(delta), fmt_big(p.tw[r])));
    }
    for (long long r = 0; r < delta; ++r) {  // (b) Tw_r + delta < beta_r (1 - alpha)
        Rat lhs = Rat(p.tw[r] + delta), rhs = Rat(p.beta[r]) * (1 - alpha);
        rep.entries.push_back(entry('b', (int)r, lhs < rhs ? V::Holds : V::Fails, fmt_rat(lhs), fmt_rat(rhs)));
    }
    for (long long r = 0; r < delta; ++r) {  // (c) (beta_r+1) alpha + Tw_r + delta <= 4 Tw_r
        Rat lhs = Rat(p.beta[r] + 1) * alpha + Rat(p.tw[r]) + delta;
        Rat rhs = Rat(4 * p.tw[r]);
        rep.entries.push_back(entry('c', (int)r, lhs <= rhs ? V::Holds : V::Fails, fmt_rat(lhs), fmt_rat(rhs)));
    }
    for (long long r = 0; r < delta; ++r) {  // (d) 16 Tw_r <= 2^(16 Tw_{r-2})
        if (r < 2) {
            rep.entries.push_back(entry('d', (int)r, V::NotApplicable, "", "Tw_{r-2} undefined"));
            continue;
        }
        BigInt k = 16 * p.tw[r - 2];
        bool ok = at_most_pow2(16 * p.tw[r], k);
        rep.entries.push_back(entry('d', (int)r, ok ? V::Holds : V::Fails, fmt_big(16 * p.tw[r]), "2^(" + fmt_big(k) + ")"));
    }
    {  // (e) Tw_{delta-1} <= log log d  <=>  d >= 2^(2^Tw)  <=>  bits(d) > 2^Tw
        bool ok;
        if (twLast >= 64) {
            ok = false;  // 2^Tw >= 2^64 exceeds the bit length of any storable d
        } else {
            BigInt k = pow2ll(twLast.convert_to<long long>());
            ok = ge_pow2(d, k);
        }
        rep.entries.push_back(entry('e', -1, ok ? V::Holds : V::Fails, fmt_big(twLast), "log log " + fmt_big(d)));
    }
    {  // (f) 2 Tw_{delta-1} + (2 - alpha) delta <= alpha d
        Rat lhs = Rat(2 * twLast) + (Rat(2) - alpha) * delta;
        Rat rhs = alpha * Rat(d);
        rep.entries.push_back(entry('f', -1, lhs <= rhs ? V::Holds : V::Fails, fmt_rat(lhs), fmt_rat(rhs)));
    }
    {  // (g) d >= W delta (delta + 2 Tw_{delta-1} + 2)(8 + 4 delta)
        BigInt rhs = p.w * delta * (delta + 2 * twLast + 2) * (8 + 4 * BigInt(delta));
        rep.entries.push_back(entry('g', -1, d >= rhs ? V::Holds : V::Fails, fmt_big(d), fmt_big(rhs)));
    }
    for (long long r = 0; r < delta; ++r) {  // (h) 2^(8 Tw_r + 6) Tw_r < W
        BigInt k = 8 * p.tw[r] + 6;
        bool ok;
        std::string lhs;
        if (p.w < 1 || at_most_pow2(p.w, k)) {
            ok = false;  // lhs >= 2^k >= W, so strict < is impossible
            lhs = "2^(" + fmt_big(k) + ")*" + fmt_big(p.tw[r]);
        } else {
            // W > 2^k, so k < bits(W) is small enough to materialize.
            BigInt v = pow2ll(k.convert_to<long long>()) * p.tw[r];
            ok = v < p.w;
            lhs = fmt_big(v);
        }
        rep.entries.push_back(entry('h', (int)r, ok ? V::Holds : V::Fails, lhs, fmt_big(p.w)));
    }
    for (long long r = 0; r < delta; ++r) {
        // (i) (1-alpha/2)(2d-delta) >= (1-alpha/2)d + 2^(4Tw_r+1) beta_r alpha
        //                              + 2^(4Tw_r+1) Tw_r + 2^(4Tw_r) delta
        Rat lhs = (Rat(1) - alpha / 2) * (Rat(2 * d) - delta);
        BigInt k = 4 * p.tw[r];
        auto pk = checked_pow2(k, p.tower_bit_cap);
        if (pk) {
            Rat rhs = (Rat(1) - alpha / 2) * Rat(d) + Rat(*pk * 2) * Rat(p.beta[r]) * alpha +
                      Rat(*pk * 2) * Rat(p.tw[r]) + Rat(*pk) * delta;
            rep.entries.push_back(entry('i', (int)r, lhs >= rhs ? V::Holds : V::Fails, fmt_rat(lhs), fmt_rat(rhs)));
        } else if (!rat_ge_pow2(lhs, k)) {
            // rhs >= 2^(4Tw_r) * delta >= 2^k > lhs
            rep.entries.push_back(entry('i', (int)r, V::Fails, fmt_rat(lhs), ">= 2^(" + fmt_big(k) + ")"));
        } else {
            rep.entries.push_back(entry('i', (int)r, V::Unrepresentable, fmt_rat(lhs), "2^(" + fmt_big(k) + ")*..."));
        }
    }
    for (long long r = 0; r < delta; ++r) {
        // (j) Tw_{r+2} >= 2^(4Tw_r+1) beta_r alpha + 2^(4Tw_r+1) Tw_r + 2^(4Tw_r) delta
        //     rhs == 2^(4Tw_r) * M with M = 2 beta_r alpha + 2 Tw_r + delta.
        Rat M = Rat(2 * p.beta[r]) * alpha + Rat(2 * p.tw[r]) + delta;
        BigInt k = 4 * p.tw[r];
        bool have_lhs_value = r + 2 < delta;
        std::string rhs_str = "2^(" + fmt_big(k) + ")*(" + fmt_rat(M) + ")";
        if (!have_lhs_value && p.source != ConstantProfile::Source::PaperDerived) {
            rep.entries.push_back(entry('j', (int)r, V::NotApplicable, "Tw_" + std::to_string(r + 2) + " out of table", rhs_str));
            continue;
        }
        if (have_lhs_value) {
            const BigInt& lhs = p.tw[r + 2];
            auto pk = checked_pow2(k, p.tower_bit_cap);
            bool ok;
            if (pk) {
                ok = Rat(lhs) >= Rat(*pk) * M;
            } else {
                // lhs >= 2^k * M  <=>  floor(lhs * den(M) / num(M)) >= 2^k
                ok = ge_pow2((lhs * rat_den(M)) / rat_num(M), k);
            }
            rep.entries.push_back(entry('j', (int)r, ok ? V::Holds : V::Fails, fmt_big(lhs), rhs_str));
        } else {
            // Paper recurrence: Tw_{r+2} = 2^(8 Tw_r) = 2^k * 2^k, so the test
            // reduces to 2^k >= M, i.e. ceil(M) <= 2^k.
            BigInt c = rat_num(M) / rat_den(M);
            if (rat_num(M) % rat_den(M) != 0) c += 1;
            bool ok = at_most_pow2(c, k);
            rep.entries.push_back(entry('j', (int)r, ok ? V::Holds : V::Fails, "2^(" + fmt_big(8 * p.tw[r]) + ")", rhs_str));
        }
    }
    return rep;
}

std::string inequality_report_to_json(const InequalityReport& rep) {
    json arr = json::array();
    for (const auto& e : rep.entries) {
        json je;
        je["id"] = std::string(1, e.id);
        if (e.r >= 0) je["r"] = e.r;
        switch (e.verdict) {
            case V::Holds: je["verdict"] = "holds"; break;
            case V::Fails: je["verdict"] = "fails"; break;
            case V::Unrepresentable: je["verdict"] = "unrepresentable"; break;
            case V::NotApplicable: je["verdict"] = "not-applicable"; break;
        }
        je["lhs"] = e.lhs;
        je["rhs"] = e.rhs;
        arr.push_back(je);
    }
    json j;
    j["inequalities"] = arr;
    j["all_hold"] = rep.all_hold();
    return j.dump();
}

}  // namespace bf
