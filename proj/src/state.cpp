#include "beckfiala/state.hpp"

#include <json.hpp>

#include <algorithm>

namespace bf {

using nlohmann::json;

bool Cohort::is_matched(int s) const {
    for (const auto& [a, b] : matching)
        if (a == s || b == s) return true;
    return false;
}

std::vector<int> AlgorithmState::pool_sets() const {
    std::vector<int> out;
    for (int s = 0; s < sys->num_sets(); ++s)
        if (loc[s] == Loc::Pool) out.push_back(s);
    return out;
}

std::vector<int> AlgorithmState::benign_sets() const {
    std::vector<int> out;
    for (int s = 0; s < sys->num_sets(); ++s)
        if (loc[s] == Loc::Benign) out.push_back(s);
    return out;
}

int AlgorithmState::floating_count() const { return sys->n - chi.frozen_count(); }

BigInt AlgorithmState::benign_threshold() const { return 2 * BigInt(sys->degree) - profile.delta; }

void AlgorithmState::move_to_benign(int s) {
    if (loc[s] == Loc::InCohort) {
        Cohort& c = cohorts[cohort_of[s]];
        c.members.erase(std::find(c.members.begin(), c.members.end(), s));
    }
    loc[s] = Loc::Benign;
    cohort_of[s] = -1;
    defeats.erase(s);
}

void AlgorithmState::move_to_pool(int s) {
    if (loc[s] == Loc::InCohort) {
        Cohort& c = cohorts[cohort_of[s]];
        c.members.erase(std::find(c.members.begin(), c.members.end(), s));
    }
    loc[s] = Loc::Pool;
    cohort_of[s] = -1;
    defeats.erase(s);
}

void AlgorithmState::remove_cohort(int ci) {
    for (int s : cohorts[ci].members) {
        loc[s] = Loc::Pool;  // callers move members out beforehand when needed
        cohort_of[s] = -1;
        defeats.erase(s);
    }
    cohorts.erase(cohorts.begin() + ci);
    for (int s = 0; s < sys->num_sets(); ++s)
        if (cohort_of[s] > ci) --cohort_of[s];
}

AlgorithmState init_state(std::shared_ptr<const SetSystem> sys, ConstantProfile profile) {
    profile.validate();
    AlgorithmState st;
    st.chi = zero_coloring(sys->n);
    st.loc.assign(sys->num_sets(), AlgorithmState::Loc::Pool);
    st.cohort_of.assign(sys->num_sets(), -1);
    st.sys = std::move(sys);
    st.profile = std::move(profile);
    return st;
}

long long potential(const AlgorithmState& st) {
    long long I = st.chi.frozen_count();
    I += 4 * static_cast<long long>(st.benign_sets().size());
    I -= static_cast<long long>(st.cohorts.size());
    for (const auto& c : st.cohorts)
        I += static_cast<long long>(c.matching.size()) + static_cast<long long>(c.members.size());
    return I;
}

std::string state_to_json(const AlgorithmState& st) {
    json j;
    std::vector<std::string> chi;
    chi.reserve(st.sys->n);
    for (int x = 0; x < st.sys->n; ++x) chi.push_back(rat_to_string(st.chi.values[x]));
    j["chi"] = chi;
    j["benign"] = st.benign_sets();
    j["pool"] = st.pool_sets();
    json jc = json::array();
    for (const auto& c : st.cohorts) {
        json e;
        e["members"] = c.members;
        e["banner"] = c.banner;
        e["sign"] = c.sign;
        e["rank"] = c.rank;
        e["matching"] = c.matching;
        jc.push_back(e);
    }
    j["cohorts"] = jc;
    json jd = json::object();
    for (const auto& [s, dcount] : st.defeats) jd[std::to_string(s)] = dcount;
    j["defeats"] = jd;
    j["profile"] = json::parse(profile_to_json(st.profile));
    return j.dump();
}

AlgorithmState state_from_json(std::shared_ptr<const SetSystem> sys, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed state document: ") + e.what());
    }
    AlgorithmState st;
    st.sys = std::move(sys);
    try {
        st.profile = profile_from_json(j.at("profile").dump());
        for (const auto& v : j.at("chi")) st.chi.values.push_back(rat_from_string(v.get<std::string>()));
        if (st.chi.size() != st.sys->n) throw ParseError("chi length does not match n");
        for (int x = 0; x < st.sys->n; ++x)
            if (st.chi.values[x] < -1 || st.chi.values[x] > 1)
                throw ParseError("chi value out of [-1,1] at element " + std::to_string(x));
        const int m = st.sys->num_sets();
        st.loc.assign(m, AlgorithmState::Loc::Pool);
        st.cohort_of.assign(m, -1);
        std::vector<int> seen(m, 0);
        for (const auto& v : j.at("benign")) {
            int s = v.get<int>();
            st.loc.at(s) = AlgorithmState::Loc::Benign;
            ++seen.at(s);
        }
        for (const auto& v : j.at("pool")) ++seen.at(v.get<int>());
        int ci = 0;
        for (const auto& e : j.at("cohorts")) {
            Cohort c;
            for (const auto& v : e.at("members")) {
                int s = v.get<int>();
                c.members.push_back(s);
                st.loc.at(s) = AlgorithmState::Loc::InCohort;
                st.cohort_of.at(s) = ci;
                ++seen.at(s);
            }
            std::sort(c.members.begin(), c.members.end());
            c.banner = e.at("banner").get<int>();
            if (c.banner < 0 || c.banner >= st.sys->n) throw ParseError("cohort banner out of range");
            c.sign = e.at("sign").get<int>();
            if (c.sign != 1 && c.sign != -1) throw ParseError("cohort sign must be +-1");
            c.rank = e.at("rank").get<int>();
            if (c.rank < 0 || c.rank >= st.profile.delta) throw ParseError("cohort rank out of range");
            for (const auto& ed : e.at("matching")) {
                int a = ed.at(0).get<int>(), b = ed.at(1).get<int>();
                if (a > b) std::swap(a, b);
                if (a == b || !std::binary_search(c.members.begin(), c.members.end(), a) ||
                    !std::binary_search(c.members.begin(), c.members.end(), b))
                    throw ParseError("matching edge not within cohort members");
                c.matching.emplace_back(a, b);
            }
            std::sort(c.matching.begin(), c.matching.end());
            st.cohorts.push_back(std::move(c));
            ++ci;
        }
        for (auto it = j.at("defeats").begin(); it != j.at("defeats").end(); ++it) {
            int s = std::stoi(it.key());
            long long v = it.value().get<long long>();
            if (v < 0) throw ParseError("defeat counts must be nonnegative");
            st.defeats[s] = v;
        }
        for (int s = 0; s < m; ++s) {
            if (seen[s] != 1) throw ParseError("set " + std::to_string(s) + " does not appear exactly once in the partition");
            bool in_cohort = st.loc[s] == AlgorithmState::Loc::InCohort;
            if (in_cohort != (st.defeats.count(s) > 0))
                throw ParseError("defeats must be defined exactly on cohort members (set " + std::to_string(s) + ")");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad state document: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(std::string("bad state document: ") + e.what());
    }
    return st;
}

}  // namespace bf
