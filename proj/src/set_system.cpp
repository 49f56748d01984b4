#include "beckfiala/set_system.hpp"

#include <json.hpp>

#include <algorithm>

namespace bf {

using nlohmann::json;

SetSystem make_set_system(int n, std::vector<std::vector<int>> sets) {
    if (n < 0) throw ParseError("n must be nonnegative");
    if (sets.empty()) throw ParseError("empty family");
    SetSystem sys;
    sys.n = n;
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= n)
                throw ParseError("element index " + std::to_string(s[i]) + " out of range [0," +
                                 std::to_string(n) + ")");
            if (i > 0 && s[i] == s[i - 1])
                throw ParseError("duplicate element " + std::to_string(s[i]) + " within a set");
        }
    }
    sys.sets = std::move(sets);
    sys.containing.assign(n, {});
    for (int i = 0; i < sys.num_sets(); ++i)
        for (int x : sys.sets[i]) sys.containing[x].push_back(i);
    sys.degree = 0;
    for (int x = 0; x < n; ++x)
        sys.degree = std::max(sys.degree, static_cast<int>(sys.containing[x].size()));
    return sys;
}

SetSystem parse_set_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
        throw ParseError("instance document must be an object with \"n\" and \"sets\"");
    if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    if (!j["sets"].is_array()) throw ParseError("\"sets\" must be an array");
    int n = j["n"].get<int>();
    std::vector<std::vector<int>> sets;
    for (const auto& js : j["sets"]) {
        if (!js.is_array()) throw ParseError("each set must be an array of element indices");
        std::vector<int> s;
        for (const auto& je : js) {
            if (!je.is_number_integer()) throw ParseError("element indices must be integers");
            s.push_back(je.get<int>());
        }
        sets.push_back(std::move(s));
    }
    return make_set_system(n, std::move(sets));
}

std::string instance_to_json(const SetSystem& sys) {
    json j;
    j["n"] = sys.n;
    j["sets"] = sys.sets;
    return j.dump();
}

int FloatingColoring::frozen_count() const {
    int c = 0;
    for (int x = 0; x < size(); ++x)
        if (frozen(x)) ++c;
    return c;
}

bool FloatingColoring::all_frozen() const { return frozen_count() == size(); }

FloatingColoring zero_coloring(int n) {
    FloatingColoring chi;
    chi.values.assign(n, Rat(0));
    return chi;
}

SetStats set_stats(const SetSystem& sys, const FloatingColoring& chi, int s) {
    if (s < 0 || s >= sys.num_sets()) throw std::out_of_range("set index out of range");
    SetStats st;
    for (int x : sys.sets[s]) {
        const Rat& v = chi.values[x];
        st.chi += v;
        if (chi.frozen(x)) {
            st.fr += v;
        } else {
            st.fl += v;
            ++st.sz;
        }
    }
    st.th_neg = Rat(st.sz) - st.fr;
    st.th_pos = Rat(st.sz) + st.fr;
    st.th = std::max(st.th_neg, st.th_pos);
    return st;
}

Rat discrepancy_of(const SetSystem& sys, const FloatingColoring& chi) {
    Rat best = 0;
    for (int s = 0; s < sys.num_sets(); ++s) {
        Rat v = 0;
        for (int x : sys.sets[s]) v += chi.values[x];
        if (v < 0) v = -v;
        if (v > best) best = v;
    }
    return best;
}

std::string coloring_to_json(const SetSystem& sys, const FloatingColoring& chi) {
    if (!chi.all_frozen()) throw std::logic_error("coloring_to_json requires an all-frozen coloring");
    json j;
    std::vector<int> colors;
    colors.reserve(chi.size());
    for (int x = 0; x < chi.size(); ++x) colors.push_back(chi.values[x] == 1 ? 1 : -1);
    j["colors"] = colors;
    Rat d = discrepancy_of(sys, chi);
    j["discrepancy"] = rat_num(d).convert_to<long long>();
    return j.dump();
}

FloatingColoring coloring_from_json(const SetSystem& sys, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed coloring document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("colors") || !j["colors"].is_array())
        throw ParseError("coloring document must contain a \"colors\" array");
    FloatingColoring chi;
    for (const auto& je : j["colors"]) {
        if (!je.is_number_integer()) throw ParseError("colors must be integers");
        long long v = je.get<long long>();
        if (v != 1 && v != -1) throw ParseError("non-frozen color entry " + std::to_string(v));
        chi.values.push_back(Rat(v));
    }
    if (chi.size() != sys.n) throw ParseError("coloring length does not match n");
    return chi;
}

}  // namespace bf
