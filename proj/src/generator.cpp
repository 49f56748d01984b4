#include "beckfiala/generator.hpp"

#include <algorithm>
#include <numeric>

namespace bf {

namespace {

// Draws `size` distinct elements with remaining capacity, decrementing it.
std::vector<int> draw_set(SplitMix64& rng, std::vector<int>& capacity, int size) {
    std::vector<int> pool;
    for (int x = 0; x < static_cast<int>(capacity.size()); ++x)
        if (capacity[x] > 0) pool.push_back(x);
    if (static_cast<int>(pool.size()) < size) return {};
    std::vector<int> out;
    for (int k = 0; k < size; ++k) {
        size_t i = rng.bounded(pool.size());
        out.push_back(pool[i]);
        --capacity[pool[i]];
        pool.erase(pool.begin() + i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SetSystem random_bounded(const GeneratorSpec& spec, bool tight) {
    SplitMix64 rng(spec.seed);
    std::vector<int> capacity(spec.n, spec.d);
    std::vector<std::vector<int>> sets;
    int max_size = std::min(2 * spec.d, spec.n);
    if (max_size < 2) max_size = std::min(2, spec.n);
    for (int i = 0; i < spec.num_sets; ++i) {
        int size;
        if (tight && i % 2 == 0) {
            size = std::min(spec.d, spec.n);
        } else {
            size = 2 + static_cast<int>(rng.bounded(std::max(1, max_size - 1)));
        }
        size = std::max(1, std::min(size, spec.n));
        auto s = draw_set(rng, capacity, size);
        if (s.empty())
            throw GeneratorError("infeasible parameters: capacity exhausted at set " + std::to_string(i));
        sets.push_back(std::move(s));
    }
    return make_set_system(spec.n, std::move(sets));
}

SetSystem near_regular(const GeneratorSpec& spec) {
    SplitMix64 rng(spec.seed);
    long long slots = static_cast<long long>(spec.n) * spec.d;
    int size = spec.num_sets > 0 ? static_cast<int>(std::max<long long>(2, slots / spec.num_sets)) : 2;
    size = std::min(size, spec.n);
    std::vector<std::vector<int>> sets;
    for (int pass = 0; pass < spec.d && static_cast<int>(sets.size()) < spec.num_sets; ++pass) {
        std::vector<int> perm(spec.n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = spec.n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.bounded(static_cast<uint64_t>(i) + 1)]);
        for (int at = 0; at + size <= spec.n && static_cast<int>(sets.size()) < spec.num_sets; at += size) {
            std::vector<int> s(perm.begin() + at, perm.begin() + at + size);
            std::sort(s.begin(), s.end());
            sets.push_back(std::move(s));
        }
    }
    if (static_cast<int>(sets.size()) < spec.num_sets)
        throw GeneratorError("infeasible parameters: cannot reach num_sets with degree " +
                             std::to_string(spec.d));
    return make_set_system(spec.n, std::move(sets));
}

}  // namespace

SetSystem generate(const GeneratorSpec& spec) {
    if (spec.n <= 0 || spec.num_sets <= 0 || spec.d <= 0)
        throw GeneratorError("generator needs positive n, num_sets and d");
    switch (spec.kind) {
        case GeneratorSpec::Kind::RandomBoundedDegree:
            return random_bounded(spec, false);
        case GeneratorSpec::Kind::NearRegular:
            return near_regular(spec);
        case GeneratorSpec::Kind::TightSets: {
            SetSystem sys = random_bounded(spec, true);
            int exact = 0;
            for (const auto& s : sys.sets)
                if (static_cast<int>(s.size()) == std::min(spec.d, spec.n)) ++exact;
            if (2 * exact < sys.num_sets())
                throw GeneratorError("tight-sets postcondition violated");
            return sys;
        }
    }
    throw GeneratorError("unknown generator kind");
}

GeneratorSpec::Kind kind_from_string(const std::string& s) {
    if (s == "random-bounded-degree") return GeneratorSpec::Kind::RandomBoundedDegree;
    if (s == "near-regular") return GeneratorSpec::Kind::NearRegular;
    if (s == "tight-sets") return GeneratorSpec::Kind::TightSets;
    throw GeneratorError("unknown generator kind: " + s);
}

std::string kind_to_string(GeneratorSpec::Kind k) {
    switch (k) {
        case GeneratorSpec::Kind::RandomBoundedDegree: return "random-bounded-degree";
        case GeneratorSpec::Kind::NearRegular: return "near-regular";
        case GeneratorSpec::Kind::TightSets: return "tight-sets";
    }
    return "?";
}

}  // namespace bf
