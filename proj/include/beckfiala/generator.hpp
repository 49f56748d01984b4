#pragma once

#include "beckfiala/set_system.hpp"

#include <cstdint>

namespace bf {

// SplitMix64: the documented generator; seeds reproduce across platforms.
// Bounded sampling uses the multiply-shift reduction (x * k) >> 64.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, k)
    uint64_t bounded(uint64_t k) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * k) >> 64);
    }
};

struct GeneratorSpec {
    enum class Kind { RandomBoundedDegree, NearRegular, TightSets };
    Kind kind = Kind::RandomBoundedDegree;
    int n = 0;
    int num_sets = 0;
    int d = 0;  // degree bound, respected exactly
    uint64_t seed = 0;
};

struct GeneratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SetSystem generate(const GeneratorSpec& spec);

GeneratorSpec::Kind kind_from_string(const std::string& s);
std::string kind_to_string(GeneratorSpec::Kind k);

}  // namespace bf
