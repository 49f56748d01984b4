#include "beckfiala/oracle.hpp"

#include <bit>
#include <cstdint>
#include <limits>

namespace bf {

long long brute_force_discrepancy(const SetSystem& sys, int cap) {
    if (sys.n > cap)
        throw std::invalid_argument("brute force capped at n <= " + std::to_string(cap) +
                                    " (got n = " + std::to_string(sys.n) + ")");
    std::vector<uint32_t> masks;
    std::vector<int> sizes;
    masks.reserve(sys.sets.size());
    for (const auto& s : sys.sets) {
        uint32_t m = 0;
        for (int x : s) m |= uint32_t(1) << x;
        masks.push_back(m);
        sizes.push_back(static_cast<int>(s.size()));
    }

    long long best = std::numeric_limits<long long>::max();
    const uint64_t count = sys.n == 0 ? 1 : (uint64_t(1) << (sys.n - 1));
    for (uint64_t half = 0; half < count; ++half) {
        uint32_t neg = static_cast<uint32_t>(half) << 1;  // element 0 stays +1
        long long worst = 0;
        for (size_t i = 0; i < masks.size(); ++i) {
            long long sum = sizes[i] - 2LL * std::popcount(masks[i] & neg);
            worst = std::max(worst, sum < 0 ? -sum : sum);
            if (worst >= best) break;
        }
        best = std::min(best, worst);
        if (best == 0) break;
    }
    return best;
}

}  // namespace bf
