#include "beckfiala/rational.hpp"

namespace bf {

std::string rat_to_string(const Rat& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(s));
        }
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

long long bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

std::optional<BigInt> checked_pow2(const BigInt& k, long long bit_cap) {
    if (k < 0) return std::nullopt;
    if (k >= bit_cap) return std::nullopt;
    BigInt one = 1;
    return BigInt(one << static_cast<unsigned>(k.convert_to<unsigned long long>()));
}

BigInt pow2ll(long long k) {
    BigInt one = 1;
    return BigInt(one << static_cast<unsigned>(k));
}

bool at_most_pow2(const BigInt& value, const BigInt& k) {
    if (value < 1) throw std::invalid_argument("at_most_pow2 requires value >= 1");
    if (k < 0) return false;
    BigInt bl = bit_length(value);
    // 2^k has bit length k+1.
    if (bl <= k) return true;
    if (bl > k + 1) return false;
    // bl == k+1: equal only when value is exactly 2^k.
    BigInt low = value & (value - 1);
    return low == 0;
}

}  // namespace bf
