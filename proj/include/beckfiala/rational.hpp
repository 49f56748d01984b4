#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace bf {

// Exact arithmetic everywhere: freezing is the exact test chi(x) == +-1 and
// the perturbation line search must land exactly on the color-box boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Canonical "p/q" form (q always printed, q > 0).
std::string rat_to_string(const Rat& r);

// Accepts "p" or "p/q" with optional sign; throws std::invalid_argument.
Rat rat_from_string(const std::string& s);

// Number of bits of |x|; 0 for x == 0.
long long bit_length(const BigInt& x);

// 2^k for k >= 0, or nullopt when k exceeds bit_cap (value would need more
// than bit_cap bits).
std::optional<BigInt> checked_pow2(const BigInt& k, long long bit_cap);

BigInt pow2ll(long long k);

// Exact decision of value <= 2^k without materializing 2^k (value >= 1).
bool at_most_pow2(const BigInt& value, const BigInt& k);

}  // namespace bf
