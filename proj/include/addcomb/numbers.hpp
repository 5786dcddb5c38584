#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "addcomb/errors.hpp"

namespace addcomb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// base^exp by binary powering; exp is a plain machine integer on purpose —
// every exponent in this library is small even when the values are huge.
Int ipow(const Int& base, std::uint64_t exp);

bool is_power_of_two(std::uint64_t k);

// Largest r with r^k <= v (v >= 0, k >= 1).
Int iroot_floor(const Int& v, unsigned k);

// Parses "p/q", "p", with optional sign; rejects q == 0.
Rat parse_rational(const std::string& text);
std::string rational_to_string(const Rat& r);

// Closed interval of exact rationals. Used for certified bounds on
// logarithms; all arithmetic rounds outward.
struct RatInterval {
    Rat lo;
    Rat hi;

    static RatInterval exact(const Rat& v) { return {v, v}; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

RatInterval interval_add(const RatInterval& a, const RatInterval& b);
RatInterval interval_sub(const RatInterval& a, const RatInterval& b);
// Both operands must be non-negative intervals.
RatInterval interval_mul_nonneg(const RatInterval& a, const RatInterval& b);
// Divisor interval must be strictly positive.
RatInterval interval_div_pos(const RatInterval& a, const RatInterval& b);

// Certified bounds on log2(x) for rational x > 0, with hi - lo <= 2^-precision_bits.
// Fixed-point squaring with outward rounding; no floating point.
RatInterval log2_bounds(const Rat& x, unsigned precision_bits = 32);

// Sign of log(t1)/log(m1) - log(t2)/log(m2) for integers t1,t2 >= 1 and
// m1,m2 >= 2: the exact comparison behind "zeta never decreases".
// Interval refinement plus small-denominator rational proofs; throws
// InternalError if 512-bit precision and denominator-64 proofs both fail
// to separate (not reachable for the magnitudes this library handles).
int compare_log_ratio(const Int& t1, const Int& m1, const Int& t2, const Int& m2);

// FNV-1a over bytes; used for input digests in reports (not cryptographic).
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace addcomb
