#include "addcomb/numbers.hpp"

#include <algorithm>
#include <cstddef>

namespace addcomb {

Int ipow(const Int& base, std::uint64_t exp) {
    Int result = 1;
    Int b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

bool is_power_of_two(std::uint64_t k) { return k != 0 && (k & (k - 1)) == 0; }

Int iroot_floor(const Int& v, unsigned k) {
    if (v < 0) throw UsageError("iroot_floor: negative argument");
    if (k == 0) throw UsageError("iroot_floor: zeroth root");
    if (v == 0 || v == 1 || k == 1) return v;
    // Binary search on r in [1, 2^(ceil(bits/k))].
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    Int hi = Int(1) << (bits / k + 1);
    Int lo = 1;
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (ipow(mid, k) <= v)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw UsageError("rational with zero denominator: " + text);
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse rational '" + text + "': " + e.what());
    }
}

std::string rational_to_string(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

RatInterval interval_add(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval interval_sub(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval interval_mul_nonneg(const RatInterval& a, const RatInterval& b) {
    if (a.lo < 0 || b.lo < 0) throw InternalError("interval_mul_nonneg: negative operand");
    return {a.lo * b.lo, a.hi * b.hi};
}

RatInterval interval_div_pos(const RatInterval& a, const RatInterval& b) {
    if (b.lo <= 0) throw InternalError("interval_div_pos: divisor not strictly positive");
    return {a.lo / b.hi, a.hi / b.lo};
}

namespace {

// Fixed-point mantissa with F fraction bits; [lo, hi] always brackets the
// true value. Squaring doubles the relative error, so F leaves headroom
// over the requested precision.
struct FixedInterval {
    Int lo, hi;       // value in [lo/2^F, hi/2^F]
    unsigned F;

    void square() {
        lo = (lo * lo) >> F;             // floor
        Int h = hi * hi;
        hi = (h + ((Int(1) << F) - 1)) >> F; // ceil
    }
    void halve() {
        Int one = Int(1);
        hi = (hi + 1) >> 1; // ceil
        lo = lo >> 1;       // floor
        (void)one;
    }
};

} // namespace

RatInterval log2_bounds(const Rat& x, unsigned precision_bits) {
    if (x <= 0) throw UsageError("log2_bounds: argument must be positive");
    const unsigned F = precision_bits + 64;

    // Normalize x = 2^e * y with y in [1, 2).
    Int p = rat_num(x), q = rat_den(x);
    long e = 0;
    while (p < q) { p <<= 1; --e; }
    while (p >= 2 * q) { q <<= 1; ++e; }

    // y as a fixed-point bracket.
    FixedInterval y;
    y.F = F;
    y.lo = (p << F) / q;                      // floor(p*2^F/q)
    y.hi = ((p << F) + q - 1) / q;            // ceil
    const Int two_fixed = Int(2) << F;        // 2.0
    (void)two_fixed;

    Rat frac_lo = 0, frac_hi = 0;
    Rat bit_value(1, 2);
    const Int two = Int(1) << (F + 1);
    for (unsigned i = 0; i < precision_bits; ++i) {
        y.square();
        bool lo_ge2 = y.lo >= two;
        bool hi_ge2 = y.hi >= two;
        if (lo_ge2 && hi_ge2) {
            frac_lo += bit_value;
            frac_hi += bit_value;
            y.lo >>= 1;
            y.hi = (y.hi + 1) >> 1;
        } else if (!lo_ge2 && !hi_ge2) {
            // bit is 0 for both
        } else {
            // Bracket straddles 2: the bit is uncertain; account for it in
            // the upper bound and stop refining.
            frac_hi += bit_value * 2; // remaining tail < 2*bit_value
            break;
        }
        bit_value /= 2;
    }
    // Unconsumed tail of the binary expansion.
    frac_hi += bit_value * 2;
    if (frac_hi > 1) frac_hi = 1;

    return {Rat(e) + frac_lo, Rat(e) + frac_hi};
}

int compare_log_ratio(const Int& t1, const Int& m1, const Int& t2, const Int& m2) {
    if (t1 < 1 || t2 < 1 || m1 < 2 || m2 < 2)
        throw UsageError("compare_log_ratio: need t >= 1 and m >= 2");
    if (t1 == t2 && m1 == m2) return 0;
    if (t1 == 1 && t2 == 1) return 0; // both ratios are zero

    for (unsigned prec : {48u, 128u, 512u}) {
        RatInterval a = interval_div_pos(log2_bounds(Rat(t1), prec), log2_bounds(Rat(m1), prec));
        RatInterval b = interval_div_pos(log2_bounds(Rat(t2), prec), log2_bounds(Rat(m2), prec));
        if (a.lo > b.hi) return 1;
        if (a.hi < b.lo) return -1;
        if (prec == 512u) {
            // Try to prove both ratios equal a common small rational u/v.
            for (unsigned v = 1; v <= 64; ++v) {
                Rat mid = (a.lo + a.hi) / 2 * v;
                Int u = rat_num(mid) / rat_den(mid); // floor
                for (Int cand = u; cand <= u + 1; ++cand) {
                    if (cand < 0) continue;
                    const auto ue = cand.convert_to<std::uint64_t>();
                    if (ipow(t1, v) == ipow(m1, ue) && ipow(t2, v) == ipow(m2, ue))
                        return 0;
                }
            }
        }
    }
    throw InternalError("compare_log_ratio: precision exhausted without separation");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace addcomb
