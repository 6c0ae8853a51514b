#pragma once
// Checked 128-bit integer helpers and a 192-bit signed accumulator for
// exact truncated-series convolutions.  Coefficients are stored as
// __int128; products of two 64-bit stage coefficients are accumulated
// either directly in __int128 (when the rigorous partial-sum bound
// N * max|a| * max|b| < 2^125 holds) or through acc192 with an exact
// narrowing check.  Overflow is a hard data-integrity error, never UB:
// all checked paths go through __builtin_*_overflow or limb arithmetic
// on unsigned types.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hecke {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);

// Parse a decimal integer (optional sign) into i128; throws
// std::out_of_range on overflow, std::invalid_argument on junk.
i128 parse_i128(const std::string& text);

inline i128 checked_add(i128 a, i128 b, const char* what) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error(std::string(what) + ": 128-bit overflow in addition");
    return r;
}

inline i128 checked_mul(i128 a, i128 b, const char* what) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error(std::string(what) + ": 128-bit overflow in multiplication");
    return r;
}

inline i64 checked_narrow_i64(i128 v, const char* what) {
    if (v > (i128)INT64_MAX || v < (i128)INT64_MIN)
        throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
    return (i64)v;
}

// Three-limb two's-complement signed accumulator (192 bits).  Supports
// adding full 128-bit products and i128 * nonneg-i64 mixed products;
// total magnitudes must stay below 2^191, which every call site bounds
// a priori (documented at the call).
struct acc192 {
    std::uint64_t lo = 0, mid = 0, hi = 0;

    inline void add_i128(i128 v) {
        std::uint64_t vlo = (std::uint64_t)(u128)v;
        std::uint64_t vmid = (std::uint64_t)((u128)v >> 64);
        std::uint64_t vhi = v < 0 ? ~0ull : 0ull;  // sign extension limb
        u128 s = (u128)lo + vlo;
        lo = (std::uint64_t)s;
        s = (u128)mid + vmid + (std::uint64_t)(s >> 64);
        mid = (std::uint64_t)s;
        hi += vhi + (std::uint64_t)(s >> 64);
    }

    // Accumulate a * b with a a full i128 and b >= 0 a 64-bit value:
    // a*b = (a_hi * b) * 2^64 + a_lo * b, split exactly across the limbs.
    inline void add_mixed(i128 a, i64 b) {
        std::uint64_t alo = (std::uint64_t)(u128)a;
        i64 ahi = (i64)(a >> 64);
        u128 plo = (u128)alo * (std::uint64_t)b;
        i128 phi = (i128)ahi * b;
        u128 s = (u128)lo + (std::uint64_t)plo;
        lo = (std::uint64_t)s;
        s = (u128)mid + (std::uint64_t)(plo >> 64) + (std::uint64_t)(s >> 64);
        mid = (std::uint64_t)s;
        hi += (std::uint64_t)(s >> 64);
        s = (u128)mid + (std::uint64_t)(u128)phi;
        mid = (std::uint64_t)s;
        hi += (std::uint64_t)((u128)phi >> 64) + (std::uint64_t)(s >> 64);
    }

    // True iff the value fits a signed 128-bit integer (hi is a pure
    // sign extension of mid's top bit); writes it to *out when so.
    inline bool fits_i128(i128* out) const {
        std::uint64_t ext = (mid >> 63) ? ~0ull : 0ull;
        if (hi != ext) return false;
        *out = (i128)(((u128)mid << 64) | lo);
        return true;
    }

    i128 narrow_i128(const char* what) const {
        i128 v;
        if (!fits_i128(&v))
            throw std::overflow_error(std::string(what) +
                                      ": exact coefficient exceeds 128 bits");
        return v;
    }
};

}  // namespace hecke
