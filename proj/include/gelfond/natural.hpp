#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond {

/// Arbitrary-precision nonnegative integer, little-endian 64-bit limbs.
///
/// Covers exactly what the exact-arithmetic paths need: ring operations,
/// shifts, bit access and windowed popcounts, and small-divisor division for
/// base-q digit extraction.  Values below 2^128 stay on machine words in the
/// hot kernels; Natural is the spill path and the oracle currency.
class Natural {
public:
    Natural() = default;
    Natural(u64 v) { if (v) limbs_.push_back(v); }  // NOLINT(implicit)
    static Natural from_u128(u128 v);
    static Natural from_decimal(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 1; }
    u64 to_u64() const;      // throws if too large
    u128 to_u128() const;    // throws if too large
    double to_double() const;

    /// Number of binary digits; 0 for the empty expansion of 0.
    u64 bit_length() const;
    bool bit(u64 i) const;
    int popcount() const;
    /// Sum of binary digits with indices in [lo, hi).
    u64 window_popcount(u64 lo, u64 hi) const;

    Natural& operator+=(const Natural& o);
    Natural& operator-=(const Natural& o);  // throws on underflow
    Natural operator*(const Natural& o) const;
    Natural& operator<<=(u64 k);
    Natural& operator>>=(u64 k);

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator<<(Natural a, u64 k) { return a <<= k; }
    friend Natural operator>>(Natural a, u64 k) { return a >>= k; }

    Natural mul_small(u64 m) const;
    /// Quotient and remainder by a small divisor d >= 1.
    std::pair<Natural, u64> divmod_small(u64 d) const;

    std::strong_ordering operator<=>(const Natural& o) const;
    bool operator==(const Natural& o) const = default;

    std::string to_decimal() const;

private:
    void trim();
    std::vector<u64> limbs_;
};

inline Natural cube(const Natural& n) { return n * n * n; }

}  // namespace gelfond
