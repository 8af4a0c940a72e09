#pragma once

#include <cstdint>
#include <optional>

#include "gelfond/natural.hpp"
#include "gelfond/util.hpp"

namespace gelfond::digits {

/// Half-open window [lo, hi) of binary digit indices.  hi == kInfinity
/// selects every digit above lo.
struct DigitWindow {
    static constexpr u64 kInfinity = ~u64{0};
    u64 lo = 0;
    u64 hi = kInfinity;
};

/// Sum of base-q digits of n.  digit_sum(0, q) == 0 (empty expansion).
u64 digit_sum(const Natural& n, u64 q);

/// Sum of binary digits of n with indices in [w.lo, w.hi).
u64 windowed_digit_sum(const Natural& n, DigitWindow w);

/// Thue-Morse value t(n) = s_2(n) mod 2.
inline int thue_morse(u64 n) { return __builtin_popcountll(n) & 1; }
int thue_morse(const Natural& n);

enum class Poly { linear, squares, cubes };

/// t(P(n)) for P in {n, n^2, n^3}.
int thue_morse_along(Poly p, u64 n);

/// Exact #{n < x : t(n^3) = 0}.  Data-parallel over n ranges.
u64 count_tm_cube_zeros(u64 x);

/// nu_p(n!) via Legendre: (n - s_p(n)) / (p - 1).  p must be prime.
u64 legendre_valuation(u64 n, u64 p);

/// Base-p borrow count of the subtraction n - t (Kummer: nu_p of binom(n,t)).
u64 kummer_carries(u64 n, u64 t, u64 p);

struct CarryCount {
    u64 count = 0;                  // exact #{n in [A,B): floor disagreement}
    std::optional<double> bound;    // lemma bound; empty when A = 0
    bool bound_holds = true;        // exact integer comparison when bound set
};

/// Counts n in [A,B) whose binary digits of n^3 at indices >= lambda change
/// when passing to (n+r)^3, together with the counting-lemma bound
/// ((B-A)B^2/2^lambda + 1) * ((3B^2 r + 3B r^2 + r^3)/(3A^2) + 1).
/// The bound divides by A^2 and is reported as undefined for A = 0.
CarryCount carry_count(u64 A, u64 B, u64 r, unsigned lambda);

bool is_prime_u64(u64 n);

}  // namespace gelfond::digits
