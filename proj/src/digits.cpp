#include "gelfond/digits.hpp"

#include <stdexcept>

namespace gelfond::digits {

u64 digit_sum(const Natural& n, u64 q) {
    if (q < 2) throw std::invalid_argument("digit_sum: base must be >= 2");
    if (q == 2) return static_cast<u64>(n.popcount());
    u64 acc = 0;
    Natural cur = n;
    while (!cur.is_zero()) {
        auto [quot, rem] = cur.divmod_small(q);
        acc += rem;
        cur = std::move(quot);
    }
    return acc;
}

u64 windowed_digit_sum(const Natural& n, DigitWindow w) {
    if (w.lo >= w.hi) return 0;
    return n.window_popcount(w.lo, w.hi);
}

int thue_morse(const Natural& n) { return n.popcount() & 1; }

int thue_morse_along(Poly p, u64 n) {
    switch (p) {
        case Poly::linear:
            return thue_morse(n);
        case Poly::squares:
            if (n < (u64(1) << 32)) return popcount128(u128(n) * n) & 1;
            return thue_morse(Natural(n) * Natural(n));
        case Poly::cubes:
            if (n < (u64(1) << 42)) return popcount128(cube_u128(n)) & 1;
            return thue_morse(cube(Natural(n)));
    }
    return 0;
}

u64 count_tm_cube_zeros(u64 x) {
    if (x == 0) return 0;
    if (x > (u64(1) << 42))
        throw guard_error("count_tm_cube_zeros: x beyond the u128 cube range");
    std::size_t nchunks = static_cast<std::size_t>((x + (1 << 20) - 1) >> 20);
    std::vector<u64> partial(nchunks, 0);
    parallel_chunks(x, 1 << 20, [&](std::size_t c, u64 lo, u64 hi) {
        u64 zeros = 0;
        for (u64 n = lo; n < hi; ++n)
            zeros += static_cast<u64>(1 - (popcount128(cube_u128(n)) & 1));
        partial[c] = zeros;
    });
    u64 total = 0;
    for (u64 z : partial) total += z;
    return total;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (u64 d = 29; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

u64 legendre_valuation(u64 n, u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("legendre_valuation: p must be prime");
    return (n - digit_sum(Natural(n), p)) / (p - 1);
}

u64 kummer_carries(u64 n, u64 t, u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("kummer_carries: p must be prime");
    if (t > n) throw std::invalid_argument("kummer_carries: need t <= n");
    u64 borrows = 0;
    u64 a = n, b = t;
    int borrow = 0;
    while (b > 0 || borrow) {
        u64 da = a % p;
        u64 db = b % p + static_cast<u64>(borrow);
        borrow = da < db;
        borrows += static_cast<u64>(borrow);
        a /= p;
        b /= p;
    }
    return borrows;
}

CarryCount carry_count(u64 A, u64 B, u64 r, unsigned lambda) {
    if (A > B) throw std::invalid_argument("carry_count: need A <= B");
    if (B - A > (u64(1) << 26)) throw guard_error("carry_count: range too long");
    if (B + r > (u64(1) << 42)) throw guard_error("carry_count: cubes exceed u128");
    if (lambda > 126) throw guard_error("carry_count: lambda too large");

    CarryCount out;
    for (u64 n = A; n < B; ++n) {
        u128 lo = cube_u128(n) >> lambda;
        u128 hi = cube_u128(n + r) >> lambda;
        out.count += static_cast<u64>(lo != hi);
    }
    if (A == 0) {
        out.bound.reset();
        return out;
    }
    // Exact rational comparison of
    //   count <= ((B-A) B^2 / 2^lambda + 1) ((3B^2 r + 3B r^2 + r^3)/(3A^2) + 1)
    // cleared of denominators 2^lambda * 3A^2.
    Natural nB(B), nr(r);
    Natural pow2 = Natural(1) << lambda;
    Natural threeA2 = Natural(A) * Natural(A) * Natural(3);
    Natural left = (Natural(B - A) * nB * nB) + pow2;                         // * 2^-lambda +1
    Natural num = Natural(3) * nB * nB * nr + Natural(3) * nB * nr * nr + nr * nr * nr;
    Natural right = num + threeA2;                                            // * (3A^2)^-1 +1
    Natural bound_num = left * right;
    Natural count_scaled = Natural(out.count) * pow2 * threeA2;
    out.bound_holds = count_scaled <= bound_num;
    out.bound = bound_num.to_double() / (pow2.to_double() * threeA2.to_double());
    return out;
}

}  // namespace gelfond::digits
