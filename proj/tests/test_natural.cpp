#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gelfond/natural.hpp"

using namespace gelfond;

TEST_CASE("ring operations agree with u128 below the limb boundary") {
    Rng rng(1);
    for (int i = 0; i < 2000; ++i) {
        u64 a = rng.next_u64() >> (rng.next_below(48));
        u64 b = rng.next_u64() >> (rng.next_below(48));
        CHECK(Natural(a) + Natural(b) == Natural::from_u128(u128(a) + b));
        CHECK(Natural(a) * Natural(b) == Natural::from_u128(u128(a) * b));
        if (a >= b) CHECK(Natural(a) - Natural(b) == Natural(a - b));
        unsigned k = static_cast<unsigned>(rng.next_below(64));
        CHECK((Natural(a) << k) == Natural::from_u128(u128(a) << k));
        CHECK((Natural::from_u128(u128(a) << k) >> k) == Natural(a));
    }
}

TEST_CASE("subtraction underflow throws") {
    CHECK_THROWS_AS(Natural(3) -= Natural(5), std::underflow_error);
}

TEST_CASE("divmod_small inverts mul_small plus remainder") {
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        Natural n = Natural(rng.next_u64()) * Natural(rng.next_u64()) + Natural(rng.next_u64());
        u64 d = rng.next_below(1000000) + 1;
        auto [q, r] = n.divmod_small(d);
        CHECK(r < d);
        CHECK(q.mul_small(d) + Natural(r) == n);
    }
}

TEST_CASE("decimal round trip") {
    Natural big = Natural::from_decimal("340282366920938463463374607431768211456");  // 2^128
    CHECK(big == (Natural(1) << 128));
    CHECK(big.to_decimal() == "340282366920938463463374607431768211456");
    CHECK(Natural(0).to_decimal() == "0");
}

TEST_CASE("bit access and windowed popcount against a bit loop") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        Natural n = (Natural(rng.next_u64()) << 70) + Natural(rng.next_u64());
        u64 lo = rng.next_below(140), hi = lo + rng.next_below(80);
        u64 expect = 0;
        for (u64 j = lo; j < hi; ++j) expect += n.bit(j);
        CHECK(n.window_popcount(lo, hi) == expect);
    }
    CHECK(Natural(0).bit_length() == 0);
    CHECK(Natural(1).bit_length() == 1);
    CHECK((Natural(1) << 200).bit_length() == 201);
}

TEST_CASE("cube matches u128 for small arguments") {
    for (u64 n : {0ULL, 1ULL, 7ULL, 1000ULL, (1ULL << 21)}) {
        CHECK(cube(Natural(n)) == Natural::from_u128(cube_u128(n)));
    }
}

TEST_CASE("from_decimal rejects junk") {
    CHECK_THROWS_AS(Natural::from_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(Natural::from_decimal("12x4"), std::invalid_argument);
    CHECK(Natural::from_decimal("000123") == Natural(123));
}
