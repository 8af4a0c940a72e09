#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gelfond {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using cplx = std::complex<double>;

/// Thrown when an operation would exceed its desk-scale resource guard.
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a verifier detects a violated inequality or broken invariant.
class property_error : public std::runtime_error {
public:
    explicit property_error(const std::string& what) : std::runtime_error(what) {}
};

inline int popcount128(u128 x) {
    return __builtin_popcountll(static_cast<u64>(x)) +
           __builtin_popcountll(static_cast<u64>(x >> 64));
}

/// Sum of binary digits of x with indices in [lo, hi), for x < 2^128.
inline int window_popcount128(u128 x, unsigned lo, unsigned hi) {
    if (lo >= hi || lo >= 128) return 0;
    x >>= lo;
    unsigned w = hi - lo;
    if (w < 128) x &= (u128(1) << w) - 1;
    return popcount128(x);
}

inline u128 cube_u128(u64 n) {
    // fits for n < 2^42
    u128 n2 = u128(n) * n;
    return n2 * n;
}

/// a*b mod 2^k for k <= 127. Splits a to dodge the 128-bit overflow.
inline u128 mulmod_pow2(u128 a, u128 b, unsigned k) {
    u128 mask = (k < 128) ? ((u128(1) << k) - 1) : ~u128(0);
    a &= mask;
    b &= mask;
    u128 alo = a & 0xffffffffffffffffULL;
    u128 ahi = a >> 64;
    u128 r = alo * b;
    if (ahi != 0 && k > 64) r += (ahi * b) << 64;
    return r & mask;
}

// ---------------------------------------------------------------------------
// Deterministic reductions.
//
// All floating-point reductions longer than a few dozen terms go through
// pairwise_sum, which uses a fixed tree order independent of chunking, so
// results are reproducible to the last bit across runs and thread counts.

template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = data[0];
        for (std::size_t i = 1; i < n; ++i) acc += data[i];
        return acc;
    }
    std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Thread pool-free data parallelism over index ranges.
//
// Work is split into fixed chunks; every chunk writes its partial result into
// a slot owned by its chunk index, and the slots are merged in index order.
// With exact (integer) accumulators the result does not depend on the thread
// count at all; with floats it is reproducible because the chunk boundaries
// are a function of n alone, never of the thread count.

inline unsigned hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Global thread count used by parallel loops; 0 = hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

/// body(chunk_index, begin, end) for a fixed chunking of [0, n).
void parallel_chunks(u64 n, u64 chunk,
                     const std::function<void(std::size_t, u64, u64)>& body);

// ---------------------------------------------------------------------------
// Radix-2 FFT, in place, size a power of two.  Forward transform:
//   out[k] = sum_n in[n] * e(-nk/N).
void fft_inplace(std::vector<cplx>& a);

// ---------------------------------------------------------------------------
// Deterministic RNG.  mt19937_64 keeps frozen corpora stable; uniform doubles
// are derived from raw bits directly rather than through distribution objects
// so the streams do not depend on the standard library implementation.

class Rng {
public:
    explicit Rng(u64 seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    u64 next_u64() {
        // splitmix64
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in [0, bound)
    u64 next_below(u64 bound) { return bound ? next_u64() % bound : 0; }

private:
    u64 state_;
};

/// log2 of a sum of terms given as log2 values: log2(sum_i 2^(x_i)).
double log2_sum_exp2(std::span<const double> xs);

/// log-plus: natural log clipped below at 1.
double log_plus(double x);

}  // namespace gelfond
