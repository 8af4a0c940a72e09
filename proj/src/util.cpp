#include "gelfond/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

namespace gelfond {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    unsigned n = g_threads.load();
    if (n == 0) {
        if (const char* env = std::getenv("GELFOND_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<unsigned>(v);
        }
        return hardware_threads();
    }
    return n;
}

void parallel_chunks(u64 n, u64 chunk,
                     const std::function<void(std::size_t, u64, u64)>& body) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    std::size_t nchunks = static_cast<std::size_t>((n + chunk - 1) / chunk);
    unsigned nthreads = std::min<unsigned>(thread_count(), nchunks);
    if (nthreads <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c)
            body(c, c * chunk, std::min<u64>(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.emplace_back([&]() {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                body(c, c * chunk, std::min<u64>(n, (c + 1) * chunk));
            }
        });
    }
    for (auto& w : workers) w.join();
}

void fft_inplace(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (n < 2) return;
    if ((n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

double log2_sum_exp2(std::span<const double> xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp2(x - m);
    return m + std::log2(acc);
}

double log_plus(double x) { return x < M_E ? 1.0 : std::log(x); }

}  // namespace gelfond
