#include "gelfond/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "gelfond/trig.hpp"

namespace gelfond::correlations {

namespace {

/// e(k/2) for integer parity k as an exact sign.
inline int parity_sign(int parity) { return parity ? -1 : 1; }

void require_spec(const CorrelationSpec& s) {
    if (!s.windows_sorted())
        throw std::invalid_argument("CorrelationSpec: window exponents not sorted");
    if (!s.digits_in_range())
        throw std::invalid_argument("CorrelationSpec: split digits out of range");
}

}  // namespace

cplx s0(unsigned nu, double xi) {
    if (nu > 34) throw guard_error("s0: nu beyond direct-summation guard");
    const u64 N = u64(1) << nu;

    // e(n xi) = e(hi * 2^16 xi) * e(lo xi) from two exact tables
    const u64 lo_bits = std::min<unsigned>(nu, 16);
    const u64 lo_size = u64(1) << lo_bits;
    const u64 hi_size = N >> lo_bits;
    // reduce the step mod 1 before scaling by the table index so the phase
    // products stay small and full precision survives up to nu = 34
    const double xi_frac = xi - std::floor(xi);
    double hi_step = std::ldexp(xi_frac, static_cast<int>(lo_bits));
    hi_step -= std::floor(hi_step);
    std::vector<cplx> lo_tab(lo_size), hi_tab(std::max<u64>(hi_size, 1));
    for (u64 k = 0; k < lo_size; ++k) {
        double ph = static_cast<double>(k) * xi_frac;
        lo_tab[k] = trig::e_of(ph - std::floor(ph));
    }
    for (u64 k = 0; k < hi_tab.size(); ++k) {
        double ph = static_cast<double>(k) * hi_step;
        hi_tab[k] = trig::e_of(ph - std::floor(ph));
    }

    const u64 chunk = u64(1) << std::min<unsigned>(nu, 18);
    std::vector<cplx> partial((N + chunk - 1) / chunk);
    parallel_chunks(N, chunk, [&](std::size_t c, u64 lo, u64 hi) {
        std::vector<cplx> local(hi - lo);
        for (u64 n = lo; n < hi; ++n) {
            int sign = parity_sign(popcount128(cube_u128(n)) & 1);
            local[n - lo] = static_cast<double>(sign) *
                            (hi_tab[n >> lo_bits] * lo_tab[n & (lo_size - 1)]);
        }
        partial[c] = pairwise_sum(local);
    });
    return pairwise_sum(partial) / static_cast<double>(N);
}

std::vector<double> s0_grid_moduli(unsigned nu, unsigned log2_grid) {
    if (nu > 34) throw guard_error("s0_grid_moduli: nu beyond streaming guard");
    if (log2_grid > 24) throw guard_error("s0_grid_moduli: grid beyond FFT guard");
    const u64 N = u64(1) << nu;
    const u64 G = u64(1) << log2_grid;

    // Fold the +-1 sequence into G residue bins.  Chunk results are exact
    // integers, so merging under a mutex in arrival order is still
    // deterministic, and memory stays at one bin array per in-flight chunk.
    const u64 chunk = u64(1) << std::min<unsigned>(nu, 22);
    std::vector<i64> bins(G, 0);
    std::mutex merge_mutex;
    parallel_chunks(N, chunk, [&](std::size_t, u64 lo, u64 hi) {
        std::vector<i64> local(G, 0);
        for (u64 n = lo; n < hi; ++n) {
            int sign = parity_sign(popcount128(cube_u128(n)) & 1);
            local[n & (G - 1)] += sign;
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (u64 k = 0; k < G; ++k) bins[k] += local[k];
    });

    // S0(nu, k/G) = FFT(bins)[G - k] / N; the FFT kernel e(-nk/G) conjugates
    // the target phase e(+n k/G), so read the spectrum mirrored.
    std::vector<cplx> buf(G);
    for (u64 k = 0; k < G; ++k) buf[k] = static_cast<double>(bins[k]);
    fft_inplace(buf);
    std::vector<double> out(G);
    for (u64 k = 0; k < G; ++k)
        out[k] = std::abs(buf[(G - k) & (G - 1)]) / static_cast<double>(N);
    return out;
}

cplx cube_weyl_sum(unsigned lambda, u64 h, u64 M) {
    if (M > (u64(1) << 26)) throw guard_error("cube_weyl_sum: M beyond guard");
    if (lambda > 126) throw guard_error("cube_weyl_sum: lambda too large");
    if (h == 0 || lambda == 0) return {static_cast<double>(M), 0.0};

    const double scale = std::ldexp(1.0, -static_cast<int>(lambda));
    const u64 chunk = u64(1) << 18;
    std::vector<cplx> partial((M + chunk - 1) / chunk);
    parallel_chunks(M, chunk, [&](std::size_t c, u64 lo, u64 hi) {
        std::vector<cplx> local(hi - lo);
        for (u64 i = lo; i < hi; ++i) {
            u128 v = mulmod_pow2(cube_u128(M + i), h, lambda);
            local[i - lo] = trig::e_of(static_cast<double>(v) * scale);
        }
        partial[c] = pairwise_sum(local);
    });
    return pairwise_sum(partial);
}

VdcPair vdc_generalized_check(const std::vector<cplx>& x, const std::vector<i64>& shifts) {
    if (shifts.empty()) throw std::invalid_argument("vdc_generalized_check: empty shift set");
    const i64 M = static_cast<i64>(x.size());

    cplx total{};
    for (const cplx& v : x) total += v;

    auto [mn, mx] = std::minmax_element(shifts.begin(), shifts.end());
    cplx corr{};
    for (i64 s0v : shifts) {
        for (i64 s1v : shifts) {
            // n in (I - s0) cap (I - s1) with I = [0, M)
            i64 lo = std::max(-s0v, -s1v);
            i64 hi = std::min(M - s0v, M - s1v);
            for (i64 n = lo; n < hi; ++n)
                corr += x[static_cast<std::size_t>(n + s0v)] *
                        std::conj(x[static_cast<std::size_t>(n + s1v)]);
        }
    }
    double scale = static_cast<double>(M + *mx - *mn) /
                   (static_cast<double>(shifts.size()) * static_cast<double>(shifts.size()));
    corr *= scale;
    return {std::norm(total), corr.real(), corr.imag()};
}

VdcPair vdc_mr_check(const std::vector<cplx>& z, u64 M, u64 R) {
    if (M < 1 || R < 1) throw std::invalid_argument("vdc_mr_check: M, R >= 1 required");
    const i64 N = static_cast<i64>(z.size());

    cplx total{};
    for (const cplx& v : z) total += v;

    cplx corr{};
    for (i64 r = -static_cast<i64>(R) + 1; r < static_cast<i64>(R); ++r) {
        double weight = 1.0 - std::fabs(static_cast<double>(r)) / static_cast<double>(R);
        i64 shift = r * static_cast<i64>(M);
        i64 lo = std::max<i64>(0, -shift);
        i64 hi = std::min<i64>(N, N - shift);
        cplx inner{};
        for (i64 n = lo; n < hi; ++n)
            inner += z[static_cast<std::size_t>(n)] * std::conj(z[static_cast<std::size_t>(n + shift)]);
        corr += weight * inner;
    }
    corr *= static_cast<double>(N + static_cast<i64>(M) * (static_cast<i64>(R) - 1)) /
            static_cast<double>(R);
    return {std::norm(total), corr.real(), corr.imag()};
}

cplx gowers_box_correlation(const std::vector<cplx>& g, const std::vector<i64>& m) {
    const std::size_t Q = m.size();
    const i64 J = static_cast<i64>(g.size());
    i64 maxoff = 0;
    for (i64 v : m) maxoff += std::max<i64>(v, 0);

    cplx acc{};
    i64 complete = 0;  // boxes that fit inside J; the M R / |J| term covers the rest
    for (i64 n = 0; n < J; ++n) {
        cplx prod{1.0, 0.0};
        bool ok = true;
        for (u64 eps = 0; eps < (u64(1) << Q); ++eps) {
            i64 idx = n;
            for (std::size_t l = 0; l < Q; ++l)
                if ((eps >> l) & 1) idx += m[l];
            if (idx < 0 || idx >= J) {
                ok = false;
                break;
            }
            cplx v = g[static_cast<std::size_t>(idx)];
            prod *= (__builtin_popcountll(eps) & 1) ? std::conj(v) : v;
        }
        if (ok) {
            acc += prod;
            ++complete;
        }
    }
    if (complete == 0) return {0.0, 0.0};
    return acc / static_cast<double>(complete);
}

VdcIterated vdc_iterated_check(const std::vector<cplx>& g,
                               const std::vector<u64>& M, u64 R) {
    const std::size_t Q = M.size();
    if (Q < 1 || Q > 4) throw guard_error("vdc_iterated_check: Q in [1,4] at desk scale");
    if (R < 1) throw std::invalid_argument("vdc_iterated_check: R >= 1 required");
    const double J = static_cast<double>(g.size());

    cplx mean{};
    for (const cplx& v : g) mean += v;
    mean /= J;
    double lhs = std::pow(std::abs(mean), std::pow(2.0, static_cast<double>(Q)));

    double main = 0.0;
    std::vector<u64> r(Q, 1);
    if (R >= 2) {
        for (;;) {
            std::vector<i64> offs(Q);
            for (std::size_t l = 0; l < Q; ++l)
                offs[l] = static_cast<i64>(r[l] * M[l]);
            main += std::abs(gowers_box_correlation(g, offs));
            std::size_t i = 0;
            for (; i < Q; ++i) {
                if (++r[i] < R) break;
                r[i] = 1;
            }
            if (i == Q) break;
        }
    }
    main /= std::pow(static_cast<double>(R), static_cast<double>(Q));

    u64 msum = 0;
    for (u64 v : M) msum += v;
    double err = static_cast<double>(msum) * static_cast<double>(R) / J +
                 1.0 / static_cast<double>(R);
    return {lhs, main, err};
}

double fourfold_correlation(unsigned mu, unsigned a, unsigned b,
                            const std::array<u64, 4>& alpha,
                            const std::array<u64, 4>& beta) {
    if (mu > 26) throw guard_error("fourfold_correlation: mu beyond guard");
    if (b > 126) throw guard_error("fourfold_correlation: window beyond u128");
    const u64 N = u64(1) << mu;

    const u64 chunk = u64(1) << std::min<unsigned>(mu, 20);
    std::vector<i64> partial((N + chunk - 1) / chunk, 0);
    parallel_chunks(N, chunk, [&](std::size_t c, u64 lo, u64 hi) {
        i64 acc = 0;
        for (u64 n = lo; n < hi; ++n) {
            int parity = 0;
            for (int j = 0; j < 4; ++j) {
                u128 arg = u128(n) * alpha[static_cast<std::size_t>(j)] +
                           beta[static_cast<std::size_t>(j)];
                parity ^= window_popcount128(arg, a, b) & 1;
            }
            acc += parity_sign(parity);
        }
        partial[c] = acc;
    });
    i64 total = 0;
    for (i64 p : partial) total += p;
    return static_cast<double>(total) / static_cast<double>(N);
}

LinearizedPhases linearized_phases(const CorrelationSpec& spec, unsigned lambda) {
    require_spec(spec);
    // zeta <= lambda/3 <= tau <= u/2 <= rho <= nu <= lambda/2
    bool stack = 3 * spec.zeta <= lambda && lambda <= 3 * spec.tau &&
                 2 * spec.tau <= spec.u && spec.u <= 2 * spec.rho &&
                 2 * spec.nu <= lambda;
    if (!stack)
        throw std::invalid_argument("linearized_phases: window stack violated");

    const double sdiff = static_cast<double>(static_cast<i64>(spec.sO) - static_cast<i64>(spec.sL));
    const double ssq = static_cast<double>(static_cast<i64>(spec.sO * spec.sO) -
                                           static_cast<i64>(spec.sL * spec.sL));
    const double m = static_cast<double>(spec.m);
    const double n0 = static_cast<double>((spec.nOL << spec.zeta) + spec.nOO);
    const double n01 = static_cast<double>(spec.nOL);

    LinearizedPhases out{};
    out.x = 6.0 * n0 * sdiff * m * std::ldexp(1.0, 2 * static_cast<int>(spec.tau) - static_cast<int>(lambda));
    out.f = (3.0 * n0 * n0 * sdiff * m +
             3.0 * n0 * ssq * m * m * std::ldexp(1.0, static_cast<int>(spec.tau))) *
            std::ldexp(1.0, static_cast<int>(spec.tau) - static_cast<int>(lambda));
    double pow_a = std::ldexp(1.0, 2 * static_cast<int>(spec.tau) + static_cast<int>(spec.zeta) -
                                        static_cast<int>(lambda));
    double pow_b = std::ldexp(1.0, static_cast<int>(spec.tau) + 2 * static_cast<int>(spec.zeta) -
                                        static_cast<int>(lambda));
    out.K = static_cast<double>(spec.nLO) * 6.0 * n01 * sdiff * m * pow_a +
            3.0 * n01 * n01 * sdiff * m * pow_b + 3.0 * n01 * ssq * m * m * pow_a;
    out.Kprime = out.f + static_cast<double>(spec.nLO) * out.x;
    return out;
}

LinearizedSlopes linearized_slopes(const CorrelationSpec& spec, int eps, u64 ts) {
    LinearizedSlopes out{};
    const u128 nA = (u128(spec.nOL) << spec.zeta) + spec.nOO +
                    static_cast<u128>(eps ? spec.r : 0);
    out.A = (u128(spec.nLO) << spec.tau) + nA + (u128(ts) * spec.m << spec.tau);
    if (out.A >> 42) throw guard_error("linearized_slopes: slope beyond u128 cube range");
    out.Qtilde = 3 * out.A * out.A;
    u128 A3 = out.A * out.A * out.A;
    out.beta = A3 >> spec.rho;
    out.c = static_cast<u64>(window_popcount128(A3, 0, spec.rho));
    out.Qprime = 6 * (nA << spec.tau) * spec.nLO + 6 * ((u128(ts) * spec.m * nA) << spec.tau) +
                 3 * nA * nA;
    return out;
}

namespace {

double s8_windowed(const CorrelationSpec& spec, unsigned win_lo, bool use_qprime) {
    require_spec(spec);
    if (spec.nu - spec.rho > 22) throw guard_error("s8: nu - rho beyond guard");
    if (!spec.chain_holds())
        throw std::invalid_argument("s8: linearization chain violated");

    std::array<LinearizedSlopes, 4> slopes;
    std::size_t idx = 0;
    for (int eps : {0, 1})
        for (u64 ts : {spec.sO, spec.sL}) slopes[idx++] = linearized_slopes(spec, eps, ts);

    const u64 N = u64(1) << (spec.nu - spec.rho);
    const unsigned win_hi = spec.u - spec.rho;
    i64 acc = 0;
    for (u64 nLL = 0; nLL < N; ++nLL) {
        int parity = 0;
        for (const auto& s : slopes) {
            u128 q = use_qprime ? s.Qprime : s.Qtilde;
            u128 arg = u128(nLL) * q + s.beta;
            parity ^= window_popcount128(arg, win_lo, win_hi) & 1;
        }
        acc += parity_sign(parity);
    }
    return std::fabs(static_cast<double>(acc)) / static_cast<double>(N);
}

}  // namespace

double s8_defining(const CorrelationSpec& spec) {
    require_spec(spec);
    if (spec.nu - spec.rho > 22) throw guard_error("s8_defining: nu - rho beyond guard");

    const u64 N = u64(1) << (spec.nu - spec.rho);
    i64 acc = 0;
    for (u64 nLL = 0; nLL < N; ++nLL) {
        int parity = 0;
        for (int eps : {0, 1}) {
            for (u64 ts : {spec.sO, spec.sL}) {
                u128 base = (u128(nLL) << spec.rho) + (u128(spec.nLO) << spec.tau) +
                            (u128(spec.nOL) << spec.zeta) + ((u128(ts) * spec.m) << spec.tau) +
                            spec.nOO + (eps ? spec.r : 0);
                if (base >> 42) throw guard_error("s8_defining: argument beyond u128 cubes");
                u128 cubev = base * base * base;
                parity ^= window_popcount128(cubev, 0, spec.u) & 1;
            }
        }
        acc += parity_sign(parity);
    }
    return static_cast<double>(acc) / static_cast<double>(N);
}

double s8_linearized(const CorrelationSpec& spec) {
    // Window [0, u-rho): the tau-truncation printed in the source derivation
    // only cancels on the un-floored cube, not on nLL Q' + beta.
    return s8_windowed(spec, 0, /*use_qprime=*/true);
}

double s8_intermediate(const CorrelationSpec& spec) {
    return s8_windowed(spec, 0, /*use_qprime=*/false);
}

cplx quadratic_phase_sum(u64 nOL, int eps, u64 r, unsigned a, u64 h, unsigned zeta) {
    if (zeta > 24) throw guard_error("quadratic_phase_sum: zeta beyond guard");
    if (a > 126) throw guard_error("quadratic_phase_sum: modulus beyond u128");
    if ((((u128(nOL) << zeta) + r) >> 62) != 0)
        throw guard_error("quadratic_phase_sum: base too large");
    const u64 N = u64(1) << zeta;
    if (h == 0 || a == 0) return {1.0, 0.0};

    std::vector<cplx> terms(N);
    const double scale = std::ldexp(1.0, -static_cast<int>(a));
    for (u64 nOO = 0; nOO < N; ++nOO) {
        u128 base = (u128(nOL) << zeta) + nOO + (eps ? r : 0);
        u128 sq = mulmod_pow2(base * base, h, a);
        terms[nOO] = trig::e_of(static_cast<double>(sq) * scale);
    }
    return pairwise_sum(terms) / static_cast<double>(N);
}

double gowers_norm(unsigned rho, unsigned Q) {
    if (Q < 1) throw std::invalid_argument("gowers_norm: Q >= 1 required");
    if (rho == 0) return 1.0;
    double cost = std::ldexp(1.0, static_cast<int>((Q + 1) * rho));
    if (cost > 0x1p30) throw guard_error("gowers_norm: direct evaluation beyond guard");

    const u64 P = u64(1) << rho;
    const u64 mask = P - 1;
    std::vector<int> sign(P);
    for (u64 v = 0; v < P; ++v) sign[v] = parity_sign(__builtin_popcountll(v) & 1);

    const u64 boxes = u64(1) << (Q * rho);  // flattened r-vector index
    const u64 chunk = std::max<u64>(boxes >> 8, 1);
    std::vector<i64> partial((boxes + chunk - 1) / chunk, 0);
    parallel_chunks(boxes, chunk, [&](std::size_t c, u64 lo, u64 hi) {
        i64 acc = 0;
        std::vector<u64> r(Q);
        for (u64 code = lo; code < hi; ++code) {
            u64 t = code;
            for (unsigned l = 0; l < Q; ++l) {
                r[l] = t & mask;
                t >>= rho;
            }
            for (u64 n = 0; n < P; ++n) {
                int prod = 1;
                for (u64 eps = 0; eps < (u64(1) << Q); ++eps) {
                    u64 v = n;
                    for (unsigned l = 0; l < Q; ++l)
                        if ((eps >> l) & 1) v += r[l];
                    prod *= sign[v & mask];
                }
                acc += prod;
            }
        }
        partial[c] = acc;
    });
    i64 total = 0;
    for (i64 p : partial) total += p;
    return static_cast<double>(total) / std::ldexp(1.0, static_cast<int>((Q + 1) * rho));
}

double gowers_u2_fast(unsigned rho) {
    if (rho == 0) return 1.0;
    if (rho > 22) throw guard_error("gowers_u2_fast: rho beyond FFT guard");
    const u64 P = u64(1) << rho;
    std::vector<cplx> f(P);
    for (u64 n = 0; n < P; ++n)
        f[n] = parity_sign(__builtin_popcountll(n) & 1);
    fft_inplace(f);
    std::vector<double> fourth(P);
    for (u64 h = 0; h < P; ++h) {
        double m2 = std::norm(f[h]) / (static_cast<double>(P) * static_cast<double>(P));
        fourth[h] = m2 * m2;
    }
    return pairwise_sum(fourth);
}

}  // namespace gelfond::correlations
