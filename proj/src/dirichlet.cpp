#include "gelfond/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gelfond/discrepancy.hpp"
#include "gelfond/trig.hpp"

namespace gelfond::dirichlet {

namespace {

/// digits of v with indices in [lo, hi) as an integer
inline u64 digit_window(u128 v, unsigned lo, unsigned hi) {
    if (lo >= hi) return 0;
    v >>= lo;
    unsigned w = hi - lo;
    if (w < 64) return static_cast<u64>(v) & ((u64(1) << w) - 1);
    return static_cast<u64>(v);
}

std::optional<u64> least_odd_witness(u64 base, unsigned ell, unsigned kappa) {
    const u64 limit = u64(1) << (5 * kappa + 7);
    for (u64 M = 1; M < limit; M += 2) {
        if (digit_window(u128(M) * base, ell - kappa, ell) == 0) return M;
    }
    return std::nullopt;
}

}  // namespace

OddEliminationResult odd_eliminate(u64 omega, unsigned ell, unsigned kappa, unsigned mu) {
    if (ell < kappa || kappa < 1) throw std::invalid_argument("odd_eliminate: need ell >= kappa >= 1");
    if (mu + 5 * kappa + 6 > 30) throw guard_error("odd_eliminate: search space beyond guard");
    if (ell > 60) throw guard_error("odd_eliminate: window beyond guard");

    OddEliminationResult out;
    out.found = true;
    const u64 omega0_count = u64(1) << mu;
    for (u64 omega0 = 0; omega0 < omega0_count; ++omega0) {
        u64 base = (omega << mu) + omega0;
        auto witness = least_odd_witness(base, ell, kappa);
        ++out.checked_omega0;
        if (!witness) {
            out.found = false;
            out.witness_M.reset();
            return out;
        }
        if (digit_window(u128(*witness) * base, ell - kappa, ell) != 0)
            throw property_error("odd_eliminate: witness failed re-verification");
        if (omega0 == 0) out.witness_M = *witness;
    }
    return out;
}

CensusResult odd_elimination_census(unsigned ell, unsigned kappa,
                                    u64 omega0_budget, u64 seed) {
    if (kappa < 1 || ell < 4 * kappa + 4)
        throw std::invalid_argument("odd_elimination_census: need mu = ell - 4 kappa - 4 >= 0");
    const unsigned mu = ell - 4 * kappa - 4;
    if (ell > 60) throw guard_error("odd_elimination_census: window beyond guard");

    CensusResult out;
    out.paper_bound = (u64(1) << (3 * kappa + 4)) * ((u64(1) << kappa) - 1);
    const u64 omega_count = u64(1) << (4 * kappa + 4);
    const u64 omega0_count = u64(1) << mu;
    out.sampled = omega0_count > omega0_budget;
    out.omega0_samples = out.sampled ? omega0_budget : omega0_count;

    std::vector<u64> partial((omega_count + 255) / 256, 0);
    parallel_chunks(omega_count, 256, [&](std::size_t c, u64 lo, u64 hi) {
        u64 good = 0;
        for (u64 omega = lo; omega < hi; ++omega) {
            Rng rng(seed ^ (omega * 0x9e3779b97f4a7c15ULL));
            bool ok = true;
            for (u64 i = 0; i < out.omega0_samples && ok; ++i) {
                u64 omega0 = out.sampled ? rng.next_below(omega0_count) : i;
                u64 base = (omega << mu) + omega0;
                ok = least_odd_witness(base, ell, kappa).has_value();
            }
            good += static_cast<u64>(ok);
        }
        partial[c] = good;
    });
    for (u64 g : partial) out.good_count += g;
    return out;
}

void APPartition::validate() const {
    std::vector<char> covered(hi - lo, 0);
    for (const auto& p : progressions) {
        u64 n = p.size();
        if (n < (V + 1) / 2 || n > V)
            throw property_error("APPartition: progression size outside [V/2, V]");
        if (p.diff != T) throw property_error("APPartition: wrong difference");
        for (u64 x = p.first; x <= p.last; x += p.diff) {
            if (x < lo || x >= hi || covered[x - lo])
                throw property_error("APPartition: not disjoint or out of range");
            covered[x - lo] = 1;
        }
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        throw property_error("APPartition: interval not covered");
}

APPartition partition_into_aps(u64 lo, u64 hi, u64 T, u64 V) {
    if (T < 1 || V < 1) throw std::invalid_argument("partition_into_aps: T, V >= 1 required");
    if (lo >= hi || u128(T) * V > hi - lo)
        throw std::invalid_argument("partition_into_aps: T V exceeds interval length");

    APPartition out;
    out.lo = lo;
    out.hi = hi;
    out.T = T;
    out.V = V;
    for (u64 a = 0; a < T; ++a) {
        // residue class a mod T inside [lo, hi)
        u64 first = lo + ((a + T - lo % T) % T);
        if (first >= hi) continue;
        u64 W = (hi - 1 - first) / T + 1;
        u64 start = first;
        while (W > 2 * V) {
            out.progressions.push_back({start, start + (V - 1) * T, T});
            start += V * T;
            W -= V;
        }
        if (W > V) {
            u64 half = (W + 1) / 2;  // both pieces land in [V/2, V]
            out.progressions.push_back({start, start + (half - 1) * T, T});
            start += half * T;
            W -= half;
        }
        out.progressions.push_back({start, start + (W - 1) * T, T});
    }
    out.validate();
    return out;
}

GoodIndexSets good_index_sets(unsigned lambda, unsigned tau, unsigned zeta,
                              unsigned eta0, unsigned eta1, u64 S, u64 B,
                              const std::map<u64, u64>& m, u64 U) {
    if (tau < zeta || lambda < 2 * tau + zeta)
        throw std::invalid_argument("good_index_sets: window exponents inconsistent");
    if (tau - zeta > 22) throw guard_error("good_index_sets: J01 beyond guard");
    const unsigned denom_bits = lambda - 2 * tau - zeta;
    if (denom_bits > 40) throw guard_error("good_index_sets: denominator beyond guard");

    GoodIndexSets out;
    const u64 count = u64(1) << (tau - zeta);
    const u64 denom = u64(1) << denom_bits;
    const u64 Tmax = u64(1) << (5 * eta0 + 7);
    const double eps0 = std::ldexp(1.0, -static_cast<int>(eta0));
    const double eps1 = std::ldexp(1.0, -static_cast<int>(eta1));

    for (u64 nOL = 1; nOL < count; ++nOL) {
        for (u64 T = 1; T < Tmax; T += 2) {
            double frac = static_cast<double>((u128(T) * nOL) % denom) / static_cast<double>(denom);
            if (std::min(frac, 1.0 - frac) < eps0) {
                out.g0.insert(nOL);
                break;
            }
        }
        auto it = m.find(nOL);
        u64 mult = (it != m.end()) ? it->second : 1;
        if (mult < 1 || mult > B)
            throw std::invalid_argument("good_index_sets: multiplier outside [1, B]");
        bool good = true;
        for (u64 s0v = 0; s0v < S && good; ++s0v) {
            for (u64 s1v = 0; s1v < S && good; ++s1v) {
                if (s0v == s1v) continue;
                i64 sdiff = static_cast<i64>(s0v) - static_cast<i64>(s1v);
                i128 num = i128(6) * sdiff * static_cast<i64>(mult) * static_cast<i64>(nOL);
                i64 residue = static_cast<i64>(num % static_cast<i128>(denom));
                if (residue < 0) residue += static_cast<i64>(denom);
                double alpha = static_cast<double>(residue) / static_cast<double>(denom);
                std::vector<double> orbit(U);
                for (u64 k = 0; k < U; ++k) {
                    double v = static_cast<double>(k) * alpha;
                    orbit[k] = v - std::floor(v);
                }
                good = discrepancy::discrepancy_1d(std::move(orbit)) < eps1;
            }
        }
        if (good) out.g1.insert(nOL);
    }
    return out;
}

}  // namespace gelfond::dirichlet
