#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond::dirichlet {

struct OddEliminationResult {
    unsigned omega_bits = 0;  // kept for context in reports
    bool found = false;
    std::optional<u64> witness_M;  // least odd witness for omega_0 = 0
    u64 checked_omega0 = 0;
};

/// Property P(omega, ell, kappa, mu): every omega_0 < 2^mu admits an odd
/// M < 2^(5 kappa + 7) with (M (2^mu omega + omega_0))^[ell-kappa, ell) = 0.
/// Exhaustive search; every found witness is re-verified by digit extraction.
OddEliminationResult odd_eliminate(u64 omega, unsigned ell, unsigned kappa, unsigned mu);

struct CensusResult {
    u64 good_count = 0;
    u64 paper_bound = 0;  // 2^(3 kappa + 4) (2^kappa - 1)
    bool sampled = false; // omega_0 range subsampled (fixed seed) when large
    u64 omega0_samples = 0;
};

/// Census of good omega < 2^(4 kappa + 4) for mu = ell - 4 kappa - 4 >= 0.
/// When 2^mu exceeds omega0_budget the omega_0 loop is subsampled with the
/// given seed and the result is flagged "sampled".
CensusResult odd_elimination_census(unsigned ell, unsigned kappa,
                                    u64 omega0_budget = u64(1) << 10,
                                    u64 seed = 0x5EED);

struct Progression {
    u64 first = 0;  // first element
    u64 last = 0;   // last element (inclusive)
    u64 diff = 1;   // common difference T
    u64 size() const { return (last - first) / diff + 1; }
};

struct APPartition {
    u64 lo = 0, hi = 0;  // parent interval [lo, hi)
    u64 T = 1, V = 1;
    std::vector<Progression> progressions;

    /// Disjointness, coverage and the size bounds V/2 <= |P| <= V.
    void validate() const;
};

/// Partition [lo, hi) into progressions of difference T with V/2 <= |P| <= V.
/// Deterministic; throws when T V > hi - lo.
APPartition partition_into_aps(u64 lo, u64 hi, u64 T, u64 V);

struct GoodIndexSets {
    std::set<u64> g0;  // odd T < 2^(5 eta0 + 7) approximates nOL / 2^(lambda-2tau-zeta)
    std::set<u64> g1;  // orbit discrepancy below 2^-eta1
};

/// Direct search for the good-index sets on J01 = {1, ..., 2^(tau-zeta)-1}
/// (0 excluded by convention).  m maps nOL to its odd multiplier; U is the
/// orbit length for the discrepancy side; S bounds the shift difference.
GoodIndexSets good_index_sets(unsigned lambda, unsigned tau, unsigned zeta,
                              unsigned eta0, unsigned eta1, u64 S, u64 B,
                              const std::map<u64, u64>& m, u64 U);

}  // namespace gelfond::dirichlet
