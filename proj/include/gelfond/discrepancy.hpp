#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond::discrepancy {

/// Finite sequence on the d-dimensional torus, coordinates reduced to [0,1).
struct TorusSequence {
    int dim = 1;
    std::vector<double> pts;  // flattened, size N * dim

    std::size_t size() const { return pts.size() / static_cast<std::size_t>(dim); }
    double coord(std::size_t n, int i) const {
        return pts[n * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)];
    }

    static TorusSequence from_1d(std::vector<double> xs);
    static TorusSequence from_rows(int dim, std::vector<double> flat);
};

struct DiscrepancyReport {
    double value = 0.0;            // exact in dim 1; grid lower bound otherwise
    std::string method;            // "exact-1d" | "grid-supremum"
    u64 grid_resolution = 0;       // 0 for the exact sweep
    double padding = 0.0;          // dim/grid_resolution upper-bound padding
    std::optional<double> etk_rhs;
    std::optional<u64> H_used;
};

/// Rotation-invariant interval discrepancy.  Exact O(N log N) sweep in
/// dimension 1; supremum over grid-aligned boxes (wraparound included) in
/// higher dimensions, reported as a lower bound with padding dim/grid.
DiscrepancyReport discrepancy(const TorusSequence& seq, u64 grid_resolution = 0);

/// Exact sweep for a plain vector of 1-d points (any order, reduced mod 1).
double discrepancy_1d(std::vector<double> xs);

/// 1/H + sum_{0 < ||h||_inf < H} |(1/N) sum_n e(h . x_n)| / mu(h).
double etk_rhs(const TorusSequence& seq, u64 H);

struct BoundedVariationFn {
    std::function<double(double)> f;
    double variation;  // total variation on [0,1]
    double integral;   // exact value of the integral over [0,1]
};

struct KoksmaHlawkaPair {
    double lhs;  // |mean of f over the points - integral|
    double rhs;  // variation * D_N
};

KoksmaHlawkaPair koksma_hlawka_check(const BoundedVariationFn& fn,
                                     const TorusSequence& seq);

/// sum_{d < 2^eta} D_U of the orbit (m d / 2^eta mod 1)_{m < U}, exact sweep
/// per orbit with integer orbit arithmetic.
double mean_dyadic_discrepancy(u64 U, unsigned eta);

struct LeftshiftAverage {
    double lhs;        // (1/N) sum_j D_M((m alpha_j / q)_{m<M})
    double rhs_shape;  // q logp M logp N / M + D_N(alpha)^(1/2) / q
};

LeftshiftAverage leftshift_average(const std::vector<double>& alphas, u64 q, u64 M);

}  // namespace gelfond::discrepancy
