#pragma once

#include <complex>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond::trig {

/// e(x) = exp(2 pi i x).
inline cplx e_of(double x) {
    double a = 2.0 * M_PI * x;
    return {std::cos(a), std::sin(a)};
}

/// Distance from x to the nearest integer.
double dist_to_int(double x);

/// Geometric sum phi_H(t) = sum_{0 <= h < H} e(ht).  Closed form away from
/// integers, direct summation near them.  |phi_H(t)| <= min(H, 1/(2||t||)).
cplx geometric_sum(u64 H, double t);

/// Continuous extension of  phi(t) = pi t (1-|t|) cot(pi t) + |t|  to [-1,1].
double vaaler_phi(double t);

struct VaalerPsi {
    double psi_H;    // degree-<H approximation of the sawtooth
    double kappa_H;  // Fejer error envelope, nonnegative
    double psi;      // sawtooth t - floor(t) - 1/2
};

/// Vaaler polynomial values at t: guarantees |psi - psi_H| <= kappa_H.
VaalerPsi vaaler_psi(u64 H, double t);

/// Trigonometric detector for the interval [alpha, beta) + Z.
/// main[h+H-1]  = a_h(beta-alpha, H), |h| < H
/// kernel[h+H-1]= b_h(alpha, beta, H), |h| < H, with |b_h| <= 1/H.
struct VaalerCoefficients {
    u64 H = 1;
    double alpha = 0, beta = 0;
    std::vector<cplx> main;
    std::vector<cplx> kernel;

    /// psi_{alpha,beta,H}(x), real by conjugate symmetry.
    double detector_at(double x) const;
    /// kappa_{alpha,beta,H}(x) >= |1_{[alpha,beta)+Z}(x) - detector_at(x)|.
    double envelope_at(double x) const;
};

VaalerCoefficients interval_detector(double alpha, double beta, u64 H);

struct SievePair {
    double lhs;  // sum_h |sum_m a_m e(-hm/M)|^2
    double rhs;  // M sum_m |a_m|^2
};

/// Exact "large sieve equality"; lhs == rhs up to rounding.
SievePair large_sieve_equality(const std::vector<cplx>& a);

struct PartsPair {
    cplx direct;      // sum a_m b_m
    cplx rearranged;  // b_0 sum a_m + sum_l (b_l - b_{l-1}) sum_{m>=l} a_m
};

PartsPair summation_by_parts_check(const std::vector<cplx>& a,
                                   const std::vector<cplx>& b);

struct RangeExtension {
    double lhs;         // |sum_{x <= n < y} a_n|
    double rhs;         // quadrature of the majorant integral
    double quad_error;  // rigorous bound on the quadrature error
};

/// Verifies |sum_{x<=n<y} a_n| <= int_0^1 min(ceil(y)-x, 1/(2||xi||)) |sum_{x<=n<z} a_n e(n xi)| dxi.
/// a_n is indexed by n in [x, x + a.size()); y must lie in [x, x + a.size()].
RangeExtension range_extension_check(const std::vector<cplx>& a, i64 x,
                                     double y, u64 quad_points);

struct HolderPair {
    double lhs;  // |sum f g|
    double rhs;  // (sum_P sup_P |f|) * (sup_P sum_P |g|)
};

/// partition: index sets that must cover {0, ..., f.size()-1} disjointly.
HolderPair holder_partition_check(const std::vector<cplx>& f,
                                  const std::vector<cplx>& g,
                                  const std::vector<std::vector<std::size_t>>& partition);

}  // namespace gelfond::trig
