#pragma once

#include <array>
#include <complex>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond::correlations {

/// Argument record for the eightfold-split correlation sum and its
/// linearized form.  Window exponents satisfy u >= nu >= rho >= tau >= zeta
/// >= 0; the split digits live in their half-open dyadic ranges.
struct CorrelationSpec {
    unsigned u = 0, nu = 0, rho = 0, tau = 0, zeta = 0;
    u64 nLO = 0;  // digits [tau, rho)
    u64 nOL = 0;  // digits [zeta, tau)
    u64 nOO = 0;  // digits [0, zeta)
    u64 sO = 0, sL = 0;  // shift multipliers < S
    u64 m = 0;           // odd multiplier chosen by Dirichlet approximation
    u64 r = 0;           // correlation shift

    bool windows_sorted() const {
        return u >= nu && nu >= rho && rho >= tau && tau >= zeta;
    }
    bool digits_in_range() const {
        return nLO < (u64(1) << (rho - tau)) && nOL < (u64(1) << (tau - zeta)) &&
               nOO < (u64(1) << zeta);
    }
    /// u-rho <= 2tau-zeta <= 2tau <= tau+rho <= 2rho (linearization chain)
    bool chain_holds() const {
        return u - rho <= 2 * tau - zeta && zeta <= 2 * tau && tau <= rho;
    }
};

/// S0(nu, xi) = 2^-nu sum_{n < 2^nu} e(s(n^3)/2 + n xi).
cplx s0(unsigned nu, double xi);

/// Folded evaluation of |S0(nu, k/2^g)| for all k < 2^g via one FFT;
/// returns the 2^g moduli.  Streams over n, so nu may exceed memory-scale.
std::vector<double> s0_grid_moduli(unsigned nu, unsigned log2_grid);

/// F(lambda, h, M) = sum_{M <= n < 2M} e(h n^3 / 2^lambda).
cplx cube_weyl_sum(unsigned lambda, u64 h, u64 M);

struct VdcPair {
    double lhs;
    double rhs;
    double rhs_imag;  // must vanish up to rounding
};

/// Generalized van der Corput: |sum_n x_n|^2 against the shifted-correlation
/// majorant over the shift set S.
VdcPair vdc_generalized_check(const std::vector<cplx>& x, const std::vector<i64>& shifts);

/// Mauduit-Rivat form with shifts Mr, |r| < R.
VdcPair vdc_mr_check(const std::vector<cplx>& z, u64 M, u64 R);

struct VdcIterated {
    double lhs;   // |mean g|^(2^Q)
    double main;  // R^-Q sum over r in {1..R-1}^Q of |K(rM)|
    double err;   // (sum M_l) R / |J| + 1/R
};

/// Iterated van der Corput verifier; lhs <= C (main + err) with fitted C.
VdcIterated vdc_iterated_check(const std::vector<cplx>& g,
                               const std::vector<u64>& M, u64 R);

/// Box correlation of the iterated inequality (conjugate on odd parity).
cplx gowers_box_correlation(const std::vector<cplx>& g, const std::vector<i64>& m);

/// K(mu, a, b, alpha, beta) = 2^-mu sum_n prod_j e(s^[a,b)(n alpha_j + beta_j)/2).
/// All factors are +-1, so the value is real.
double fourfold_correlation(unsigned mu, unsigned a, unsigned b,
                            const std::array<u64, 4>& alpha,
                            const std::array<u64, 4>& beta);

struct LinearizedPhases {
    double x;       // 6 n0 (s0-s1) m / 2^(lambda-2tau)
    double f;       // (3 n0^2 (s0-s1) m + 3 n0 (s0^2-s1^2) m^2 2^tau) / 2^(lambda-tau)
    double K;       // three-term geometric-sum argument
    double Kprime;  // f + nLO * x
};

/// Phases fed to the geometric sum; requires the window stack
/// zeta <= lambda/3 <= tau <= u/2 <= rho <= nu <= lambda/2.
LinearizedPhases linearized_phases(const CorrelationSpec& spec, unsigned lambda);

/// Slopes of the linearized correlation for one (eps, ts) choice.
struct LinearizedSlopes {
    u128 A;       // nLO 2^tau + nOL 2^zeta + nOO + eps r + ts m 2^tau
    u128 Qtilde;  // 3 A^2
    u128 Qprime;  // 6 nA 2^tau nLO + 6 ts m nA 2^tau + 3 nA^2
    u128 beta;    // floor(A^3 / 2^rho)
    u64 c;        // s^[0,rho)(A^3)
};

LinearizedSlopes linearized_slopes(const CorrelationSpec& spec, int eps, u64 ts);

/// Defining form: fourfold product over (eps, ts) with the cubes expanded
/// exactly.  Real by construction.
double s8_defining(const CorrelationSpec& spec);

/// Linearized form: |S8| as 2^-(nu-rho) |sum_nLL prod e(s^[0,u-rho)(nLL Q' + beta)/2)|.
/// Exact identity with |s8_defining|: the cube is gone, nLL enters linearly.
double s8_linearized(const CorrelationSpec& spec);

/// Companion identity form with the raw slopes Qtilde = 3A^2 (cross-oracle).
double s8_intermediate(const CorrelationSpec& spec);

/// T(nOL, eps, r, a, h) = 2^-zeta sum_{nOO < 2^zeta} e(h (nOL 2^zeta + nOO + eps r)^2 / 2^a).
cplx quadratic_phase_sum(u64 nOL, int eps, u64 r, unsigned a, u64 h, unsigned zeta);

/// Normalized Gowers box average of the Thue-Morse phase on Z/2^rho:
///   2^-(Q+1)rho sum_{r in (Z/2^rho)^Q} sum_n prod_eps e(s^[0,rho)(n + eps.r)/2).
double gowers_norm(unsigned rho, unsigned Q);

/// U^2 value via the Fourier identity sum_h |fhat(h)|^4 (independent path).
double gowers_u2_fast(unsigned rho);

}  // namespace gelfond::correlations
