#pragma once

#include <string>
#include <vector>

#include "gelfond/util.hpp"

namespace gelfond::pipeline {

/// The full driver-indexed parameter assignment.  Index-like parameters are
/// exact integers computed with rational floors; the "small values" B, H,
/// R1, R, S (and the derived V, T0) are tracked through their log2 exponents,
/// which is the granularity the budget needs.  Floor rounding shifts each
/// such exponent by less than one bit.
struct ParameterSchedule {
    u64 nu = 0;
    u64 xi_num = 1, xi_den = 15000;

    i64 lambda = 0, rho = 0, u = 0, tau = 0, zeta = 0, omega = 0;
    i64 eta0 = 0, eta1 = 0, kappa = 0, delta = 0, delta1 = 0, delta2 = 0;
    i64 L = 0, c = 0, d = 0, a = 0, b = 0, Q = 0, mu = 0;
    i64 log2_T0 = 0;  // T0 = 2^(5 eta0 + 7)

    double log2_B = 0, log2_H = 0, log2_R1 = 0, log2_R = 0, log2_S = 0;
    double log2_V = 0;  // = omega
};

ParameterSchedule build_schedule(u64 nu, u64 xi_num = 1, u64 xi_den = 15000);

struct AuditReport {
    bool ok = false;
    std::vector<std::string> violations;
    u64 nu0 = 0;  // least audited driver for this Xi (scan + refine)
};

AuditReport audit_schedule(const ParameterSchedule& s);

/// Least nu passing the audit, by a log-spaced scan refined by bisection.
u64 find_nu0(u64 xi_num = 1, u64 xi_den = 15000);

enum class BudgetKind { closed_form, surrogate, data_dependent };

struct BudgetTerm {
    std::string name;
    BudgetKind kind = BudgetKind::closed_form;
    double log2_value = 0;  // meaningless for data_dependent terms
    double decay_c = 0;     // -log2_value / nu
    std::string note;
};

struct ErrorBudget {
    std::vector<BudgetTerm> terms;
    const BudgetTerm& term(const std::string& name) const;
};

/// log2-domain budget for E0..E14.  Requires a passing audit.  With
/// enforce_negativity (the default) every closed-form or surrogate exponent
/// must be negative; the polynomial nu-factors in E13/E14 push that threshold
/// well above the bare audit threshold nu0, so grid scans over [nu0, ...)
/// evaluate with enforcement off.
ErrorBudget error_budget(const ParameterSchedule& s, bool enforce_negativity = true);

struct DecayRow {
    unsigned nu;
    double sup;      // grid supremum of |S0(nu, .)|
    double padding;  // Lipschitz padding max|S0'| / (2 grid)
};

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double ci_lo = 0, ci_hi = 0;  // bootstrap interval for the slope
};

/// sup_xi |S0| on a dyadic xi grid per nu.  xi_grid = 0 selects the default
/// 2^(nu+2) capped at 2^22; other values round up to the next power of two.
std::vector<DecayRow> s0_decay_experiment(const std::vector<unsigned>& nu_range,
                                          u64 xi_grid = 0);

SlopeFit fit_log2_slope(const std::vector<double>& xs, const std::vector<double>& log2_ys,
                        unsigned bootstrap_iterations = 2000, u64 seed = 0x5EED);

struct DensityRow {
    u64 N;
    u64 count;         // #{n < N : t(n^3) = 0}
    double deviation;  // |count/N - 1/2|
};

/// Exact zero-counts at geometric checkpoints up to 2^log2_N.
std::vector<DensityRow> density_experiment(unsigned log2_N, unsigned checkpoints = 0);

}  // namespace gelfond::pipeline
