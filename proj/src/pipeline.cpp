#include "gelfond/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gelfond/correlations.hpp"
#include "gelfond/digits.hpp"

namespace gelfond::pipeline {

namespace {

/// floor(mult * xi * nu / div) with xi = p/q, everything exact in i128.
i64 floor_xi(u64 nu, u64 p, u64 q, i64 mult, i64 div = 1) {
    i128 num = i128(mult) * static_cast<i128>(p) * static_cast<i128>(nu);
    i128 den = i128(q) * div;
    i128 fl = num / den;
    if (num % den != 0 && ((num < 0) != (den < 0))) --fl;
    return static_cast<i64>(fl);
}

double xi_nu(const ParameterSchedule& s, double mult) {
    return mult * static_cast<double>(s.xi_num) * static_cast<double>(s.nu) /
           static_cast<double>(s.xi_den);
}

}  // namespace

ParameterSchedule build_schedule(u64 nu, u64 xi_num, u64 xi_den) {
    if (nu < 1) throw std::invalid_argument("build_schedule: nu >= 1 required");
    if (xi_num == 0 || xi_den == 0) throw std::invalid_argument("build_schedule: bad Xi");
    ParameterSchedule s;
    s.nu = nu;
    s.xi_num = xi_num;
    s.xi_den = xi_den;

    const i64 n = static_cast<i64>(nu);
    // lambda = 3 floor((2 + 2 Xi) nu / 3), rho = floor((1 - 2 Xi) nu),
    // u = floor((2 - 5 Xi) nu)
    i128 q = static_cast<i128>(xi_den), p = static_cast<i128>(xi_num);
    s.lambda = 3 * static_cast<i64>((i128(2) * q + 2 * p) * n / (3 * q));
    s.rho = static_cast<i64>((i128(1) * q - 2 * p) * n / q);
    s.u = static_cast<i64>((i128(2) * q - 5 * p) * n / q);
    s.tau = s.lambda / 3;
    // zeta = floor(lambda (1/6 - 1/139)), omega = floor(3 lambda / 139)
    s.zeta = static_cast<i64>(i128(s.lambda) * (139 - 6) / (6 * 139));
    s.omega = 3 * s.lambda / 139;
    s.eta0 = 4 * s.lambda / 139;
    s.eta1 = floor_xi(nu, xi_num, xi_den, 16);
    s.kappa = floor_xi(nu, xi_num, xi_den, 1, 100);
    s.delta = floor_xi(nu, xi_num, xi_den, 3, 100);
    s.delta1 = 32 * s.kappa;
    s.delta2 = 64 * s.kappa + s.delta;

    s.a = s.tau;
    s.b = s.u - s.rho;
    // L minimal with b - L kappa <= a + 66 kappa
    if (s.kappa > 0) {
        i64 excess = s.b - s.a - 66 * s.kappa;
        s.L = excess <= 0 ? 0 : (excess + s.kappa - 1) / s.kappa;
    } else {
        s.L = 0;
    }
    s.c = s.a + 64 * s.kappa;
    s.d = s.b - s.L * s.kappa;
    s.Q = 4 * (s.L + 1);
    s.mu = static_cast<i64>(nu) - s.rho;
    s.log2_T0 = 5 * s.eta0 + 7;

    s.log2_B = xi_nu(s, 180);
    s.log2_H = xi_nu(s, 8);
    s.log2_R1 = xi_nu(s, 1.0 / 40.0);
    s.log2_S = xi_nu(s, 17);
    // R: the second van der Corput shift range.  E4 forces R <= 2^(lambda-2nu)
    // = 2^(2 Xi nu) up to floors while the fourfold-independence step needs
    // R >= 2^(d-tau); log2 R = Xi nu sits between the two.
    s.log2_R = xi_nu(s, 1);
    s.log2_V = static_cast<double>(s.omega);
    return s;
}

namespace {

struct Check {
    std::string name;
    bool ok;
};

std::vector<Check> run_checks(const ParameterSchedule& s) {
    const i128 p = s.xi_num, q = s.xi_den;
    const i128 n = static_cast<i128>(s.nu);
    std::vector<Check> cs;

    cs.push_back({"lambda divisible by 3", s.lambda % 3 == 0});
    // floor(2^(u-lambda) Htilde) >= 1, i.e. 8 Xi nu >= lambda - u
    cs.push_back({"2^(lambda-u) divides H (H nonzero)",
                  8 * p * n >= i128(s.lambda - s.u) * q});
    cs.push_back({"u >= nu >= rho >= tau >= zeta >= 0",
                  s.u >= static_cast<i64>(s.nu) && static_cast<i64>(s.nu) >= s.rho &&
                      s.rho >= s.tau && s.tau >= s.zeta && s.zeta >= 0});
    cs.push_back({"zeta <= lambda/3 <= tau <= u/2 <= rho <= nu <= lambda/2",
                  3 * s.zeta <= s.lambda && s.lambda <= 3 * s.tau &&
                      2 * s.tau <= s.u && s.u <= 2 * s.rho &&
                      s.rho <= static_cast<i64>(s.nu) &&
                      2 * static_cast<i64>(s.nu) <= s.lambda});
    cs.push_back({"u-rho <= 2tau-zeta <= 2tau <= tau+rho <= 2rho",
                  s.u - s.rho <= 2 * s.tau - s.zeta && s.zeta >= 0 &&
                      s.tau <= s.rho});
    cs.push_back({"lambda - 2 tau - zeta >= 4 eta0 + 4",
                  s.lambda - 2 * s.tau - s.zeta >= 4 * s.eta0 + 4});
    cs.push_back({"S B < 2^(rho-tau)",
                  (17 + 180) * p * n < i128(s.rho - s.tau) * q});
    cs.push_back({"T0 V <= 2^(rho-tau)",
                  s.log2_T0 + s.omega <= s.rho - s.tau});
    cs.push_back({"kappa >= 1 and delta >= 1", s.kappa >= 1 && s.delta >= 1});
    cs.push_back({"L >= 1", s.L >= 1});
    cs.push_back({"b_(L-1) - tau >= 65 kappa",
                  s.L >= 1 && (s.b - (s.L - 1) * s.kappa) - s.tau >= 65 * s.kappa});
    cs.push_back({"kappa <= d - c <= 2 kappa",
                  s.d - s.c >= s.kappa && s.d - s.c <= 2 * s.kappa});
    cs.push_back({"2 tau >= rho", 2 * s.tau >= s.rho});
    cs.push_back({"lambda >= u", s.lambda >= s.u});
    cs.push_back({"R >= 2^(d-tau)", p * n >= i128(s.d - s.tau) * q});
    cs.push_back({"R <= 2^(lambda-2nu)",
                  p * n <= i128(s.lambda - 2 * static_cast<i64>(s.nu)) * q});
    cs.push_back({"zeta >= d - tau >= 4(d-c)",
                  s.zeta >= s.d - s.tau && s.d - s.tau >= 4 * (s.d - s.c)});
    return cs;
}

bool all_pass(const ParameterSchedule& s) {
    auto cs = run_checks(s);
    return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.ok; });
}

}  // namespace

u64 find_nu0(u64 xi_num, u64 xi_den) {
    u64 hi = 1;
    while (hi < (u64(1) << 50) && !all_pass(build_schedule(hi, xi_num, xi_den))) hi *= 2;
    if (!all_pass(build_schedule(hi, xi_num, xi_den))) return 0;  // no pass for this Xi
    u64 lo = hi / 2;  // fails (or 0)
    while (lo + 1 < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (all_pass(build_schedule(mid, xi_num, xi_den)))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

AuditReport audit_schedule(const ParameterSchedule& s) {
    AuditReport rep;
    for (const auto& c : run_checks(s))
        if (!c.ok) rep.violations.push_back(c.name);
    rep.ok = rep.violations.empty();
    rep.nu0 = find_nu0(s.xi_num, s.xi_den);
    return rep;
}

namespace {

double lse(std::initializer_list<double> xs) {
    std::vector<double> v(xs);
    return log2_sum_exp2(v);
}

}  // namespace

const BudgetTerm& ErrorBudget::term(const std::string& name) const {
    for (const auto& t : terms)
        if (t.name == name) return t;
    throw std::invalid_argument("ErrorBudget: unknown term " + name);
}

ErrorBudget error_budget(const ParameterSchedule& s, bool enforce_negativity) {
    AuditReport audit = audit_schedule(s);
    if (!audit.ok)
        throw std::invalid_argument("error_budget: schedule fails audit at nu=" +
                                    std::to_string(s.nu));

    const double nu = static_cast<double>(s.nu);
    const double log2nu = std::log2(nu);
    const double xv = xi_nu(s, 1);
    ErrorBudget eb;
    auto closed = [&](std::string name, double v, std::string note = {}) {
        eb.terms.push_back({std::move(name), BudgetKind::closed_form, v, -v / nu,
                            std::move(note)});
    };

    closed("E0",
           lse({static_cast<double>(s.kappa) - s.log2_H,
                static_cast<double>(s.lambda) / 3.0 - nu,
                1.5 * s.log2_H + (nu - static_cast<double>(s.lambda)) / 2.0}),
           "2^kappa/H + 2^(lambda/3-nu) + H^(3/2) 2^((nu-lambda)/2)");
    closed("E1", s.log2_S + s.log2_B + s.log2_H - (nu - static_cast<double>(s.tau)),
           "S B H / 2^(nu-tau)");
    eb.terms.push_back({"E2", BudgetKind::surrogate,
                        -36.0 * xv + s.log2_S + 2.0 * s.log2_H +
                            (nu - static_cast<double>(s.rho)),
                        0.0, "surrogate 2^(-36 Xi nu) S H^2 2^(nu-rho); raw term depends on m(.)"});
    closed("E3",
           lse({2.0 * s.log2_H + static_cast<double>(s.zeta) + s.log2_S + s.log2_B +
                    static_cast<double>(s.rho + s.tau - s.lambda),
                2.0 * s.log2_H + static_cast<double>(s.zeta) +
                    2.0 * (s.log2_S + s.log2_B) +
                    static_cast<double>(2 * s.tau - s.lambda)}),
           "H^2 2^zeta (S B 2^(rho+tau-lambda) + S^2 B^2 2^(2tau-lambda))");
    double e4m = lse({s.log2_R - static_cast<double>(s.zeta), -s.log2_R,
                      s.log2_R + 2.0 * nu - static_cast<double>(s.lambda)});
    closed("E4-", e4m, "R/2^zeta + 1/R + R 2^(2nu-lambda)");
    closed("E4", e4m + std::log2(std::log(nu)), "E4- times log nu");
    closed("E5",
           2.0 * s.log2_H + s.log2_S + s.log2_B + static_cast<double>(s.omega) -
               static_cast<double>(s.eta0),
           "H^2 S B V 2^(-eta0)");
    closed("E6", lse({s.log2_H - static_cast<double>(s.eta0), s.log2_H - s.log2_S}),
           "H/2^eta0 + H/S");
    closed("E7",
           2.0 * (s.log2_S + s.log2_B + s.log2_H + std::log2(static_cast<double>(s.lambda))) +
               static_cast<double>(s.zeta - s.tau),
           "(S B H lambda)^2 2^(zeta-tau)");
    closed("E8",
           lse({s.log2_R1 - static_cast<double>(s.mu) +
                    static_cast<double>(5 * (s.kappa + s.delta) + 7) +
                    std::log2(4.0 * static_cast<double>(s.L)),
                s.log2_R1 - static_cast<double>(s.mu) +
                    static_cast<double>(3 * (s.c - s.a)) + 2.0,
                -s.log2_R1}),
           "R1 sum M_(l,j) / 2^mu + 1/R1");

    // E12 first: E9's discrepancy average shares its bound
    double e12 = -1e300;
    for (i64 l = 0; l < s.L; ++l) {
        i64 bl = s.b - l * s.kappa;
        double t = std::log2(static_cast<double>(s.L)) +
                   static_cast<double>(4 * (s.kappa + s.delta) + 4) + 0.5 * log2nu +
                   std::max<double>(0.0, static_cast<double>(bl - s.tau - s.zeta)) / 2.0 +
                   lse({-static_cast<double>(s.omega) / 4.0,
                        static_cast<double>(s.tau - bl) / 4.0});
        e12 = std::max(e12, t);
    }
    closed("E9", lse({-static_cast<double>(s.delta), e12}),
           "2^-delta plus the E12-type discrepancy average");
    closed("E10", static_cast<double>(s.d - s.c) - s.log2_R1, "2^(d-c)/R1");
    eb.terms.push_back({"E11", BudgetKind::data_dependent, 0.0, 0.0,
                        "fourfold grid discrepancy; measured at desk scale, averaged into E14"});
    closed("E12", e12,
           "L 2^(4 kappa'+4) nu^(1/2) max(1, 2^((b_l-tau-zeta)/2)) (V^(-1/4) + 2^((tau-b_l)/4))");
    closed("E13",
           lse({2.0 * log2nu - static_cast<double>(s.mu), -static_cast<double>(s.zeta) / 4.0}),
           "nu^2/2^(nu-rho) + 2^(-zeta/4)");
    eb.terms.push_back({"E14", BudgetKind::surrogate,
                        6.0 * log2nu + lse({-xv / 200.0,
                                            2.0 * xv / 25.0 + 2.0 * log2nu -
                                                static_cast<double>(s.omega)}),
                        0.0, "surrogate nu^6 (2^(-Xi nu/200) + 2^(2 Xi nu/25) nu^2 / V)"});

    for (auto& t : eb.terms) {
        if (t.kind == BudgetKind::data_dependent) continue;
        t.decay_c = -t.log2_value / nu;
        if (enforce_negativity && t.log2_value >= 0.0)
            throw property_error("error_budget: term " + t.name +
                                 " has nonnegative exponent at nu=" + std::to_string(s.nu));
    }
    return eb;
}

std::vector<DecayRow> s0_decay_experiment(const std::vector<unsigned>& nu_range,
                                          u64 xi_grid) {
    std::vector<DecayRow> rows;
    for (unsigned nu : nu_range) {
        if (nu > 34) throw guard_error("s0_decay_experiment: nu beyond guard");
        u64 grid = xi_grid;
        if (grid == 0) grid = (nu <= 20) ? (u64(1) << (nu + 2)) : (u64(1) << 22);
        unsigned lg = 0;
        while ((u64(1) << lg) < grid) ++lg;
        if (lg > 24) lg = 24;

        double sup = 0.0;
        if (nu == 0) {
            sup = 1.0;
        } else {
            auto moduli = correlations::s0_grid_moduli(nu, lg);
            sup = *std::max_element(moduli.begin(), moduli.end());
        }
        double padding = M_PI * std::ldexp(1.0, static_cast<int>(nu)) /
                         (2.0 * static_cast<double>(u64(1) << lg));
        rows.push_back({nu, sup, padding});
    }
    return rows;
}

SlopeFit fit_log2_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                        unsigned bootstrap_iterations, u64 seed) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_log2_slope: need >= 2 points");
    const std::size_t n = xs.size();

    auto fit = [](const std::vector<double>& x, const std::vector<double>& y) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        auto m = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        double denom = m * sxx - sx * sx;
        double slope = (m * sxy - sx * sy) / denom;
        return std::pair{slope, (sy - slope * sx) / m};
    };

    SlopeFit out;
    auto [slope, intercept] = fit(xs, ys);
    out.slope = slope;
    out.intercept = intercept;

    Rng rng(seed);
    std::vector<double> slopes;
    slopes.reserve(bootstrap_iterations);
    std::vector<double> bx(n), by(n);
    for (unsigned it = 0; it < bootstrap_iterations; ++it) {
        bool degenerate = true;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = static_cast<std::size_t>(rng.next_below(n));
            bx[i] = xs[j];
            by[i] = ys[j];
            if (bx[i] != bx[0]) degenerate = false;
        }
        if (degenerate) continue;
        slopes.push_back(fit(bx, by).first);
    }
    std::sort(slopes.begin(), slopes.end());
    if (!slopes.empty()) {
        out.ci_lo = slopes[static_cast<std::size_t>(0.025 * static_cast<double>(slopes.size()))];
        out.ci_hi = slopes[std::min(slopes.size() - 1,
                                    static_cast<std::size_t>(0.975 * static_cast<double>(slopes.size())))];
    }
    return out;
}

std::vector<DensityRow> density_experiment(unsigned log2_N, unsigned checkpoints) {
    if (log2_N > 32) throw guard_error("density_experiment: log2_N beyond guard");
    if (checkpoints == 0) checkpoints = log2_N ? log2_N : 1;
    checkpoints = std::min(checkpoints, log2_N ? log2_N : 1);

    std::vector<DensityRow> rows;
    for (unsigned j = 1; j <= checkpoints; ++j) {
        unsigned k = log2_N * j / checkpoints;
        if (j == checkpoints) k = log2_N;
        u64 N = u64(1) << k;
        if (!rows.empty() && rows.back().N == N) continue;
        u64 count = digits::count_tm_cube_zeros(N);
        double dev = std::fabs(static_cast<double>(count) / static_cast<double>(N) - 0.5);
        rows.push_back({N, count, dev});
    }
    return rows;
}

}  // namespace gelfond::pipeline
