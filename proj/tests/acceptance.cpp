// Acceptance suite: runs every stated criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.  Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cli_helpers.hpp"
#include "gelfond/correlations.hpp"
#include "gelfond/digits.hpp"
#include "gelfond/dirichlet.hpp"
#include "gelfond/discrepancy.hpp"
#include "gelfond/pipeline.hpp"
#include "gelfond/trig.hpp"

using namespace gelfond;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, double ms, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s (%9.1f ms)  %s\n", pass ? "PASS" : "FAIL", idx,
                name, ms, detail.c_str());
    if (!pass) ++g_failures;
}

// 1. OEIS prefix reproduction, < 1 ms
void criterion_oeis() {
    auto t0 = Clock::now();
    std::string cubes, squares;
    for (u64 n = 0; n < 28; ++n) {
        cubes += static_cast<char>('0' + digits::thue_morse_along(digits::Poly::cubes, n));
        squares += static_cast<char>('0' + digits::thue_morse_along(digits::Poly::squares, n));
    }
    double ms = ms_since(t0);
    bool pass = cubes == "0110100010000100100000010110" &&
                squares == "0110110111110010111110110100" && ms < 1.0;
    report(1, "OEIS prefix reproduction", pass, ms,
           "cubes=" + cubes + " squares=" + squares);
}

// 2. density trend at 2^22 vs 2^10, single-threaded, < 60 s
void criterion_density() {
    auto t0 = Clock::now();
    set_thread_count(1);
    u64 c10 = digits::count_tm_cube_zeros(u64(1) << 10);
    u64 c22 = digits::count_tm_cube_zeros(u64(1) << 22);
    set_thread_count(0);
    double dev10 = std::fabs(static_cast<double>(c10) / std::ldexp(1.0, 10) - 0.5);
    double dev22 = std::fabs(static_cast<double>(c22) / std::ldexp(1.0, 22) - 0.5);
    double ms = ms_since(t0);
    bool pass = dev22 < 0.02 && dev22 < dev10 && ms < 60000.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "dev(2^10)=%.6f dev(2^22)=%.6f", dev10, dev22);
    report(2, "density trend", pass, ms, buf);
}

// 3. S8 linearization identity, exhaustive nu <= 6 grid plus 10^3 random
void criterion_s8() {
    auto t0 = Clock::now();
    const unsigned lambda = 12;
    long specs = 0, failures = 0;
    double worst = 0;
    for (unsigned nu = 0; nu <= 6; ++nu)
        for (unsigned u = nu; u <= lambda; ++u)
            for (unsigned rho = 0; rho <= nu; ++rho)
                for (unsigned tau = 0; tau <= rho; ++tau)
                    for (unsigned zeta = 0; zeta <= tau; ++zeta) {
                        bool stack = 3 * zeta <= lambda && lambda <= 3 * tau &&
                                     2 * tau <= u && u <= 2 * rho && 2 * nu <= lambda;
                        if (!stack || u - rho > 2 * tau - zeta) continue;
                        for (u64 nLO : {u64(0), u64(1), u64(2)})
                            for (u64 nOL : {u64(0), u64(1), u64(3)})
                                for (u64 nOO : {u64(0), u64(1)})
                                    for (u64 s0v : {u64(0), u64(1)})
                                        for (u64 s1v : {u64(0), u64(2)})
                                            for (u64 m : {u64(1), u64(3)})
                                                for (u64 r : {u64(0), u64(1), u64(2)}) {
                                                    correlations::CorrelationSpec sp{
                                                        u, nu, rho, tau, zeta,
                                                        nLO, nOL, nOO, s0v, s1v, m, r};
                                                    if (!sp.digits_in_range()) continue;
                                                    ++specs;
                                                    double d = std::fabs(
                                                        std::fabs(correlations::s8_defining(sp)) -
                                                        correlations::s8_linearized(sp));
                                                    worst = std::max(worst, d);
                                                    failures += d > 1e-10;
                                                }
                    }
    Rng rng(0x5EED);
    long rand_done = 0;
    while (rand_done < 1000) {
        unsigned zeta = static_cast<unsigned>(rng.next_below(4));
        unsigned tau = zeta + static_cast<unsigned>(rng.next_below(4));
        unsigned rho = tau + static_cast<unsigned>(rng.next_below(4));
        unsigned nu = rho + static_cast<unsigned>(rng.next_below(8));
        unsigned u = std::max(nu, 2 * tau) + static_cast<unsigned>(rng.next_below(4));
        if (!(2 * tau <= u && u <= 2 * rho) || u - rho > 2 * tau - zeta) continue;
        correlations::CorrelationSpec sp;
        sp.u = u; sp.nu = nu; sp.rho = rho; sp.tau = tau; sp.zeta = zeta;
        sp.nLO = rng.next_below(u64(1) << (rho - tau));
        sp.nOL = rng.next_below(u64(1) << (tau - zeta));
        sp.nOO = rng.next_below(u64(1) << zeta);
        sp.sO = rng.next_below(4);
        sp.sL = rng.next_below(4);
        sp.m = 1 + rng.next_below(8);
        sp.r = rng.next_below(4);
        ++rand_done;
        double d = std::fabs(std::fabs(correlations::s8_defining(sp)) -
                             correlations::s8_linearized(sp));
        worst = std::max(worst, d);
        failures += d > 1e-10;
    }
    double ms = ms_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "specs=%ld+1000 worst=%.2e failures=%ld", specs, worst,
                  failures);
    report(3, "S8 linearization identity", specs > 1000 && failures == 0, ms, buf);
}

// 4. exact-identity suites, < 30 s
void criterion_exact_identities() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string detail;

    Rng rng(0x5EED);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t M = 1 + rng.next_below(1024);
        std::vector<cplx> a(M);
        for (auto& v : a) v = {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
        auto res = trig::large_sieve_equality(a);
        if (std::fabs(res.lhs - res.rhs) > 1e-9 * std::max(1.0, std::fabs(res.rhs))) {
            pass = false;
            detail = "large sieve failed at M=" + std::to_string(M);
        }
    }
    for (int trial = 0; trial < 200 && pass; ++trial) {
        std::size_t M = 1 + rng.next_below(256);
        std::vector<cplx> a(M), b(M);
        for (auto& v : a) v = {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
        for (auto& v : b) v = {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
        auto res = trig::summation_by_parts_check(a, b);
        if (std::abs(res.direct - res.rearranged) >
            1e-12 * std::max(1.0, std::abs(res.direct))) {
            pass = false;
            detail = "summation by parts failed";
        }
    }
    auto valuation = [](u64 n, u64 p) {
        u64 acc = 0;
        for (u64 pk = p; pk <= n; pk *= p) {
            acc += n / pk;
            if (pk > n / p) break;
        }
        return acc;
    };
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        for (u64 n = 0; n <= 10000 && pass; ++n) {
            if (digits::legendre_valuation(n, p) != valuation(n, p)) {
                pass = false;
                detail = "legendre failed at n=" + std::to_string(n);
            }
        }
    }
    for (u64 p : {2ULL, 3ULL}) {
        for (u64 n = 0; n <= 512 && pass; ++n) {
            for (u64 t = 0; t <= n; ++t) {
                if (digits::kummer_carries(n, t, p) !=
                    valuation(n, p) - valuation(t, p) - valuation(n - t, p)) {
                    pass = false;
                    detail = "kummer failed at n=" + std::to_string(n);
                    break;
                }
            }
        }
    }
    double ms = ms_since(t0);
    pass = pass && ms < 30000.0;
    report(4, "exact-identity suites", pass, ms,
           detail.empty() ? "sieve/parts/legendre/kummer clean" : detail);
}

// 5. inequality suites: Vaaler, detectors, three vdC verifiers, carry grid, KH
void criterion_inequalities() {
    auto t0 = Clock::now();
    long violations = 0;

    Rng rng(0x5EED);
    for (u64 H : {4, 16, 64, 256}) {
        for (int i = 0; i < 100000; ++i) {
            double t = rng.next_double() * 2.0 - 0.5;
            auto v = trig::vaaler_psi(H, t);
            violations += std::fabs(v.psi - v.psi_H) > v.kappa_H + 1e-9;
            violations += v.kappa_H < -1e-12;
        }
    }
    for (int pair = 0; pair < 50; ++pair) {
        double a = rng.next_double(), b = rng.next_double();
        if (a > b) std::swap(a, b);
        auto det = trig::interval_detector(a, b, 32);
        for (int i = 0; i < 500; ++i) {
            double t = rng.next_double();
            if (trig::dist_to_int(t - a) < 1e-6 || trig::dist_to_int(t - b) < 1e-6) continue;
            double indicator = (a <= t && t < b) ? 1.0 : 0.0;
            double env = det.envelope_at(t);
            violations += std::fabs(indicator - det.detector_at(t)) > env + 1e-9;
            violations += env < -1e-9;
        }
    }

    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.next_below(48);
        std::vector<cplx> v(n);
        for (auto& c : v) c = {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
        std::vector<i64> shifts{0};
        for (std::size_t i = 1 + rng.next_below(4); i-- > 0;)
            shifts.push_back(static_cast<i64>(rng.next_below(8)));
        std::sort(shifts.begin(), shifts.end());
        shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
        auto res = correlations::vdc_generalized_check(v, shifts);
        violations += !(res.lhs <= res.rhs * (1 + 1e-9) + 1e-9);
        violations += !(res.rhs >= -1e-9 && std::fabs(res.rhs_imag) <= 1e-9);
    }
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.next_below(48);
        std::vector<cplx> v(n);
        for (auto& c : v) c = {rng.next_double() * 2 - 1, rng.next_double() * 2 - 1};
        auto res = correlations::vdc_mr_check(v, 1 + rng.next_below(4), 1 + rng.next_below(6));
        violations += !(res.lhs <= res.rhs * (1 + 1e-9) + 1e-9);
        violations += !(res.rhs >= -1e-9 && std::fabs(res.rhs_imag) <= 1e-9);
    }
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 16 + rng.next_below(128);
        std::vector<cplx> g(n);
        for (auto& v : g) v = trig::e_of(rng.next_double());
        unsigned Q = 1 + static_cast<unsigned>(rng.next_below(3));
        std::vector<u64> M(Q);
        for (auto& m : M) m = 1 + rng.next_below(3);
        auto res = correlations::vdc_iterated_check(g, M, 2 + rng.next_below(6));
        violations += !(res.main >= -1e-12 && std::isfinite(res.lhs));
    }

    for (u64 A = 1; A <= 64; ++A)
        for (u64 B = A; B <= 64; ++B)
            for (u64 r = 0; r <= B - A; ++r)
                for (unsigned lam = 0; lam <= 24; ++lam)
                    violations += !digits::carry_count(A, B, r, lam).bound_holds;

    discrepancy::BoundedVariationFn hat{
        [](double t) { return t < 0.5 ? 2 * t : 2 - 2 * t; }, 2.0, 0.5};
    discrepancy::BoundedVariationFn identity{[](double t) { return t; }, 1.0, 0.5};
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(100);
        std::vector<double> pts(n);
        for (auto& p : pts) p = rng.next_double();
        auto seq = discrepancy::TorusSequence::from_1d(pts);
        for (const auto& fn : {hat, identity}) {
            auto res = discrepancy::koksma_hlawka_check(fn, seq);
            violations += res.lhs > res.rhs + 1e-9;
        }
    }

    double ms = ms_since(t0);
    report(5, "inequality suites", violations == 0, ms,
           "violations=" + std::to_string(violations));
}

// 6. odd-elimination census
void criterion_oddelim() {
    auto t0 = Clock::now();
    auto k1 = dirichlet::odd_elimination_census(8, 1);
    auto k2 = dirichlet::odd_elimination_census(23, 2, u64(1) << 10, 0x5EED);
    double ms = ms_since(t0);
    bool pass = k1.good_count >= 128 && !k1.sampled && k2.good_count >= 3072 && k2.sampled &&
                ms < 120000.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "census(8,1)=%llu/256 census(23,2,sampled)=%llu/4096",
                  static_cast<unsigned long long>(k1.good_count),
                  static_cast<unsigned long long>(k2.good_count));
    report(6, "odd-elimination census", pass, ms, buf);
}

// 7. Gowers decay with two-path agreement
void criterion_gowers() {
    auto t0 = Clock::now();
    bool pass = true;
    for (unsigned rho = 0; rho <= 8; ++rho) {
        double direct = correlations::gowers_norm(rho, 2);
        double fast = correlations::gowers_u2_fast(rho);
        if (std::fabs(direct - fast) > 1e-9) pass = false;
    }
    std::vector<double> xs2, ys2;
    for (unsigned rho = 4; rho <= 12; ++rho) {
        xs2.push_back(rho);
        ys2.push_back(std::log2(correlations::gowers_u2_fast(rho)));
    }
    auto fit2 = pipeline::fit_log2_slope(xs2, ys2, 1000, 0x5EED);
    std::vector<double> xs3, ys3;
    for (unsigned rho = 2; rho <= 7; ++rho) {
        xs3.push_back(rho);
        ys3.push_back(std::log2(correlations::gowers_norm(rho, 3)));
    }
    auto fit3 = pipeline::fit_log2_slope(xs3, ys3, 1000, 0x5EED);
    pass = pass && fit2.slope < 0.0 && fit3.slope < 0.0;
    double ms = ms_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "eta(U2)=%.3f eta(U3)=%.3f", -fit2.slope, -fit3.slope);
    report(7, "Gowers norm decay", pass, ms, buf);
}

// 8. schedule audit and budget at nu = 10^9, < 1 s, nu0 stable
void criterion_schedule() {
    auto t0 = Clock::now();
    auto s = pipeline::build_schedule(1000000000);
    auto audit = pipeline::audit_schedule(s);
    bool pass = audit.ok;
    int negative = 0, total = 0;
    if (audit.ok) {
        auto eb = pipeline::error_budget(s);
        for (const auto& t : eb.terms) {
            if (t.kind == pipeline::BudgetKind::data_dependent) continue;
            ++total;
            negative += t.log2_value < 0.0;
        }
        pass = pass && negative == total;
    }
    u64 nu0_again = pipeline::find_nu0();
    pass = pass && nu0_again == audit.nu0;
    double ms = ms_since(t0);
    pass = pass && ms < 1000.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "ok=%d negative=%d/%d nu0=%llu", audit.ok, negative, total,
                  static_cast<unsigned long long>(audit.nu0));
    report(8, "schedule audit and budget", pass, ms, buf);
}

// 9. S0 decay over nu in {8..24} with bootstrap CI excluding 0, < 10 min
void criterion_s0_decay() {
    auto t0 = Clock::now();
    std::vector<unsigned> range;
    for (unsigned nu = 8; nu <= 24; ++nu) range.push_back(nu);
    auto rows = pipeline::s0_decay_experiment(range);
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.nu);
        ys.push_back(std::log2(r.sup));
    }
    auto fit = pipeline::fit_log2_slope(xs, ys, 2000, 0x5EED);
    double ms = ms_since(t0);
    bool pass = fit.slope < 0.0 && fit.ci_hi < 0.0 && ms < 600000.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "slope=%.4f CI=[%.4f,%.4f] sup24=%.5f", fit.slope, fit.ci_lo,
                  fit.ci_hi, rows.back().sup);
    report(9, "S0 decay experiment", pass, ms, buf);
}

// 10. byte-identical CLI output at 1 and 8 threads
void criterion_determinism() {
    auto t0 = Clock::now();
    const char* configs[] = {
        "density --log2-n 14",
        "expsum-s0 --nu 12",
        "gowers --rho 8 --q 2",
        "params --nu 1000000000 --audit --budget",
        "s8-identity --exhaustive-nu 5 --random 200",
    };
    bool pass = true;
    std::string detail = "all configs byte-identical";
    for (const char* cfg : configs) {
        auto a = cli_test::run_cli(cfg, "GELFOND_THREADS=1");
        auto b = cli_test::run_cli(cfg, "GELFOND_THREADS=8");
        auto c = cli_test::run_cli(cfg, "GELFOND_THREADS=1");
        if (a.exit_code != 0 || a.out != b.out || a.out != c.out || a.out.empty()) {
            pass = false;
            detail = std::string("mismatch for: ") + cfg;
        }
    }
    report(10, "determinism across threads", pass, ms_since(t0), detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_oeis();
    criterion_density();
    criterion_s8();
    criterion_exact_identities();
    criterion_inequalities();
    criterion_oddelim();
    criterion_gowers();
    criterion_schedule();
    criterion_s0_decay();
    criterion_determinism();
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
