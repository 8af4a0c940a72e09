#include "gelfond/trig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gelfond::trig {

double dist_to_int(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

cplx geometric_sum(u64 H, double t) {
    if (H == 0) return {0.0, 0.0};
    constexpr double kTol = 1e-8;
    double d = dist_to_int(t);
    if (d < kTol) {
        cplx acc{0.0, 0.0};
        for (u64 h = 0; h < H; ++h) acc += e_of(static_cast<double>(h) * t);
        return acc;
    }
    // e((H-1)t/2) sin(pi H t) / sin(pi t)
    double s = std::sin(M_PI * static_cast<double>(H) * t) / std::sin(M_PI * t);
    return e_of(static_cast<double>(H - 1) * t / 2.0) * s;
}

double vaaler_phi(double t) {
    double at = std::fabs(t);
    if (at > 1.0) throw std::invalid_argument("vaaler_phi: |t| > 1");
    if (at > 1.0 - 1e-12) return 0.0;  // continuous extension at the endpoints
    double x = M_PI * t;
    double cot_term;  // pi t cot(pi t)
    if (at < 0.05) {
        double x2 = x * x;
        cot_term = 1.0 - x2 / 3.0 - x2 * x2 / 45.0 - 2.0 * x2 * x2 * x2 / 945.0;
    } else {
        cot_term = x * std::cos(x) / std::sin(x);
    }
    return cot_term * (1.0 - at) + at;
}

VaalerPsi vaaler_psi(u64 H, double t) {
    if (H < 1) throw std::invalid_argument("vaaler_psi: H >= 1 required");
    VaalerPsi out{};
    out.psi = t - std::floor(t) - 0.5;

    // psi_H(t) = -sum_{1<=h<H} phi(h/H) sin(2 pi h t) / (pi h)
    double acc = 0.0;
    for (u64 h = 1; h < H; ++h) {
        double hh = static_cast<double>(h);
        acc -= vaaler_phi(hh / static_cast<double>(H)) *
               std::sin(2.0 * M_PI * hh * t) / (M_PI * hh);
    }
    out.psi_H = acc;

    // kappa_H = Fejer kernel / 2H
    double d = dist_to_int(t);
    if (d < 1e-12) {
        out.kappa_H = 0.5;
    } else {
        double num = std::sin(M_PI * static_cast<double>(H) * t);
        double den = std::sin(M_PI * t);
        double ratio = num / den;
        out.kappa_H = ratio * ratio / (2.0 * static_cast<double>(H) * static_cast<double>(H));
    }
    return out;
}

VaalerCoefficients interval_detector(double alpha, double beta, u64 H) {
    if (!(0.0 <= alpha && alpha <= beta && beta <= 1.0))
        throw std::invalid_argument("interval_detector: need 0 <= alpha <= beta <= 1");
    if (H < 1) throw std::invalid_argument("interval_detector: H >= 1 required");

    VaalerCoefficients vc;
    vc.H = H;
    vc.alpha = alpha;
    vc.beta = beta;
    const double delta = beta - alpha;
    const std::size_t n = 2 * static_cast<std::size_t>(H) - 1;
    vc.main.assign(n, cplx{});
    vc.kernel.assign(n, cplx{});

    const double Hd = static_cast<double>(H);
    for (i64 h = -static_cast<i64>(H) + 1; h < static_cast<i64>(H); ++h) {
        std::size_t idx = static_cast<std::size_t>(h + static_cast<i64>(H) - 1);
        double hd = static_cast<double>(h);
        if (h == 0) {
            vc.main[idx] = delta;
        } else {
            // expanding psi_H(x-beta) - psi_H(x-alpha) gives the coefficient
            // +(2 pi i h)^-1 phi(h/H)(1 - e(-delta h))
            cplx inv_2pih = cplx(0.0, -1.0 / (2.0 * M_PI * hd));  // (2 pi i h)^-1
            vc.main[idx] = inv_2pih * vaaler_phi(hd / Hd) * (1.0 - e_of(-delta * hd));
        }
        vc.kernel[idx] = (1.0 - std::fabs(hd) / Hd) / (2.0 * Hd) *
                         (e_of(-hd * alpha) + e_of(-hd * beta));
    }
    return vc;
}

double VaalerCoefficients::detector_at(double x) const {
    cplx acc{};
    for (i64 h = -static_cast<i64>(H) + 1; h < static_cast<i64>(H); ++h) {
        std::size_t idx = static_cast<std::size_t>(h + static_cast<i64>(H) - 1);
        acc += main[idx] * e_of(static_cast<double>(h) * (x - alpha));
    }
    return acc.real();
}

double VaalerCoefficients::envelope_at(double x) const {
    cplx acc{};
    for (i64 h = -static_cast<i64>(H) + 1; h < static_cast<i64>(H); ++h) {
        std::size_t idx = static_cast<std::size_t>(h + static_cast<i64>(H) - 1);
        acc += kernel[idx] * e_of(static_cast<double>(h) * x);
    }
    return acc.real();
}

SievePair large_sieve_equality(const std::vector<cplx>& a) {
    const std::size_t M = a.size();
    if (M == 0) throw std::invalid_argument("large_sieve_equality: empty vector");

    std::vector<cplx> twiddle(M);
    for (std::size_t k = 0; k < M; ++k)
        twiddle[k] = e_of(-static_cast<double>(k) / static_cast<double>(M));

    std::vector<double> terms(M);
    for (std::size_t h = 0; h < M; ++h) {
        cplx inner{};
        for (std::size_t m = 0; m < M; ++m) inner += a[m] * twiddle[(h * m) % M];
        terms[h] = std::norm(inner);
    }
    std::vector<double> sq(M);
    for (std::size_t m = 0; m < M; ++m) sq[m] = std::norm(a[m]);

    return {pairwise_sum(terms), static_cast<double>(M) * pairwise_sum(sq)};
}

PartsPair summation_by_parts_check(const std::vector<cplx>& a,
                                   const std::vector<cplx>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("summation_by_parts_check: length mismatch");
    const std::size_t M = a.size();
    PartsPair out{};
    for (std::size_t m = 0; m < M; ++m) out.direct += a[m] * b[m];
    if (M == 0) return out;

    std::vector<cplx> tail(M + 1);  // tail[l] = sum_{m >= l} a_m
    for (std::size_t m = M; m-- > 0;) tail[m] = tail[m + 1] + a[m];
    out.rearranged = b[0] * tail[0];
    for (std::size_t l = 1; l < M; ++l)
        out.rearranged += (b[l] - b[l - 1]) * tail[l];
    return out;
}

RangeExtension range_extension_check(const std::vector<cplx>& a, i64 x,
                                     double y, u64 quad_points) {
    const i64 z = x + static_cast<i64>(a.size());
    if (y < static_cast<double>(x) || y > static_cast<double>(z))
        throw std::invalid_argument("range_extension_check: y outside [x, z]");
    if (quad_points < 1000)
        throw std::invalid_argument("range_extension_check: quad_points >= 1000 required");

    cplx head{};
    for (i64 n = x; n < z && static_cast<double>(n) < y; ++n)
        head += a[static_cast<std::size_t>(n - x)];
    const double lhs = std::abs(head);

    const double cap = std::ceil(y) - static_cast<double>(x);
    if (cap <= 0.0) return {lhs, 0.0, 0.0};

    double abs_sum = 0.0, weighted_idx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        abs_sum += std::abs(a[i]);
        weighted_idx += std::fabs(static_cast<double>(x + static_cast<i64>(i))) * std::abs(a[i]);
    }

    // Midpoint rule.  The integrand  w(xi)|F(xi)|  is Lipschitz with
    //   L <= cap * 2 pi sum|n a_n|  +  (sum|a_n|) * 2 cap^2,
    // giving the rigorous error bound L / (4 N).
    const u64 N = quad_points;
    const double h = 1.0 / static_cast<double>(N);
    std::vector<double> samples(N);
    parallel_chunks(N, 4096, [&](std::size_t, u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            double xi = (static_cast<double>(i) + 0.5) * h;
            double w = std::min(cap, 1.0 / (2.0 * dist_to_int(xi)));
            cplx F{};
            for (std::size_t k = 0; k < a.size(); ++k)
                F += a[k] * e_of(static_cast<double>(x + static_cast<i64>(k)) * xi);
            samples[i] = w * std::abs(F);
        }
    });
    const double rhs = pairwise_sum(samples) * h;
    const double lipschitz = cap * 2.0 * M_PI * weighted_idx + abs_sum * 2.0 * cap * cap;
    return {lhs, rhs, lipschitz / (4.0 * static_cast<double>(N))};
}

HolderPair holder_partition_check(const std::vector<cplx>& f,
                                  const std::vector<cplx>& g,
                                  const std::vector<std::vector<std::size_t>>& partition) {
    if (f.size() != g.size())
        throw std::invalid_argument("holder_partition_check: length mismatch");
    std::vector<char> seen(f.size(), 0);
    for (const auto& part : partition) {
        for (std::size_t idx : part) {
            if (idx >= f.size() || seen[idx])
                throw std::invalid_argument("holder_partition_check: not a partition");
            seen[idx] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::invalid_argument("holder_partition_check: indices not covered");

    cplx total{};
    for (std::size_t i = 0; i < f.size(); ++i) total += f[i] * g[i];

    double sup_sum = 0.0, sum_sup = 0.0;
    for (const auto& part : partition) {
        double fsup = 0.0, gsum = 0.0;
        for (std::size_t idx : part) {
            fsup = std::max(fsup, std::abs(f[idx]));
            gsum += std::abs(g[idx]);
        }
        sum_sup += fsup;
        sup_sum = std::max(sup_sum, gsum);
    }
    return {std::abs(total), sum_sup * sup_sum};
}

}  // namespace gelfond::trig
