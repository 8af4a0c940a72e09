#include "gelfond/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gelfond/trig.hpp"

namespace gelfond::discrepancy {

namespace {

double reduce_mod1(double x) {
    double f = x - std::floor(x);
    return (f >= 1.0) ? 0.0 : f;  // guard against floor rounding at 1.0
}

}  // namespace

TorusSequence TorusSequence::from_1d(std::vector<double> xs) {
    for (double& x : xs) x = reduce_mod1(x);
    return {1, std::move(xs)};
}

TorusSequence TorusSequence::from_rows(int dim, std::vector<double> flat) {
    if (dim < 1) throw std::invalid_argument("TorusSequence: dim >= 1 required");
    if (flat.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("TorusSequence: size not a multiple of dim");
    for (double& x : flat) x = reduce_mod1(x);
    return {dim, std::move(flat)};
}

// Exact rotation-invariant sweep.  With sorted points y_0 <= ... <= y_{N-1}
// and the periodic extension y_{k+N} = y_k + 1, every extremal arc has both
// endpoints at sample points:
//   overfilled arcs  [y_i, y_j]:  (j-i+1)/N - (y_j - y_i),
//   underfilled arcs (y_i, y_j):  (y_j - y_i) - (j-i-1)/N,
// and the two families reduce to window maxima of P_j = (j+1)/N - y_j,
// Q_i = y_i - i/N, R_k = y_k - k/N.
double discrepancy_1d(std::vector<double> xs) {
    const std::size_t N = xs.size();
    if (N == 0) throw std::invalid_argument("discrepancy: empty sequence");
    for (double& x : xs) x = reduce_mod1(x);
    std::sort(xs.begin(), xs.end());

    const double dN = static_cast<double>(N);
    std::vector<double> y(2 * N);
    for (std::size_t k = 0; k < N; ++k) {
        y[k] = xs[k];
        y[k + N] = xs[k] + 1.0;
    }

    std::vector<double> P(2 * N), Q(N), R(2 * N);
    for (std::size_t k = 0; k < 2 * N; ++k) {
        P[k] = static_cast<double>(k + 1) / dN - y[k];
        R[k] = y[k] - static_cast<double>(k) / dN;
    }
    for (std::size_t k = 0; k < N; ++k) Q[k] = y[k] - static_cast<double>(k) / dN;

    std::vector<double> prefmaxQ(N), sufmaxQ(N), prefminR(N), sufminR(N);
    prefmaxQ[0] = Q[0];
    prefminR[0] = R[0];
    for (std::size_t k = 1; k < N; ++k) {
        prefmaxQ[k] = std::max(prefmaxQ[k - 1], Q[k]);
        prefminR[k] = std::min(prefminR[k - 1], R[k]);
    }
    sufmaxQ[N - 1] = Q[N - 1];
    sufminR[N - 1] = R[N - 1];
    for (std::size_t k = N - 1; k-- > 0;) {
        sufmaxQ[k] = std::max(sufmaxQ[k + 1], Q[k]);
        sufminR[k] = std::min(sufminR[k + 1], R[k]);
    }

    double over = 0.0;
    for (std::size_t j = 0; j < N; ++j) over = std::max(over, P[j] + prefmaxQ[j]);
    for (std::size_t j = N; j + 1 < 2 * N; ++j)
        over = std::max(over, P[j] + sufmaxQ[j - N + 1]);

    double under = 0.0;
    for (std::size_t j = 1; j < N; ++j) under = std::max(under, R[j] - prefminR[j - 1]);
    for (std::size_t j = N; j < 2 * N; ++j)
        under = std::max(under, R[j] - sufminR[j - N]);
    under += 1.0 / dN;

    return std::min(1.0, std::max(over, under));
}

namespace {

// Supremum of |count/N - volume| over grid-aligned boxes with wraparound.
double grid_supremum(const TorusSequence& seq, u64 G) {
    const int d = seq.dim;
    const std::size_t N = seq.size();
    const std::size_t side = static_cast<std::size_t>(G) + 1;

    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) {
        if (cells > (std::size_t(1) << 28) / side)
            throw guard_error("discrepancy: grid too fine for this dimension");
        cells *= side;
    }
    // arcs per axis ~ G^2; inclusion-exclusion costs 4^d per candidate box
    double work = 1.0;
    for (int i = 0; i < d; ++i) work *= static_cast<double>(G) * static_cast<double>(G) + 2.0;
    if (work * std::pow(4.0, d) > 0x1p32)
        throw guard_error("discrepancy: grid supremum budget exceeded");

    // cumulative histogram: cum[b] = #points in prod [0, b_i/G)
    std::vector<i64> cum(cells, 0);
    std::vector<std::size_t> stride(static_cast<std::size_t>(d));
    stride[0] = 1;
    for (int i = 1; i < d; ++i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i - 1)] * side;

    for (std::size_t n = 0; n < N; ++n) {
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            auto b = static_cast<std::size_t>(seq.coord(n, i) * static_cast<double>(G));
            if (b >= G) b = G - 1;
            idx += (b + 1) * stride[static_cast<std::size_t>(i)];
        }
        cum[idx] += 1;
    }
    for (int axis = 0; axis < d; ++axis) {
        std::size_t st = stride[static_cast<std::size_t>(axis)];
        for (std::size_t idx = 0; idx < cells; ++idx) {
            if ((idx / st) % side == 0) continue;
            cum[idx] += cum[idx - st];
        }
    }

    // per-axis arcs: (a, b) with a != b (wrap when b < a), plus the full circle
    struct Arc {
        u64 lo[2], hi[2];
        int nseg;
        double len;
    };
    std::vector<Arc> arcs;
    for (u64 a = 0; a <= G; ++a) {
        for (u64 b = 0; b <= G; ++b) {
            if (a == b || (a == 0 && b == G)) continue;
            Arc arc{};
            if (a < b) {
                arc.lo[0] = a; arc.hi[0] = b; arc.nseg = 1;
                arc.len = static_cast<double>(b - a) / static_cast<double>(G);
            } else {
                if (b == 0 || a == G) {  // degenerate wrap equals plain interval
                    continue;
                }
                arc.lo[0] = a; arc.hi[0] = G;
                arc.lo[1] = 0; arc.hi[1] = b; arc.nseg = 2;
                arc.len = static_cast<double>(G - a + b) / static_cast<double>(G);
            }
            arcs.push_back(arc);
        }
    }
    arcs.push_back({{0, 0}, {G, 0}, 1, 1.0});  // full circle

    std::vector<std::size_t> choice(static_cast<std::size_t>(d), 0);
    std::vector<int> seg(static_cast<std::size_t>(d), 0);
    const double dn = static_cast<double>(N);

    std::function<i64(int)> count_box = [&](int axis) -> i64 {
        if (axis == d) {
            // inclusion-exclusion over box corners
            i64 total = 0;
            for (u64 mask = 0; mask < (u64(1) << d); ++mask) {
                std::size_t idx = 0;
                int sign = 1;
                for (int i = 0; i < d; ++i) {
                    const Arc& a = arcs[choice[static_cast<std::size_t>(i)]];
                    int s = seg[static_cast<std::size_t>(i)];
                    u64 edge = (mask >> i) & 1 ? a.hi[s] : a.lo[s];
                    if (!((mask >> i) & 1)) sign = -sign;
                    idx += static_cast<std::size_t>(edge) * stride[static_cast<std::size_t>(i)];
                }
                total += sign * cum[idx];
            }
            return total;
        }
        const Arc& a = arcs[choice[static_cast<std::size_t>(axis)]];
        i64 acc = 0;
        for (int s = 0; s < a.nseg; ++s) {
            seg[static_cast<std::size_t>(axis)] = s;
            acc += count_box(axis + 1);
        }
        return acc;
    };

    double best = 0.0;
    std::function<void(int, double)> enumerate = [&](int axis, double vol) {
        if (axis == d) {
            double emp = static_cast<double>(count_box(0)) / dn;
            best = std::max(best, std::fabs(emp - vol));
            return;
        }
        for (std::size_t c = 0; c < arcs.size(); ++c) {
            choice[static_cast<std::size_t>(axis)] = c;
            enumerate(axis + 1, vol * arcs[c].len);
        }
    };
    enumerate(0, 1.0);
    return best;
}

}  // namespace

DiscrepancyReport discrepancy(const TorusSequence& seq, u64 grid_resolution) {
    if (seq.size() == 0) throw std::invalid_argument("discrepancy: empty sequence");
    DiscrepancyReport rep;
    if (seq.dim == 1 && grid_resolution == 0) {
        rep.value = discrepancy_1d(seq.pts);
        rep.method = "exact-1d";
        return rep;
    }
    if (grid_resolution < 1)
        throw std::invalid_argument("discrepancy: grid resolution required for dim >= 2");
    rep.value = grid_supremum(seq, grid_resolution);
    rep.method = "grid-supremum";
    rep.grid_resolution = grid_resolution;
    // snapping both endpoints of an arc outward (or inward) moves its length
    // by at most 2/resolution per axis while the count only grows (shrinks)
    rep.padding = 2.0 * static_cast<double>(seq.dim) / static_cast<double>(grid_resolution);
    return rep;
}

double etk_rhs(const TorusSequence& seq, u64 H) {
    if (H < 1) throw std::invalid_argument("etk_rhs: H >= 1 required");
    const int d = seq.dim;
    const std::size_t N = seq.size();

    double range = 2.0 * static_cast<double>(H) - 1.0;
    if (std::pow(range, d) * static_cast<double>(N) > 0x1p33)
        throw guard_error("etk_rhs: frequency box too large");

    std::vector<i64> h(static_cast<std::size_t>(d), -static_cast<i64>(H) + 1);
    double acc = 1.0 / static_cast<double>(H);
    for (;;) {
        bool zero = std::all_of(h.begin(), h.end(), [](i64 v) { return v == 0; });
        if (!zero) {
            double mu = 1.0;
            for (i64 v : h) mu *= std::max<double>(1.0, std::fabs(static_cast<double>(v)));
            std::vector<cplx> terms(N);
            for (std::size_t n = 0; n < N; ++n) {
                double phase = 0.0;
                for (int i = 0; i < d; ++i)
                    phase += static_cast<double>(h[static_cast<std::size_t>(i)]) * seq.coord(n, i);
                terms[n] = trig::e_of(phase);
            }
            acc += std::abs(pairwise_sum(terms)) / (static_cast<double>(N) * mu);
        }
        int i = 0;
        for (; i < d; ++i) {
            if (++h[static_cast<std::size_t>(i)] < static_cast<i64>(H)) break;
            h[static_cast<std::size_t>(i)] = -static_cast<i64>(H) + 1;
        }
        if (i == d) break;
    }
    return acc;
}

KoksmaHlawkaPair koksma_hlawka_check(const BoundedVariationFn& fn,
                                     const TorusSequence& seq) {
    if (seq.dim != 1) throw std::invalid_argument("koksma_hlawka_check: dim 1 only");
    const std::size_t N = seq.size();
    std::vector<double> vals(N);
    for (std::size_t n = 0; n < N; ++n) vals[n] = fn.f(seq.pts[n]);
    double mean = pairwise_sum(vals) / static_cast<double>(N);
    double dN = discrepancy_1d(seq.pts);
    return {std::fabs(mean - fn.integral), fn.variation * dN};
}

double mean_dyadic_discrepancy(u64 U, unsigned eta) {
    if (U < 1) throw std::invalid_argument("mean_dyadic_discrepancy: U >= 1 required");
    if (eta > 30 || U > (u64(1) << (30 - eta)))
        throw guard_error("mean_dyadic_discrepancy: U * 2^eta beyond guard");
    const u64 den = u64(1) << eta;
    std::vector<double> terms(den);
    parallel_chunks(den, 16, [&](std::size_t, u64 lo, u64 hi) {
        std::vector<double> orbit(U);
        for (u64 d = lo; d < hi; ++d) {
            u64 cur = 0;
            for (u64 m = 0; m < U; ++m) {
                orbit[m] = static_cast<double>(cur) / static_cast<double>(den);
                cur += d;
                if (cur >= den) cur -= den;
            }
            terms[d] = discrepancy_1d(orbit);
        }
    });
    return pairwise_sum(terms);
}

LeftshiftAverage leftshift_average(const std::vector<double>& alphas, u64 q, u64 M) {
    if (alphas.empty()) throw std::invalid_argument("leftshift_average: empty input");
    if (q < 1 || M < 1) throw std::invalid_argument("leftshift_average: q, M >= 1 required");
    const std::size_t N = alphas.size();

    std::vector<double> terms(N);
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<double> orbit(M);
        double step = alphas[j] / static_cast<double>(q);
        for (u64 m = 0; m < M; ++m)
            orbit[m] = reduce_mod1(static_cast<double>(m) * step);
        terms[j] = discrepancy_1d(std::move(orbit));
    }
    double lhs = pairwise_sum(terms) / static_cast<double>(N);

    std::vector<double> reduced(alphas);
    double dn = discrepancy_1d(std::move(reduced));
    double rhs = static_cast<double>(q) * log_plus(static_cast<double>(M)) *
                     log_plus(static_cast<double>(N)) / static_cast<double>(M) +
                 std::sqrt(dn) / static_cast<double>(q);
    return {lhs, rhs};
}

}  // namespace gelfond::discrepancy
