#pragma once

#include <vector>

#include "wordmap/dist.hpp"
#include "wordmap/fqpoly.hpp"
#include "wordmap/group.hpp"

namespace wordmap {

/// Q(g) by Horner's rule in the matrix ring.
inline FqMat eval_poly(const PolyFq& Q, const FqMat& g) {
    FqMat acc(g.field_ptr(), g.dim());
    for (int i = Q.degree(); i >= 0; --i) {
        acc = acc * g;
        if (u32 c = Q.coeff(i); c != 0)
            acc = acc + FqMat::identity(g.field_ptr(), g.dim()).scaled(c);
    }
    return acc;
}

/// dim ker Q(g) by rank-nullity.
inline int kernel_dim(const FqMat& g, const PolyFq& Q) {
    return g.dim() - eval_poly(Q, g).rank();
}

/// Smallest monic m with m(g) v = 0, by Krylov iteration with coefficient
/// tracking.
inline PolyFq vector_annihilator(const FqMat& g, const std::vector<u32>& v) {
    const int n = g.dim();
    const Fq& F = g.field();
    auto fp = g.field_ptr();
    // echelon rows over the Krylov sequence k_j = g^j v, with the expressing
    // coefficients alongside
    std::vector<std::vector<u32>> rows, row_coeffs;
    std::vector<int> pivots;
    std::vector<u32> raw = v;
    for (int j = 0; j <= n; ++j) {
        std::vector<u32> red = raw;
        std::vector<u32> coeffs(size_t(j) + 1, 0);
        coeffs[j] = Fq::kOne;
        for (size_t t = 0; t < rows.size(); ++t) {
            u32 c = red[pivots[t]];
            if (c == 0) continue;
            for (int i = 0; i < n; ++i) red[i] = F.sub(red[i], F.mul(c, rows[t][i]));
            for (size_t i = 0; i < row_coeffs[t].size(); ++i)
                coeffs[i] = F.sub(coeffs[i], F.mul(c, row_coeffs[t][i]));
        }
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (red[i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return PolyFq(fp, std::move(coeffs));  // monic by construction
        u32 inv = F.inv(red[piv]);
        for (int i = 0; i < n; ++i) red[i] = F.mul(red[i], inv);
        for (auto& c : coeffs) c = F.mul(c, inv);
        rows.push_back(std::move(red));
        row_coeffs.push_back(std::move(coeffs));
        pivots.push_back(piv);
        // next Krylov vector
        std::vector<u32> next(n, 0);
        for (int i = 0; i < n; ++i) {
            if (raw[i] == 0) continue;
            for (int r = 0; r < n; ++r) next[r] = F.add(next[r], F.mul(g(r, i), raw[i]));
        }
        raw = std::move(next);
    }
    throw invariant_error("vector annihilator not found within dimension bound");
}

/// Minimal polynomial as the lcm of the annihilators of the standard basis.
inline PolyFq min_poly(const FqMat& g) {
    const int n = g.dim();
    auto fp = g.field_ptr();
    PolyFq m = PolyFq::constant(fp, Fq::kOne);
    for (int i = 0; i < n && m.degree() < n; ++i) {
        std::vector<u32> e(n, 0);
        e[i] = Fq::kOne;
        PolyFq mi = vector_annihilator(g, e);
        PolyFq gcd = PolyFq::gcd(m, mi);
        m = (m * mi) / gcd;
    }
    return m.monic();
}

/// Jordan data: for each monic irreducible P dividing the minimal polynomial,
/// the non-increasing sizes of the Jordan blocks attached to roots of P.
struct JordanData {
    struct Entry {
        PolyFq P;
        std::vector<int> blocks;  // a_{P,1} >= a_{P,2} >= ...
    };
    int n = 0;
    std::vector<Entry> entries;
};

/// Block sizes from the kernel-dimension sequence of P(g)^m: the number of
/// blocks of size >= m is (dim ker P(g)^m - dim ker P(g)^{m-1}) / deg P, and
/// the block-size list is the conjugate partition of that count sequence.
inline JordanData jordan_data(const FqMat& g) {
    if (!g.inverse()) throw config_error("jordan_data: matrix is singular");
    const int n = g.dim();
    JordanData jd;
    jd.n = n;
    PolyFq m = min_poly(g);
    auto fac = factor(m);
    int total = 0;
    for (auto& [P, mult] : fac.factors) {
        (void)mult;
        FqMat Pg = eval_poly(P, g);
        FqMat pw = Pg;
        std::vector<int> count_ge;  // count_ge[m-1] = #blocks of size >= m
        int prev = 0;
        for (;;) {
            int dim = n - pw.rank();
            if (dim == prev) break;
            if ((dim - prev) % P.degree() != 0)
                throw invariant_error("kernel growth not divisible by deg P");
            count_ge.push_back((dim - prev) / P.degree());
            prev = dim;
            if (dim == n) break;
            pw = pw * Pg;
        }
        for (size_t i = 1; i < count_ge.size(); ++i)
            if (count_ge[i] > count_ge[i - 1])
                throw invariant_error("block count sequence not non-increasing");
        // conjugate partition
        std::vector<int> blocks;
        for (int j = 1; !count_ge.empty() && j <= count_ge[0]; ++j) {
            int a = 0;
            for (size_t i = 0; i < count_ge.size(); ++i)
                if (count_ge[i] >= j) a = int(i) + 1;
            blocks.push_back(a);
        }
        for (int a : blocks) total += a * P.degree();
        jd.entries.push_back({P, std::move(blocks)});
    }
    if (total != n) throw invariant_error("jordan data violates total-blocks identity");
    return jd;
}

/// dim of the centralizer of g in M_n(F): sum_P sum_m (2m-1) a_{P,m} deg P.
inline i64 centralizer_dim(const JordanData& jd) {
    i64 dim = 0;
    for (const auto& e : jd.entries)
        for (size_t m = 0; m < e.blocks.size(); ++m)
            dim += i64(2 * (m + 1) - 1) * e.blocks[m] * e.P.degree();
    return dim;
}

/// Oracle: dimension of {X : Xg = gX} by solving the n^2 x n^2 linear system.
inline i64 centralizer_dim_linear_system(const FqMat& g) {
    const int n = g.dim();
    const Fq& F = g.field();
    const int N = n * n;
    // rows: equations (i,j); cols: unknowns X_{a,b}
    std::vector<std::vector<u32>> M(size_t(N), std::vector<u32>(size_t(N), 0));
    auto var = [n](int a, int b) { return a * n + b; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& row = M[size_t(var(i, j))];
            for (int k = 0; k < n; ++k) {
                row[size_t(var(i, k))] = F.add(row[size_t(var(i, k))], g(k, j));
                row[size_t(var(k, j))] = F.sub(row[size_t(var(k, j))], g(i, k));
            }
        }
    // rank by Gaussian elimination
    int rank = 0;
    for (int col = 0; col < N && rank < N; ++col) {
        int piv = -1;
        for (int r = rank; r < N; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[rank]);
        u32 inv = F.inv(M[rank][col]);
        for (int r = rank + 1; r < N; ++r) {
            u32 c = F.mul(M[r][col], inv);
            if (c == 0) continue;
            for (int cc = col; cc < N; ++cc) M[r][cc] = F.sub(M[r][cc], F.mul(c, M[rank][cc]));
        }
        ++rank;
    }
    return N - rank;
}

/// |C_G(g)| by enumeration.
inline u64 centralizer_order_bruteforce(u32 g, const FiniteGroup& G,
                                        u64 guard = 1u << 22) {
    if (G.order() > guard) throw budget_error("centralizer enumeration guard exceeded");
    GroupOps ops(G);
    u64 count = 0;
    for (u64 h = 0; h < G.order(); ++h)
        if (ops.mul(u32(h), g) == ops.mul(g, u32(h))) ++count;
    return count;
}

/// Closed-form bound q^{-f k ((k-1) l D - 2)} (may exceed 1, i.e. vacuous).
inline double big_kernel_bound(u64 q, int f, i64 l, int D, int k) {
    if (f != 1 && f != 2) throw config_error("big_kernel_bound: f must be 1 or 2");
    long double expo = -(long double)(f) * k * ((long double)(k - 1) * l * D - 2.0L);
    return double(std::pow((long double)(q), expo));
}

struct BigKernelExperiment {
    double bound = 0;
    u64 samples = 0;
    u64 hits = 0;
    double estimate = 0;
    WilsonInterval wilson;
    int threshold = 0;  // 2 l D k
};

/// Monte Carlo companion of the big-kernel bound: frequency of tuples where
/// some monic Q of degree D has dim ker Q(w(h)) >= 2 l D k.
inline BigKernelExperiment big_kernel_experiment(const Word& w, const FiniteGroup& G, int D,
                                                 int k, u64 samples, u64 seed,
                                                 int threads = 0) {
    if (!G.is_matrix_kind() || G.kind() == GroupKind::psl2)
        throw config_error("big_kernel_experiment samples GL/SL kinds only");
    auto fq = Fq::get(G.field_q());
    const i64 l = w.length();
    const int n = G.mat_dim();
    const int d = std::max(w.arity(), 1);
    BigKernelExperiment rep;
    rep.threshold = int(2 * l * D * k);
    rep.bound = big_kernel_bound(G.field_q(), 1, l, D, k);
    rep.samples = samples;
    u64 qD = 1;
    for (int i = 0; i < D; ++i) {
        qD *= G.field_q();
        if (qD > 100000) throw budget_error("big_kernel_experiment: q^D too large");
    }
    GroupOps ops(G);
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<u64> partial(chunk_count, 0);
    parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        u64 hits = 0;
        std::vector<u32> tuple(d);
        for (u64 s = begin; s < end; ++s) {
            CounterRng rng(seed, s);
            for (int i = 0; i < d; ++i) tuple[i] = u32(rng.below(G.order()));
            u32 val = w.evaluate<u32>(
                std::span<const u32>(tuple), ops.id(),
                [&](u32 a, u32 b) { return ops.mul(a, b); }, [&](u32 a) { return ops.inv(a); });
            FqMat M = G.matrix(val);
            bool found = false;
            for (u64 code = 0; code < qD && !found; ++code) {
                // monic Q of degree D with low coefficients encoded base q
                std::vector<u32> coeffs(size_t(D) + 1, 0);
                u64 c = code;
                for (int i = 0; i < D; ++i) {
                    coeffs[i] = u32(c % G.field_q());
                    c /= G.field_q();
                }
                coeffs[D] = Fq::kOne;
                if (n - eval_poly(PolyFq(fq, std::move(coeffs)), M).rank() >= rep.threshold)
                    found = true;
            }
            if (found) ++hits;
        }
        partial[chunk] = hits;
    });
    for (u64 h : partial) rep.hits += h;
    rep.estimate = samples ? double(rep.hits) / double(samples) : 0;
    rep.wilson = wilson_interval(rep.hits, samples);
    return rep;
}

struct SmallCentralizerReport {
    u64 samples = 0;       // 0 in exhaustive mode
    u64 trials = 0;        // tuples examined
    u64 hits = 0;          // tuples with |C(w(g))| <= q^{c r}
    double probability = 0;
    WilsonInterval wilson;
    bool exhaustive = false;
    double c = 0;
    int rank = 0;  // r = n for GL/SL in dimension n
};

namespace detail {

inline bool small_centralizer_hit(const Word& w, std::span<const u32> tuple,
                                  const FiniteGroup& G, const GroupOps& ops, double c_times_r) {
    u32 val = w.evaluate<u32>(
        tuple, ops.id(), [&](u32 a, u32 b) { return ops.mul(a, b); },
        [&](u32 a) { return ops.inv(a); });
    // proxy |C| <= q^dim: dim <= c r implies |C| < q^{c r}
    return double(centralizer_dim(jordan_data(G.matrix(val)))) <= c_times_r + 1e-12;
}

}  // namespace detail

/// Pr[ |C_G(w(g_1..g_d))| <= q^{c r} ] with the centralizer-dimension proxy;
/// Monte Carlo for samples > 0, exhaustive enumeration of G^d otherwise.
inline SmallCentralizerReport small_centralizer_experiment(const Word& w, const FiniteGroup& G,
                                                           u64 samples, double c, u64 seed,
                                                           int threads = 0,
                                                           u64 budget = 200'000'000ull) {
    if (!G.is_matrix_kind() || G.kind() == GroupKind::psl2)
        throw config_error("small_centralizer_experiment samples GL/SL kinds only");
    SmallCentralizerReport rep;
    rep.c = c;
    rep.rank = G.mat_dim();
    rep.samples = samples;
    const double cr = c * rep.rank;
    const int d = std::max(w.arity(), 1);
    GroupOps ops(G);
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<u64> partial(chunk_count, 0);
    if (samples == 0) {
        rep.exhaustive = true;
        u64 tuples = 1;
        for (int i = 0; i < d; ++i) {
            if (tuples > budget / G.order()) throw budget_error("exhaustive mode budget exceeded");
            tuples *= G.order();
        }
        rep.trials = tuples;
        parallel_chunks(tuples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
            u64 hits = 0;
            std::vector<u32> tuple(d);
            u64 idx = begin;
            for (int i = 0; i < d; ++i) {
                tuple[i] = u32(idx % G.order());
                idx /= G.order();
            }
            for (u64 t = begin; t < end; ++t) {
                if (detail::small_centralizer_hit(w, std::span<const u32>(tuple), G, ops, cr))
                    ++hits;
                for (int i = 0; i < d; ++i) {
                    if (++tuple[i] < G.order()) break;
                    tuple[i] = 0;
                }
            }
            partial[chunk] = hits;
        });
    } else {
        rep.trials = samples;
        parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
            u64 hits = 0;
            std::vector<u32> tuple(d);
            for (u64 s = begin; s < end; ++s) {
                CounterRng rng(seed, s);
                for (int i = 0; i < d; ++i) tuple[i] = u32(rng.below(G.order()));
                if (detail::small_centralizer_hit(w, std::span<const u32>(tuple), G, ops, cr))
                    ++hits;
            }
            partial[chunk] = hits;
        });
    }
    for (u64 h : partial) rep.hits += h;
    rep.probability = rep.trials ? double(rep.hits) / double(rep.trials) : 0;
    rep.wilson = wilson_interval(rep.hits, rep.trials);
    return rep;
}

}  // namespace wordmap
