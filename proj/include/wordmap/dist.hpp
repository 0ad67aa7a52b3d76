#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <vector>

#include "wordmap/group.hpp"
#include "wordmap/parallel.hpp"
#include "wordmap/rng.hpp"

namespace wordmap {

enum class DistMode { exact, monte_carlo };
enum class LpNorm { l1, l2, linf };

/// Probability assignment on the elements of a FiniteGroup.  Exact mode keeps
/// integer numerators over a common denominator; Monte Carlo mode keeps
/// double frequencies derived from integer hit counts.
class Distribution {
public:
    static Distribution exact(FiniteGroup G, std::vector<mpz_class> num, mpz_class den) {
        Distribution d(std::move(G), DistMode::exact);
        d.num_ = std::move(num);
        d.den_ = std::move(den);
        return d;
    }

    static Distribution empirical(FiniteGroup G, std::vector<double> prob, u64 samples) {
        Distribution d(std::move(G), DistMode::monte_carlo);
        d.prob_ = std::move(prob);
        d.samples_ = samples;
        return d;
    }

    const FiniteGroup& group() const { return G_; }
    DistMode mode() const { return mode_; }
    bool is_exact() const { return mode_ == DistMode::exact; }
    u64 size() const { return G_.order(); }
    u64 samples() const { return samples_; }

    double value(u64 g) const {
        if (is_exact()) return mpq_class(num_[g], den_).get_d();
        return prob_[g];
    }

    mpq_class exact_value(u64 g) const {
        if (!is_exact()) throw config_error("distribution is not exact");
        mpq_class q(num_[g], den_);
        q.canonicalize();
        return q;
    }

    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }
    const std::vector<double>& probabilities() const { return prob_; }

    double total() const {
        if (is_exact()) {
            mpz_class s = 0;
            for (const auto& v : num_) s += v;
            return mpq_class(s, den_).get_d();
        }
        double s = 0;
        for (double v : prob_) s += v;
        return s;
    }

private:
    Distribution(FiniteGroup G, DistMode m) : G_(std::move(G)), mode_(m) {}

    FiniteGroup G_;
    DistMode mode_;
    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
    std::vector<double> prob_;
    u64 samples_ = 0;
};

inline mpz_class pow_mpz(u64 base, u64 e) {
    mpz_class b(static_cast<unsigned long>(base)), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

/// Exact p_{w,G}: counts |w^-1(g)| by full enumeration of G^d.
/// The guard is an evaluation budget (= |G|^d tuples).
inline Distribution exact_distribution(const Word& w, const FiniteGroup& G,
                                       u64 budget = 10'000'000'000ull, int threads = 0) {
    const u64 n = G.order();
    const int d = std::max(w.arity(), 1);
    u64 tuples = 1;
    for (int i = 0; i < d; ++i) {
        if (n != 0 && tuples > budget / n)
            throw budget_error("exact distribution budget exceeded; use Monte Carlo");
        tuples *= n;
    }

    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<std::vector<u64>> partial(chunk_count);
    GroupOps ops(G);

    parallel_chunks(tuples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        auto& counts = partial[chunk];
        counts.assign(n, 0);
        // mixed-radix odometer over G^d, least-significant coordinate first
        std::vector<u32> tuple(d);
        u64 idx = begin;
        for (int i = 0; i < d; ++i) {
            tuple[i] = u32(idx % n);
            idx /= n;
        }
        for (u64 t = begin; t < end; ++t) {
            u32 val = w.evaluate<u32>(
                std::span<const u32>(tuple), ops.id(),
                [&](u32 a, u32 b) { return ops.mul(a, b); }, [&](u32 a) { return ops.inv(a); });
            ++counts[val];
            for (int i = 0; i < d; ++i) {
                if (++tuple[i] < n) break;
                tuple[i] = 0;
            }
        }
    });

    std::vector<mpz_class> num(n, 0);
    for (u64 g = 0; g < n; ++g) {
        u64 s = 0;
        for (const auto& c : partial)
            if (!c.empty()) s += c[g];
        num[g] = mpz_class(static_cast<unsigned long>(s));
    }
    return Distribution::exact(G, std::move(num), pow_mpz(n, u64(d)));
}

/// Empirical p_{w,G} from `samples` uniform tuples.  Sample i draws from the
/// RNG stream (seed, i), so output is identical for any thread count.
inline Distribution monte_carlo_distribution(const Word& w, const FiniteGroup& G, u64 samples,
                                             u64 seed, int threads = 0) {
    if (samples == 0) throw config_error("monte_carlo_distribution: samples must be >= 1");
    const u64 n = G.order();
    const int d = std::max(w.arity(), 1);
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<std::vector<u64>> partial(chunk_count);
    GroupOps ops(G);

    parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        auto& counts = partial[chunk];
        counts.assign(n, 0);
        std::vector<u32> tuple(d);
        for (u64 s = begin; s < end; ++s) {
            CounterRng rng(seed, s);
            for (int i = 0; i < d; ++i) tuple[i] = u32(rng.below(n));
            u32 val = w.evaluate<u32>(
                std::span<const u32>(tuple), ops.id(),
                [&](u32 a, u32 b) { return ops.mul(a, b); }, [&](u32 a) { return ops.inv(a); });
            ++counts[val];
        }
    });

    std::vector<double> prob(n, 0.0);
    for (u64 g = 0; g < n; ++g) {
        u64 s = 0;
        for (const auto& c : partial)
            if (!c.empty()) s += c[g];
        prob[g] = double(s) / double(samples);
    }
    return Distribution::empirical(G, std::move(prob), samples);
}

inline Distribution uniform(const FiniteGroup& G) {
    std::vector<mpz_class> num(G.order(), 1);
    return Distribution::exact(G, std::move(num), mpz_class(static_cast<unsigned long>(G.order())));
}

inline Distribution point_mass(const FiniteGroup& G, u32 g) {
    std::vector<mpz_class> num(G.order(), 0);
    num[g] = 1;
    return Distribution::exact(G, std::move(num), 1);
}

/// U^gamma on S_n: U^0 is uniform, U^1 has density 2/|G| on A_n.
inline Distribution uniform_gamma(const FiniteGroup& G, int gamma) {
    if (G.kind() != GroupKind::symmetric)
        throw config_error("uniform_gamma requires a symmetric-kind group");
    if (gamma != 0 && gamma != 1) throw config_error("gamma must be 0 or 1");
    if (gamma == 0) return uniform(G);
    if (G.degree() < 2) throw config_error("uniform_gamma(1) needs n >= 2");
    std::vector<mpz_class> num(G.order());
    for (u64 g = 0; g < G.order(); ++g) num[g] = G.is_even(u32(g)) ? 2 : 0;
    return Distribution::exact(G, std::move(num), mpz_class(static_cast<unsigned long>(G.order())));
}

/// (f * h)(g) = sum_x f(x) h(x^-1 g); exact when both inputs are exact.
inline Distribution convolve(const Distribution& f, const Distribution& h) {
    if (!f.group().same_group(h.group())) throw config_error("convolve: group mismatch");
    const FiniteGroup& G = f.group();
    const u64 n = G.order();
    GroupOps ops(G);
    if (f.is_exact() && h.is_exact()) {
        std::vector<mpz_class> num(n, 0);
        for (u64 x = 0; x < n; ++x) {
            if (f.numerators()[x] == 0) continue;
            const u32 xi = ops.inv(u32(x));
            for (u64 g = 0; g < n; ++g) {
                const auto& hv = h.numerators()[ops.mul(xi, u32(g))];
                if (hv != 0) num[g] += f.numerators()[x] * hv;
            }
        }
        return Distribution::exact(G, std::move(num), f.denominator() * h.denominator());
    }
    std::vector<double> prob(n, 0.0);
    for (u64 x = 0; x < n; ++x) {
        double fx = f.value(x);
        if (fx == 0.0) continue;
        const u32 xi = ops.inv(u32(x));
        for (u64 g = 0; g < n; ++g) prob[g] += fx * h.value(ops.mul(xi, u32(g)));
    }
    return Distribution::empirical(G, std::move(prob), 0);
}

/// Pointwise equality of exact distributions as rationals.
inline bool exact_equal(const Distribution& a, const Distribution& b) {
    if (!a.is_exact() || !b.is_exact() || !a.group().same_group(b.group())) return false;
    for (u64 g = 0; g < a.size(); ++g)
        if (a.numerators()[g] * b.denominator() != b.numerators()[g] * a.denominator())
            return false;
    return true;
}

/// || f - ref ||_{L^p} with the |G|-weighted normalization:
/// L1 = sum |.|, L2 = (|G| sum |.|^2)^(1/2), Linf = |G| max |.|.
inline double lp_distance(const Distribution& f, const Distribution& ref, LpNorm p) {
    if (!f.group().same_group(ref.group())) throw config_error("lp_distance: group mismatch");
    const u64 n = f.size();
    if (f.is_exact() && ref.is_exact()) {
        // keep everything rational until the final conversion
        mpq_class acc = 0, maxd = 0;
        for (u64 g = 0; g < n; ++g) {
            mpq_class d = mpq_class(f.numerators()[g], f.denominator()) -
                          mpq_class(ref.numerators()[g], ref.denominator());
            if (d < 0) d = -d;
            switch (p) {
                case LpNorm::l1: acc += d; break;
                case LpNorm::l2: acc += d * d; break;
                case LpNorm::linf:
                    if (d > maxd) maxd = d;
                    break;
            }
        }
        switch (p) {
            case LpNorm::l1: return acc.get_d();
            case LpNorm::l2: {
                mpq_class s = mpq_class(static_cast<unsigned long>(n)) * acc;
                return std::sqrt(s.get_d());
            }
            case LpNorm::linf: {
                mpq_class s = mpq_class(static_cast<unsigned long>(n)) * maxd;
                return s.get_d();
            }
        }
    }
    double acc1 = 0, acc2 = 0, maxd = 0;
    for (u64 g = 0; g < n; ++g) {
        double d = std::fabs(f.value(g) - ref.value(g));
        acc1 += d;
        acc2 += d * d;
        maxd = std::max(maxd, d);
    }
    switch (p) {
        case LpNorm::l1: return acc1;
        case LpNorm::l2: return std::sqrt(double(n) * acc2);
        case LpNorm::linf: return double(n) * maxd;
    }
    return 0;
}

/// Class mass vector of a distribution (exact variant defined per class).
inline std::vector<mpq_class> exact_class_masses(const Distribution& d,
                                                 const ConjugacyClasses& cc) {
    if (!d.is_exact()) throw config_error("exact_class_masses needs an exact distribution");
    std::vector<mpz_class> num(cc.classes.size(), 0);
    for (u64 g = 0; g < d.size(); ++g) num[cc.class_of[g]] += d.numerators()[g];
    std::vector<mpq_class> out(cc.classes.size());
    for (size_t j = 0; j < out.size(); ++j) {
        out[j] = mpq_class(num[j], d.denominator());
        out[j].canonicalize();
    }
    return out;
}

inline std::vector<double> class_masses(const Distribution& d, const ConjugacyClasses& cc) {
    std::vector<double> out(cc.classes.size(), 0.0);
    for (u64 g = 0; g < d.size(); ++g) out[cc.class_of[g]] += d.value(g);
    return out;
}

struct FixTailReport {
    int n = 0;
    i64 word_length = 0;
    int k = 0;
    u64 samples = 0;
    u64 hits = 0;
    double estimate = 0.0;
    WilsonInterval wilson;
    bool has_bound = false;
    double bound = 0.0;   // l^2 e^{2k^2/(l^6 n)} / (k/l^4)!
    bool wilson_upper_exceeds_bound = false;  // diagnostic, never asserted
};

/// Monte Carlo estimate of Pr[fix(W_n) >= k] for W_n = w(uniform tuple in S_n),
/// with the analytic tail bound attached when l^4 | k and k <= n/2.
inline FixTailReport fix_tail(const Word& w, int n, int k, u64 samples, u64 seed,
                              int threads = 0) {
    if (k > n) throw config_error("fix_tail: k > n");
    if (n <= 0) throw config_error("fix_tail: n must be positive");
    FixTailReport rep;
    rep.n = n;
    rep.k = k;
    rep.word_length = w.length();
    rep.samples = samples;

    const int d = std::max(w.arity(), 1);
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<u64> partial(chunk_count, 0);
    parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        u64 hits = 0;
        std::vector<Permutation> tuple(d);
        Permutation id(n);
        for (u64 s = begin; s < end; ++s) {
            CounterRng rng(seed, s);
            for (int i = 0; i < d; ++i) tuple[i] = Permutation::random(n, rng);
            Permutation val = w.evaluate<Permutation>(
                std::span<const Permutation>(tuple), id,
                [](const Permutation& a, const Permutation& b) { return a * b; },
                [](const Permutation& a) { return a.inverse(); });
            if (val.fixed_points() >= k) ++hits;
        }
        partial[chunk] = hits;
    });
    for (u64 h : partial) rep.hits += h;
    rep.estimate = samples ? double(rep.hits) / double(samples) : 0.0;
    rep.wilson = wilson_interval(rep.hits, samples);

    const i64 l = rep.word_length;
    if (l >= 1 && k >= 0 && i64(k) % (l * l * l * l) == 0 && k <= n / 2) {
        rep.has_bound = true;
        const long double l2 = (long double)(l) * l;
        const long double l6 = l2 * l2 * l2;
        const long double m = (long double)(k) / ((long double)(l) * l * l * l);
        long double logb = std::log(l2) + 2.0L * k * (long double)(k) / (l6 * n) -
                           std::lgamma(m + 1.0L);
        rep.bound = double(std::exp(logb));
        rep.wilson_upper_exceeds_bound = rep.wilson.upper > rep.bound;
    }
    return rep;
}

}  // namespace wordmap
