#pragma once

#include <gmpxx.h>

#include <numeric>
#include <string>
#include <vector>

#include "wordmap/common.hpp"
#include "wordmap/interval.hpp"
#include "wordmap/parallel.hpp"
#include "wordmap/rng.hpp"

namespace wordmap {

/// Standard random walk on Z^2 (steps (+-1,0),(0,+-1), probability 1/4 each),
/// stored exactly on the fundamental quadrant {a >= 0, b >= 0}: cell (a,b)
/// holds the integer count 4^n Pr[X_n = (a,b)].  One step updates in place:
/// cells of parity n+1 are written from cells of parity n, which are disjoint.
class WalkGridExact {
public:
    explicit WalkGridExact(int cap)
        : cap_(cap), stride_(cap + 2), c_(size_t(cap + 2) * (cap + 2)) {
        if (cap < 1) throw config_error("walk grid cap out of range");
        if (cap > 2400) throw budget_error("rational walk grid is feasible to n ~ 1200");
        c_[0] = 1;
        build_gcd_table();
    }

    int n() const { return n_; }
    int cap() const { return cap_; }

    /// Updated cells have parity n+1 and read only parity-n cells, so the
    /// update runs in place on a single buffer.
    void step() {
        if (n_ >= cap_) throw budget_error("walk grid: step beyond capacity");
        const int m = n_ + 1;
        for (int a = 0; a <= m; ++a) {
            const int b0 = (m - a) % 2;  // a + b must have parity m
            for (int b = b0; b + a <= m; b += 2) {
                mpz_class& dst = at(a, b);
                // reflected indices: (|a-1|, b) and (a, |b-1|)
                dst = at(a == 0 ? 1 : a - 1, b) + at(a + 1, b) + at(a, b == 0 ? 1 : b - 1) +
                      at(a, b + 1);
            }
        }
        ++n_;
    }

    void run_to(int n) {
        while (n_ < n) step();
    }

    /// Pr[X_n = (a,b)] for a, b >= 0 (cells of the wrong parity are zero).
    mpq_class probability(int a, int b) const {
        if (a < 0 || b < 0 || a + b > n_ || (a + b - n_) % 2 != 0) return mpq_class(0);
        mpq_class q(at(a, b), denominator());
        q.canonicalize();
        return q;
    }

    mpz_class denominator() const { return pow4(n_); }

    /// Total mass with the orbit weights of the 4-fold symmetry; equals 1.
    mpq_class total_mass() const {
        mpz_class s = 0;
        fold([&](int a, int b, const mpz_class& v) { s += v * weight(a, b); });
        return make_q(s);
    }

    /// P_n: probability that X_n is a primitive vector (gcd of coordinates 1;
    /// gcd(a,0) = a, and the origin is not primitive).
    mpq_class primitive_probability() const {
        mpz_class s = 0;
        fold([&](int a, int b, const mpz_class& v) {
            if (gcd1_[size_t(a) * stride_ + b]) s += v * weight(a, b);
        });
        return make_q(s);
    }

    /// Pr[X_n in pZ^2] (origin included).
    mpq_class sublattice_mass(int p) const {
        mpz_class s = 0;
        fold([&](int a, int b, const mpz_class& v) {
            if (a % p == 0 && b % p == 0) s += v * weight(a, b);
        });
        return make_q(s);
    }

    mpq_class origin_probability() const { return probability(0, 0); }

    /// max over all lattice points of Pr[X_n = (a,b)].
    mpq_class max_probability() const {
        const mpz_class* best = nullptr;
        fold([&](int, int, const mpz_class& v) {
            if (!best || v > *best) best = &v;
        });
        return best ? make_q(*best) : mpq_class(0);
    }

private:
    static mpz_class pow4(int n) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), 4, static_cast<unsigned long>(n));
        return r;
    }

    mpq_class make_q(const mpz_class& num) const {
        mpq_class q(num, denominator());
        q.canonicalize();
        return q;
    }

    static int weight(int a, int b) {
        if (a == 0 && b == 0) return 1;
        return (a == 0 || b == 0) ? 2 : 4;
    }

    template <class Fn>
    void fold(Fn&& fn) const {
        for (int a = 0; a <= n_; ++a) {
            const int b0 = (n_ - a) % 2;
            for (int b = b0; a + b <= n_; b += 2) fn(a, b, at(a, b));
        }
    }

    void build_gcd_table() {
        gcd1_.assign(size_t(stride_) * stride_, 0);
        for (int a = 0; a < stride_; ++a)
            for (int b = 0; b < stride_; ++b)
                gcd1_[size_t(a) * stride_ + b] = std::gcd(a, b) == 1 ? 1 : 0;
    }

    mpz_class& at(int a, int b) { return c_[size_t(a) * stride_ + b]; }
    const mpz_class& at(int a, int b) const { return c_[size_t(a) * stride_ + b]; }

    int cap_;
    int stride_;
    int n_ = 0;
    std::vector<mpz_class> c_;
    std::vector<unsigned char> gcd1_;
};

/// Interval version of the quadrant grid; values are certified enclosures of
/// the point probabilities.
class WalkGridInterval {
public:
    explicit WalkGridInterval(int cap)
        : cap_(cap), stride_(cap + 2), c_(size_t(cap + 2) * (cap + 2)) {
        if (cap < 1) throw config_error("walk grid cap out of range");
        c_[0] = Interval(1.0);
    }

    int n() const { return n_; }

    void step() {
        if (n_ >= cap_) throw budget_error("walk grid: step beyond capacity");
        const int m = n_ + 1;
        for (int a = 0; a <= m; ++a) {
            const int b0 = (m - a) % 2;
            for (int b = b0; b + a <= m; b += 2) {
                at(a, b) = (at(a == 0 ? 1 : a - 1, b) + at(a + 1, b) +
                            at(a, b == 0 ? 1 : b - 1) + at(a, b + 1)) /
                           4.0;
            }
        }
        ++n_;
    }

    void run_to(int n) {
        while (n_ < n) step();
    }

    Interval probability(int a, int b) const {
        if (a < 0 || b < 0 || a + b > n_ || (a + b - n_) % 2 != 0) return Interval(0.0);
        return at(a, b);
    }

    Interval primitive_probability() const {
        Interval s(0.0);
        fold([&](int a, int b, const Interval& v) {
            if (std::gcd(a, b) == 1) s += v * Interval(double(weight(a, b)));
        });
        return s;
    }

    /// Encloses 1 (with orbit weights) whenever the enclosures are valid.
    Interval total_mass() const {
        Interval s(0.0);
        fold([&](int a, int b, const Interval& v) { s += v * Interval(double(weight(a, b))); });
        return s;
    }

    Interval max_probability() const {
        Interval s(0.0);
        fold([&](int, int, const Interval& v) { s = Interval::max(s, v); });
        return s;
    }

private:
    static int weight(int a, int b) {
        if (a == 0 && b == 0) return 1;
        return (a == 0 || b == 0) ? 2 : 4;
    }

    template <class Fn>
    void fold(Fn&& fn) const {
        for (int a = 0; a <= n_; ++a) {
            const int b0 = (n_ - a) % 2;
            for (int b = b0; a + b <= n_; b += 2) fn(a, b, at(a, b));
        }
    }

    Interval& at(int a, int b) { return c_[size_t(a) * stride_ + b]; }
    const Interval& at(int a, int b) const { return c_[size_t(a) * stride_ + b]; }

    int cap_;
    int stride_;
    int n_ = 0;
    std::vector<Interval> c_;
};

/// Image of union_{p | m} (pZ)^2 in (Z/m)^2.
inline std::vector<std::pair<int, int>> mod_target_states(int m) {
    std::vector<int> ps;
    int mm = m;
    for (int d = 2; d * d <= mm; ++d)
        if (mm % d == 0) {
            ps.push_back(d);
            while (mm % d == 0) mm /= d;
        }
    if (mm > 1) ps.push_back(mm);
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int p : ps)
                if (a % p == 0 && b % p == 0) {
                    out.emplace_back(a, b);
                    break;
                }
    return out;
}

/// The walk on (Z/m)^2 with the same step distribution, in interval arithmetic.
class ModChainInterval {
public:
    explicit ModChainInterval(int m) : m_(m), state_(size_t(m) * m), next_(size_t(m) * m) {
        if (m < 2) throw config_error("modulus must be >= 2");
        state_[0] = Interval(1.0);
    }

    int n() const { return n_; }

    void step() {
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b) {
                next_[idx(a, b)] =
                    (state_[idx((a + 1) % m_, b)] + state_[idx((a + m_ - 1) % m_, b)] +
                     state_[idx(a, (b + 1) % m_)] + state_[idx(a, (b + m_ - 1) % m_)]) /
                    4.0;
            }
        std::swap(state_, next_);
        ++n_;
    }

    void run_to(int n) {
        while (n_ < n) step();
    }

    Interval max_state() const {
        Interval s(0.0);
        for (const auto& v : state_) s = Interval::max(s, v);
        return s;
    }

    Interval target_mass() const {
        Interval s(0.0);
        for (auto [a, b] : mod_target_states(m_)) s += state_[idx(a, b)];
        return s;
    }

    Interval total_mass() const {
        Interval s(0.0);
        for (const auto& v : state_) s += v;
        return s;
    }

private:
    size_t idx(int a, int b) const { return size_t(a) * m_ + b; }

    int m_;
    int n_ = 0;
    std::vector<Interval> state_, next_;
};

/// State-count multiplier for the chain bound on sup_{n >= N} a_{n,m}: for
/// even m coordinate-sum parity is invariant, so only target states of one
/// parity can be occupied at a time (max over the two parities); odd m has no
/// parity invariant and every target state counts.
inline int mod_target_multiplier(int m) {
    auto targets = mod_target_states(m);
    if (m % 2 != 0) return int(targets.size());
    int even = 0, odd = 0;
    for (auto [a, b] : targets) ((a + b) % 2 == 0 ? even : odd)++;
    return std::max(even, odd);
}

/// Certified upper bound for a_{n,m} over all n >= N: multiplier times the
/// maximum mod-m state probability at time N.
inline double mod_chain_bound(int m, int N) {
    ModChainInterval chain(m);
    chain.run_to(N);
    Interval b = chain.max_state() * Interval(double(mod_target_multiplier(m)));
    return b.hi;
}

/// 4/(p+1)^2 for odd primes p.
inline mpq_class prime_tail(int p) {
    if (p < 3 || !is_prime(u64(p))) throw config_error("prime_tail: p must be an odd prime");
    mpq_class q(4, (long(p) + 1) * (long(p) + 1));
    q.canonicalize();
    return q;
}

/// sum over primes p0 < p < limit of 4/(p-1)^2 (the conservative variant) or
/// 4/(p+1)^2 (the sharper one).
inline mpq_class prime_tail_sum(int p0, int limit, bool minus_one) {
    mpq_class s = 0;
    for (u32 p : primes_below(u32(limit))) {
        if (int(p) <= p0) continue;
        long d = minus_one ? long(p) - 1 : long(p) + 1;
        mpq_class t(4, d * d);
        t.canonicalize();
        s += t;
    }
    return s;
}

/// Certified upper bound for (0,0)_n over n >= N: max of the step-N grid.
inline double return_probability_bound(int N) {
    WalkGridInterval g(N);
    g.run_to(N);
    return g.max_probability().hi;
}

struct ModLimitResult {
    int m = 0;
    bool even_steps = true;
    int steps = 0;
    double chain_value = 0;   // target mass of the mod-m chain at `steps`
    double closed_form = 0;   // the stationary limit for this parity
    double difference = 0;
};

/// Compares the mod-m chain's target mass at a large step count of the given
/// parity against the closed-form limit 1 - c * prod_{p|m} (1 - p^-2), with
/// c = 2/3 (even steps) or 4/3 (odd steps) for even m and c = 1 for odd m.
inline ModLimitResult mod_limit_check(int m, bool even_steps, int steps = 2000) {
    ModLimitResult r;
    r.m = m;
    r.even_steps = even_steps;
    r.steps = steps;
    if ((steps % 2 == 0) != even_steps) ++steps;
    r.steps = steps;
    ModChainInterval chain(m);
    chain.run_to(steps);
    r.chain_value = chain.target_mass().mid();
    double prod = 1.0;
    int mm = m;
    for (int d = 2; d * d <= mm; ++d)
        if (mm % d == 0) {
            prod *= 1.0 - 1.0 / (double(d) * d);
            while (mm % d == 0) mm /= d;
        }
    if (mm > 1) prod *= 1.0 - 1.0 / (double(mm) * mm);
    const double c = (m % 2 == 0) ? (even_steps ? 2.0 / 3.0 : 4.0 / 3.0) : 1.0;
    r.closed_form = 1.0 - c * prod;
    r.difference = std::fabs(r.chain_value - r.closed_form);
    return r;
}

struct Certificate {
    int cutoff = 0;        // N
    int prime_cutoff = 0;  // P0
    // head: exact P_n for 1 <= n < N
    std::vector<double> pn;
    std::string min_pn_fraction;
    double min_pn = 0;
    int min_pn_at = 0;
    bool head_ok = false;  // min_{n<N} P_n > 1/3 (exact comparison)
    // tail bounds, all certified upper bounds
    double mod6_bound = 0;
    std::vector<std::pair<int, double>> prime_bounds;  // odd primes 5..P0
    // The verdict uses the conservative (p-1)^2 tail; the sharper (p+1)^2
    // variant implied by the sublattice bound is reported alongside.
    double prime_tail_finite = 0;          // sum_{P0<p<10003} 4/(p-1)^2
    double prime_tail_finite_sharper = 0;  // same sum with (p+1)^2
    double integral_tail = 0;              // int_{10^4}^inf 2 dx / x^2
    double return_bound = 0;               // sup_{n>=N} (0,0)_n
    double tail_lower_bound = 0;           // 1 - (sum of the bounds above)
    bool tail_ok = false;                  // tail_lower_bound > 1/3 (exact comparison)
    bool verdict = false;
};

/// The machine certificate that inf_n P_n > 1/3: exact P_n for n < N combined
/// with chain/tail bounds valid for all n >= N.
inline Certificate certificate(int N, int P0) {
    if (N < 2) throw config_error("certificate: N must be >= 2");
    if (P0 < 60) throw config_error("certificate: prime cutoff must be >= 60");
    Certificate cert;
    cert.cutoff = N;
    cert.prime_cutoff = P0;

    // exact sweep of the Z^2 grid to step N
    WalkGridExact grid(N);
    mpq_class min_pn;
    for (int n = 1; n <= N; ++n) {
        grid.step();
        if (n >= N) break;
        mpq_class p = grid.primitive_probability();
        cert.pn.push_back(p.get_d());
        if (n == 1 || p < min_pn) {
            min_pn = p;
            cert.min_pn_at = n;
        }
    }
    cert.min_pn = min_pn.get_d();
    cert.min_pn_fraction = min_pn.get_str();
    cert.head_ok = min_pn > mpq_class(1, 3);

    // sup_{n>=N} (0,0)_n <= max over the exact step-N grid (round up)
    mpq_class ret = grid.max_probability();
    cert.return_bound = std::nextafter(ret.get_d(), 1.0);

    // mod-m chain bounds at time N
    cert.mod6_bound = mod_chain_bound(6, N);
    for (u32 p : primes_below(u32(P0) + 1)) {
        if (p < 5) continue;
        cert.prime_bounds.emplace_back(int(p), mod_chain_bound(int(p), N));
    }

    // prime tails beyond P0: finite sum to 10003, then the integral bound
    mpq_class tail_minus = prime_tail_sum(P0, 10003, true);
    mpq_class tail_plus = prime_tail_sum(P0, 10003, false);
    cert.prime_tail_finite = std::nextafter(tail_minus.get_d(), 1.0);
    cert.prime_tail_finite_sharper = std::nextafter(tail_plus.get_d(), 1.0);
    mpq_class integral(2, 10000);
    integral.canonicalize();
    cert.integral_tail = integral.get_d();

    // assemble the tail lower bound exactly (doubles convert exactly to mpq)
    mpq_class total = mpq_class(1) - mpq_class(cert.mod6_bound);
    for (auto& [p, b] : cert.prime_bounds) total -= mpq_class(b);
    total -= mpq_class(cert.prime_tail_finite);
    total -= integral;
    total -= ret;
    cert.tail_lower_bound = std::nextafter(total.get_d(), -1.0);
    cert.tail_ok = total > mpq_class(1, 3);
    cert.verdict = cert.head_ok && cert.tail_ok;
    return cert;
}

/// Monte Carlo estimate of the probability that the n-step standard walk on
/// Z^d ends at a primitive vector.
inline double multidim_primitivity(int n, int d, u64 samples, u64 seed, int threads = 0) {
    if (d < 2) throw config_error("multidim_primitivity: d must be >= 2");
    if (n < 1) throw config_error("multidim_primitivity: n must be >= 1");
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<u64> partial(chunk_count, 0);
    parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        u64 hits = 0;
        std::vector<i64> x(d);
        for (u64 s = begin; s < end; ++s) {
            CounterRng rng(seed, s);
            std::fill(x.begin(), x.end(), 0);
            for (int t = 0; t < n; ++t) {
                u64 r = rng.below(u64(2 * d));
                x[r >> 1] += (r & 1) ? 1 : -1;
            }
            i64 g = 0;
            for (i64 v : x) g = std::gcd(g, v < 0 ? -v : v);
            if (g == 1) ++hits;
        }
        partial[chunk] = hits;
    });
    u64 hits = 0;
    for (u64 h : partial) hits += h;
    return samples ? double(hits) / double(samples) : 0.0;
}

}  // namespace wordmap
