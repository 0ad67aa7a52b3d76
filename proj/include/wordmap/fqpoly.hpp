#pragma once

#include <gmpxx.h>

#include <vector>

#include "wordmap/fq.hpp"
#include "wordmap/rng.hpp"

namespace wordmap {

/// Dense polynomial over F_q; coefficient of x^i at index i, no leading zeros
/// (the zero polynomial has an empty coefficient vector).
class PolyFq {
public:
    PolyFq() = default;
    explicit PolyFq(std::shared_ptr<const Fq> f) : f_(std::move(f)) {}
    PolyFq(std::shared_ptr<const Fq> f, std::vector<u32> coeffs)
        : f_(std::move(f)), c_(std::move(coeffs)) {
        trim();
    }

    static PolyFq zero(std::shared_ptr<const Fq> f) { return PolyFq(std::move(f)); }
    static PolyFq constant(std::shared_ptr<const Fq> f, u32 v) {
        return PolyFq(std::move(f), {v});
    }
    static PolyFq x(std::shared_ptr<const Fq> f) { return PolyFq(std::move(f), {0, Fq::kOne}); }

    const Fq& field() const { return *f_; }
    std::shared_ptr<const Fq> field_ptr() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }
    u32 leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return leading() == Fq::kOne; }
    u32 coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : 0; }
    const std::vector<u32>& coeffs() const { return c_; }

    bool operator==(const PolyFq& o) const { return c_ == o.c_; }

    PolyFq operator+(const PolyFq& o) const {
        std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(int(i)), o.coeff(int(i)));
        return PolyFq(f_, std::move(r));
    }

    PolyFq operator-(const PolyFq& o) const {
        std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(int(i)), o.coeff(int(i)));
        return PolyFq(f_, std::move(r));
    }

    PolyFq operator*(const PolyFq& o) const {
        if (is_zero() || o.is_zero()) return zero(f_);
        std::vector<u32> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
        }
        return PolyFq(f_, std::move(r));
    }

    PolyFq scaled(u32 v) const {
        std::vector<u32> r(c_);
        for (auto& x : r) x = f_->mul(x, v);
        return PolyFq(f_, std::move(r));
    }

    PolyFq monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(f_->inv(leading()));
    }

    /// Long division; returns (quotient, remainder).
    std::pair<PolyFq, PolyFq> divmod(const PolyFq& d) const {
        if (d.is_zero()) throw config_error("polynomial division by zero");
        PolyFq r = *this;
        std::vector<u32> q(degree() >= d.degree() ? degree() - d.degree() + 1 : 0, 0);
        const u32 lead_inv = f_->inv(d.leading());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            u32 factor = f_->mul(r.leading(), lead_inv);
            q[shift] = factor;
            for (int i = 0; i <= d.degree(); ++i)
                r.c_[i + shift] = f_->sub(r.c_[i + shift], f_->mul(factor, d.c_[i]));
            r.trim();
        }
        return {PolyFq(f_, std::move(q)), r};
    }

    PolyFq operator%(const PolyFq& d) const { return divmod(d).second; }
    PolyFq operator/(const PolyFq& d) const { return divmod(d).first; }

    PolyFq derivative() const {
        if (c_.size() <= 1) return zero(f_);
        std::vector<u32> r(c_.size() - 1, 0);
        for (size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = f_->mul(c_[i], f_->from_int(i64(i)));
        return PolyFq(f_, std::move(r));
    }

    u32 eval(u32 at) const {
        u32 acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, at), c_[i]);
        return acc;
    }

    static PolyFq gcd(PolyFq a, PolyFq b) {
        while (!b.is_zero()) {
            PolyFq r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    /// this^e mod m, binary exponentiation with a bignum exponent.
    PolyFq pow_mod(const mpz_class& e, const PolyFq& m) const {
        PolyFq base = *this % m;
        PolyFq acc = constant(f_, Fq::kOne);
        const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            acc = (acc * acc) % m;
            if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = (acc * base) % m;
        }
        return acc;
    }

    /// Inverse of the coefficientwise Frobenius; valid when only x^{p*j}
    /// coefficients are nonzero.
    PolyFq pth_root() const {
        const u32 p = f_->p();
        std::vector<u32> r;
        for (size_t i = 0; i < c_.size(); i += p) {
            u32 c = c_[i];
            // c^(p^(k-1)) undoes the Frobenius c -> c^p
            for (int t = 0; t + 1 < f_->ext_degree(); ++t) c = f_->pow(c, i64(p));
            r.push_back(c);
        }
        return PolyFq(f_, std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::shared_ptr<const Fq> f_;
    std::vector<u32> c_;
};

inline bool poly_code_less(const PolyFq& a, const PolyFq& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

/// f irreducible (degree n >= 1) iff x^{q^n} = x mod f and
/// gcd(x^{q^{n/t}} - x, f) = 1 for every prime t | n.
inline bool is_irreducible(const PolyFq& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    auto fp = f.field_ptr();
    const PolyFq x = PolyFq::x(fp);
    mpz_class q(static_cast<unsigned long>(f.field().q()));
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    if (!(x.pow_mod(qn, f) == x % f)) return false;
    std::vector<int> prime_divs;
    int m = n;
    for (int t = 2; t * t <= m; ++t)
        if (m % t == 0) {
            prime_divs.push_back(t);
            while (m % t == 0) m /= t;
        }
    if (m > 1) prime_divs.push_back(m);
    for (int t : prime_divs) {
        mpz_class qd;
        mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n / t));
        PolyFq h = x.pow_mod(qd, f) - x;
        if (PolyFq::gcd(h, f).degree() != 0) return false;
    }
    return true;
}

struct Factorization {
    u32 unit = Fq::kOne;  // leading coefficient of the input
    std::vector<std::pair<PolyFq, int>> factors;  // monic irreducible, multiplicity
};

namespace detail {

/// Splits a monic squarefree product of r >= 2 irreducibles of equal degree d
/// (Cantor-Zassenhaus; the trace construction in characteristic 2).
inline void equal_degree_split(const PolyFq& f, int d, std::vector<PolyFq>& out,
                               CounterRng& rng) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    auto fp = f.field_ptr();
    const u32 q = f.field().q();
    PolyFq splitter = PolyFq::zero(fp);
    for (int attempt = 0; attempt < 64; ++attempt) {
        // random polynomial of degree < deg f
        std::vector<u32> rc(size_t(f.degree()), 0);
        for (auto& c : rc) c = u32(rng.below(q));
        PolyFq r(fp, std::move(rc));
        if (r.is_zero()) continue;
        PolyFq g = PolyFq::gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (f.field().p() == 2) {
            // trace map sum_{i<k*d} r^{2^i}
            const int kd = f.field().ext_degree() * d;
            PolyFq t = PolyFq::zero(fp);
            PolyFq cur = r % f;
            for (int i = 0; i < kd; ++i) {
                t = t + cur;
                cur = (cur * cur) % f;
            }
            g = PolyFq::gcd(t, f);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), q, static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            PolyFq s = r.pow_mod(e, f) - PolyFq::constant(fp, Fq::kOne);
            g = PolyFq::gcd(s, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    if (splitter.is_zero())
        throw invariant_error("equal-degree splitting failed after 64 attempts");
    equal_degree_split(splitter, d, out, rng);
    equal_degree_split(f / splitter, d, out, rng);
}

/// Distinct-degree then equal-degree factorization of a monic squarefree f.
inline void factor_squarefree(PolyFq f, std::vector<PolyFq>& out, CounterRng& rng) {
    auto fp = f.field_ptr();
    const PolyFq x = PolyFq::x(fp);
    mpz_class q(static_cast<unsigned long>(f.field().q()));
    PolyFq h = x;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = h.pow_mod(q, f);  // x^{q^d} mod f
        PolyFq g = PolyFq::gcd(h - x, f);
        if (g.degree() > 0) {
            equal_degree_split(g, d, out, rng);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back(f);
}

/// Squarefree decomposition in characteristic p (handles f = u(x^p)).
inline void squarefree_decompose(const PolyFq& f, int mult,
                                 std::vector<std::pair<PolyFq, int>>& out) {
    if (f.degree() < 1) return;
    PolyFq d = f.derivative();
    if (d.is_zero()) {
        squarefree_decompose(f.pth_root(), mult * int(f.field().p()), out);
        return;
    }
    PolyFq t = PolyFq::gcd(f, d);
    PolyFq v = f / t;
    int i = 1;
    while (v.degree() > 0) {
        PolyFq y = PolyFq::gcd(v, t);
        if (v.degree() > y.degree()) out.emplace_back(v / y, mult * i);
        t = t / y;
        v = std::move(y);
        ++i;
    }
    if (t.degree() > 0) squarefree_decompose(t.pth_root(), mult * int(f.field().p()), out);
}

}  // namespace detail

/// Full factorization into monic irreducibles with multiplicities; the
/// randomized splitting runs from a fixed seed, so results are deterministic.
inline Factorization factor(const PolyFq& f, u64 seed = 0xfac) {
    if (f.is_zero()) throw config_error("factor: zero polynomial");
    Factorization out;
    out.unit = f.leading();
    if (f.degree() < 1) return out;
    std::vector<std::pair<PolyFq, int>> squarefree_parts;
    detail::squarefree_decompose(f.monic(), 1, squarefree_parts);
    CounterRng rng(seed, 0);
    for (auto& [part, mult] : squarefree_parts) {
        std::vector<PolyFq> irr;
        detail::factor_squarefree(part, irr, rng);
        for (auto& p : irr) out.factors.emplace_back(p, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_code_less(a.first, b.first); });
    for (const auto& [p, m] : out.factors)
        if (!is_irreducible(p)) throw invariant_error("factorization produced a reducible factor");
    return out;
}

}  // namespace wordmap
