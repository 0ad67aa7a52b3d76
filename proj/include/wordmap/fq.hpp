#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "wordmap/common.hpp"

namespace wordmap {

/// Finite field F_q, q = p^k <= 2^16, with Zech-logarithm tables so that all
/// field operations are table lookups.  Elements are encoded 0..q-1: the code
/// is the base-p digit string of the coefficient vector in the polynomial
/// basis (for prime q this is just the residue).  The defining polynomial is
/// the lexicographically first primitive one, so encodings are stable.
class Fq {
public:
    static constexpr u32 kZero = 0;
    static constexpr u32 kOne = 1;

    /// Shared instance per q (thread-safe, cached).
    static std::shared_ptr<const Fq> get(u64 q) {
        static std::mutex mu;
        static std::map<u64, std::shared_ptr<const Fq>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
        auto f = std::shared_ptr<const Fq>(new Fq(q));
        cache.emplace(q, f);
        return f;
    }

    u32 q() const { return q_; }
    u32 p() const { return p_; }
    int ext_degree() const { return k_; }
    u32 generator() const { return q_ == 2 ? kOne : exp_[1]; }  // fixed primitive element

    u32 add(u32 a, u32 b) const {
        if (a == 0) return b;
        if (b == 0) return a;
        u32 d = modq1(log_[b] + q_ - 1 - log_[a]);
        u32 z = zech_[d];
        if (z == kNoZech) return 0;
        return exp_[modq1(log_[a] + z)];
    }

    u32 neg(u32 a) const {
        if (a == 0 || p_ == 2) return a;
        return exp_[modq1(log_[a] + (q_ - 1) / 2)];
    }

    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[modq1(log_[a] + log_[b])];
    }

    u32 inv(u32 a) const {
        if (a == 0) throw config_error("Fq: inverse of zero");
        return exp_[modq1(q_ - 1 - log_[a])];
    }

    u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

    u32 pow(u32 a, i64 e) const {
        if (a == 0) {
            if (e < 0) throw config_error("Fq: inverse of zero");
            return e == 0 ? kOne : 0;
        }
        i64 m = i64(q_) - 1;
        i64 le = ((i64(log_[a]) * (e % m)) % m + m) % m;
        return exp_[u32(le)];
    }

    /// Embeds an integer via reduction mod p (prime subfield).
    u32 from_int(i64 v) const {
        i64 r = v % i64(p_);
        if (r < 0) r += p_;
        return u32(r);
    }

    /// Coefficientwise sum used only during construction and as an oracle.
    u32 digit_add(u32 a, u32 b) const {
        u32 r = 0, mul = 1;
        while (a || b) {
            u32 da = a % p_, db = b % p_;
            r += ((da + db) % p_) * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return r;
    }

    /// Coefficients of the defining polynomial (degree k, monic), lowest first.
    const std::vector<u32>& modulus() const { return modulus_; }

private:
    static constexpr u32 kNoZech = 0xffffffffu;

    explicit Fq(u64 q) {
        u64 p;
        int k;
        if (!prime_power(q, p, k) || q > (1u << 16))
            throw config_error("q must be a prime power <= 65536, got " + std::to_string(q));
        q_ = u32(q);
        p_ = u32(p);
        k_ = k;
        build_tables();
    }

    u32 modq1(u32 x) const { return x % (q_ - 1); }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        if (k_ == 1) {
            u32 g = q_ == 2 ? 1 : smallest_primitive_root();
            u64 acc = 1;
            for (u32 i = 0; i < q_ - 1; ++i) {
                exp_[i] = u32(acc);
                log_[acc] = i;
                acc = acc * g % p_;
            }
            modulus_.clear();  // prime field, no extension modulus
        } else {
            find_primitive_polynomial();
        }
        zech_.assign(q_ - 1, kNoZech);
        for (u32 z = 0; z < q_ - 1; ++z) {
            u32 s = digit_add(exp_[z], 1);
            if (s != 0) zech_[z] = log_[s];
        }
    }

    u32 smallest_primitive_root() const {
        std::vector<u32> prime_factors;
        u32 m = p_ - 1;
        for (u32 d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                prime_factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) prime_factors.push_back(m);
        for (u32 g = 2; g < p_; ++g) {
            bool ok = true;
            for (u32 r : prime_factors) {
                if (pow_mod_p(g, (p_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return g;
        }
        throw invariant_error("no primitive root found");
    }

    u32 pow_mod_p(u64 b, u64 e) const {
        u64 r = 1;
        b %= p_;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return u32(r);
    }

    /// Searches monic degree-k polynomials in code order for one where x is a
    /// primitive element; fills exp_/log_ from the powers of x along the way.
    void find_primitive_polynomial() {
        const u32 codes = [&] {
            u32 c = 1;
            for (int i = 0; i < k_; ++i) c *= p_;
            return c;
        }();
        std::vector<u32> coeffs(k_ + 1, 0);
        coeffs[k_] = 1;
        for (u32 tail = 0; tail < codes; ++tail) {
            u32 t = tail;
            for (int i = 0; i < k_; ++i) {
                coeffs[i] = t % p_;
                t /= p_;
            }
            if (coeffs[0] == 0) continue;  // x | f, reducible
            if (try_powers_of_x(coeffs)) {
                modulus_ = coeffs;
                return;
            }
        }
        throw invariant_error("no primitive polynomial found");
    }

    /// Steps through x, x^2, ... modulo f; succeeds iff the period is q-1
    /// (which also certifies irreducibility).
    bool try_powers_of_x(const std::vector<u32>& f) {
        std::vector<u32> cur(k_, 0);  // coefficient vector of current power
        cur[0] = 1;                   // x^0
        std::vector<u32> tmp_exp(q_ - 1, 0);
        std::vector<u32> tmp_log(q_, 0);
        for (u32 i = 0; i < q_ - 1; ++i) {
            u32 code = 0, mul = 1;
            for (int d = 0; d < k_; ++d) {
                code += cur[d] * mul;
                mul *= p_;
            }
            if (code == 1 && i > 0) return false;  // period divides i < q-1
            tmp_exp[i] = code;
            tmp_log[code] = i;
            // multiply by x mod f
            u32 carry = cur[k_ - 1];
            for (int d = k_ - 1; d > 0; --d) cur[d] = cur[d - 1];
            cur[0] = 0;
            if (carry) {
                for (int d = 0; d < k_; ++d)
                    cur[d] = (cur[d] + (p_ - carry * f[d] % p_)) % p_;
            }
        }
        // period must close back to 1
        u32 code = 0, mul = 1;
        for (int d = 0; d < k_; ++d) {
            code += cur[d] * mul;
            mul *= p_;
        }
        if (code != 1) return false;
        exp_ = std::move(tmp_exp);
        log_ = std::move(tmp_log);
        return true;
    }

    u32 q_ = 0, p_ = 0;
    int k_ = 0;
    std::vector<u32> exp_, log_, zech_;
    std::vector<u32> modulus_;
};

/// Dense n x n matrix over F_q.  Row-major, entries are Fq codes.
class FqMat {
public:
    FqMat() = default;
    FqMat(std::shared_ptr<const Fq> f, int n) : f_(std::move(f)), n_(n), a_(size_t(n) * n, 0) {}

    static FqMat identity(std::shared_ptr<const Fq> f, int n) {
        FqMat m(std::move(f), n);
        for (int i = 0; i < n; ++i) m(i, i) = Fq::kOne;
        return m;
    }

    int dim() const { return n_; }
    const Fq& field() const { return *f_; }
    std::shared_ptr<const Fq> field_ptr() const { return f_; }

    u32& operator()(int i, int j) { return a_[size_t(i) * n_ + j]; }
    u32 operator()(int i, int j) const { return a_[size_t(i) * n_ + j]; }
    bool operator==(const FqMat& o) const { return n_ == o.n_ && a_ == o.a_; }

    FqMat operator*(const FqMat& o) const {
        const Fq& F = *f_;
        FqMat r(f_, n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                u32 aik = (*this)(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n_; ++j)
                    r(i, j) = F.add(r(i, j), F.mul(aik, o(k, j)));
            }
        return r;
    }

    FqMat operator+(const FqMat& o) const {
        FqMat r(f_, n_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
        return r;
    }

    FqMat scaled(u32 c) const {
        FqMat r(f_, n_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
        return r;
    }

    bool is_zero() const {
        for (u32 v : a_)
            if (v) return false;
        return true;
    }

    u32 det() const {
        FqMat m = *this;
        const Fq& F = *f_;
        u32 d = Fq::kOne;
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (m(r, col) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            if (piv != col) {
                for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(col, j));
                d = F.neg(d);
            }
            d = F.mul(d, m(col, col));
            u32 pinv = F.inv(m(col, col));
            for (int r = col + 1; r < n_; ++r) {
                u32 factor = F.mul(m(r, col), pinv);
                if (factor == 0) continue;
                for (int j = col; j < n_; ++j)
                    m(r, j) = F.sub(m(r, j), F.mul(factor, m(col, j)));
            }
        }
        return d;
    }

    int rank() const {
        FqMat m = *this;
        const Fq& F = *f_;
        int rk = 0;
        for (int col = 0; col < n_ && rk < n_; ++col) {
            int piv = -1;
            for (int r = rk; r < n_; ++r)
                if (m(r, col) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            if (piv != rk)
                for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(rk, j));
            u32 pinv = F.inv(m(rk, col));
            for (int r = rk + 1; r < n_; ++r) {
                u32 factor = F.mul(m(r, col), pinv);
                if (factor == 0) continue;
                for (int j = col; j < n_; ++j)
                    m(r, j) = F.sub(m(r, j), F.mul(factor, m(rk, j)));
            }
            ++rk;
        }
        return rk;
    }

    std::optional<FqMat> inverse() const {
        const Fq& F = *f_;
        FqMat m = *this;
        FqMat inv = identity(f_, n_);
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (m(r, col) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return std::nullopt;
            if (piv != col)
                for (int j = 0; j < n_; ++j) {
                    std::swap(m(piv, j), m(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            u32 pinv = F.inv(m(col, col));
            for (int j = 0; j < n_; ++j) {
                m(col, j) = F.mul(m(col, j), pinv);
                inv(col, j) = F.mul(inv(col, j), pinv);
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col || m(r, col) == 0) continue;
                u32 factor = m(r, col);
                for (int j = 0; j < n_; ++j) {
                    m(r, j) = F.sub(m(r, j), F.mul(factor, m(col, j)));
                    inv(r, j) = F.sub(inv(r, j), F.mul(factor, inv(col, j)));
                }
            }
        }
        return inv;
    }

    /// Base-q code with the (0,0) entry most significant, so that ascending
    /// codes enumerate matrices in row-major lexicographic order.
    u64 raw_code() const {
        u64 code = 0;
        for (u32 v : a_) code = code * f_->q() + v;
        return code;
    }

    static FqMat from_raw_code(std::shared_ptr<const Fq> f, int n, u64 code) {
        FqMat m(f, n);
        u32 q = m.f_->q();
        for (size_t i = m.a_.size(); i-- > 0;) {
            m.a_[i] = u32(code % q);
            code /= q;
        }
        return m;
    }

private:
    std::shared_ptr<const Fq> f_;
    int n_ = 0;
    std::vector<u32> a_;
};

}  // namespace wordmap
