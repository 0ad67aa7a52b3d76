#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wordmap/common.hpp"
#include "wordmap/fq.hpp"
#include "wordmap/permutation.hpp"
#include "wordmap/word.hpp"

namespace wordmap {

enum class GroupKind { symmetric, alternating, gl, sl, psl2, cayley };

namespace detail {

/// Abstract enumerated group on element codes 0..order-1.  Implementations
/// are immutable after construction; the lazy operation tables are built
/// under a once_flag so shared instances stay thread-safe.
class GroupImpl {
public:
    static constexpr u64 kMulTableLimit = 2048;
    static constexpr u64 kInvTableLimit = 1u << 20;

    virtual ~GroupImpl() = default;
    virtual GroupKind kind() const = 0;
    virtual u64 order() const = 0;
    virtual u32 identity() const = 0;
    virtual u32 mul(u32 a, u32 b) const = 0;
    virtual u32 inv(u32 a) const = 0;
    virtual std::vector<u32> generators() const = 0;

    virtual int degree() const { throw config_error("group kind has no permutation degree"); }
    virtual Permutation permutation(u32) const {
        throw config_error("group kind has no permutation realization");
    }
    virtual u32 encode_permutation(const Permutation&) const {
        throw config_error("group kind has no permutation realization");
    }
    virtual int mat_dim() const { throw config_error("group kind has no matrix realization"); }
    virtual u32 field_q() const { throw config_error("group kind has no matrix realization"); }
    virtual FqMat matrix(u32) const {
        throw config_error("group kind has no matrix realization");
    }
    virtual u32 encode_matrix(const FqMat&) const {
        throw config_error("group kind has no matrix realization");
    }

    std::string spec;

    const std::vector<u32>* mul_table() const {
        if (order() > kMulTableLimit) return nullptr;
        std::call_once(mul_once_, [&] {
            const u64 n = order();
            mul_table_.resize(n * n);
            for (u64 a = 0; a < n; ++a)
                for (u64 b = 0; b < n; ++b) mul_table_[a * n + b] = mul(u32(a), u32(b));
        });
        return &mul_table_;
    }

    const std::vector<u32>* inv_table() const {
        if (order() > kInvTableLimit) return nullptr;
        std::call_once(inv_once_, [&] {
            inv_table_.resize(order());
            for (u64 a = 0; a < order(); ++a) inv_table_[a] = inv(u32(a));
        });
        return &inv_table_;
    }

private:
    mutable std::once_flag mul_once_, inv_once_;
    mutable std::vector<u32> mul_table_, inv_table_;
};

class SymmetricImpl final : public GroupImpl {
public:
    explicit SymmetricImpl(int n) : n_(n) {
        order_ = 1;
        for (int i = 2; i <= n; ++i) order_ *= u64(i);
    }
    GroupKind kind() const override { return GroupKind::symmetric; }
    u64 order() const override { return order_; }
    u32 identity() const override { return 0; }
    u32 mul(u32 a, u32 b) const override {
        return u32((permutation(a) * permutation(b)).lehmer_rank());
    }
    u32 inv(u32 a) const override { return u32(permutation(a).inverse().lehmer_rank()); }
    int degree() const override { return n_; }
    Permutation permutation(u32 code) const override {
        return Permutation::from_lehmer_rank(n_, code);
    }
    u32 encode_permutation(const Permutation& p) const override {
        if (p.degree() != n_) throw config_error("permutation degree mismatch");
        return u32(p.lehmer_rank());
    }
    std::vector<u32> generators() const override {
        std::vector<u32> g;
        for (int i = 0; i + 1 < n_; ++i)
            g.push_back(encode_permutation(Permutation::transposition(n_, i, i + 1)));
        return g;
    }

private:
    int n_;
    u64 order_;
};

class AlternatingImpl final : public GroupImpl {
public:
    explicit AlternatingImpl(int n) : n_(n) {
        u64 fact = 1;
        for (int i = 2; i <= n; ++i) fact *= u64(i);
        ranks_.reserve(fact / 2 + 1);
        for (u64 r = 0; r < fact; ++r)
            if (rank_parity_even(r)) ranks_.push_back(r);
        if (ranks_.empty()) ranks_.push_back(0);  // n <= 1
    }
    GroupKind kind() const override { return GroupKind::alternating; }
    u64 order() const override { return ranks_.size(); }
    u32 identity() const override { return 0; }
    u32 mul(u32 a, u32 b) const override {
        return encode_rank((permutation(a) * permutation(b)).lehmer_rank());
    }
    u32 inv(u32 a) const override { return encode_rank(permutation(a).inverse().lehmer_rank()); }
    int degree() const override { return n_; }
    Permutation permutation(u32 code) const override {
        return Permutation::from_lehmer_rank(n_, ranks_[code]);
    }
    u32 encode_permutation(const Permutation& p) const override {
        if (p.degree() != n_) throw config_error("permutation degree mismatch");
        if (p.sign() != 1) throw config_error("odd permutation is not in A_n");
        return encode_rank(p.lehmer_rank());
    }
    std::vector<u32> generators() const override {
        std::vector<u32> g;
        for (int k = 2; k < n_; ++k)
            g.push_back(encode_permutation(Permutation::cycle(n_, {0, 1, k})));
        return g;
    }

private:
    /// Inversion count parity straight from the factorial digits of the rank.
    bool rank_parity_even(u64 rank) const {
        u64 inversions = 0;
        for (int base = 2; base <= n_; ++base) {
            inversions += rank % base;
            rank /= base;
        }
        return inversions % 2 == 0;
    }
    u32 encode_rank(u64 rank) const {
        auto it = std::lower_bound(ranks_.begin(), ranks_.end(), rank);
        if (it == ranks_.end() || *it != rank) throw invariant_error("A_n: rank not in group");
        return u32(it - ranks_.begin());
    }

    int n_;
    std::vector<u64> ranks_;
};

/// GL_n(q) or SL_n(q); elements indexed by sorted row-major matrix codes.
class MatrixGroupImpl final : public GroupImpl {
public:
    MatrixGroupImpl(GroupKind kind, int n, u64 q, u64 expected_order, u64 enum_guard)
        : kind_(kind), n_(n), f_(Fq::get(q)) {
        u64 space = 1;
        for (int i = 0; i < n * n; ++i) {
            if (space > enum_guard / q) throw budget_error("matrix enumeration space too large");
            space *= q;
        }
        codes_.reserve(expected_order);
        const bool want_sl = kind == GroupKind::sl;
        for (u64 code = 0; code < space; ++code) {
            FqMat m = FqMat::from_raw_code(f_, n_, code);
            u32 d = m.det();
            if (want_sl ? d == Fq::kOne : d != 0) codes_.push_back(code);
        }
        if (codes_.size() != expected_order)
            throw invariant_error("matrix group enumeration does not match order formula");
    }
    GroupKind kind() const override { return kind_; }
    u64 order() const override { return codes_.size(); }
    u32 identity() const override {
        return encode_raw(FqMat::identity(f_, n_).raw_code());
    }
    u32 mul(u32 a, u32 b) const override {
        return encode_raw((matrix(a) * matrix(b)).raw_code());
    }
    u32 inv(u32 a) const override {
        auto m = matrix(a).inverse();
        if (!m) throw invariant_error("group element not invertible");
        return encode_raw(m->raw_code());
    }
    int mat_dim() const override { return n_; }
    u32 field_q() const override { return f_->q(); }
    FqMat matrix(u32 code) const override {
        return FqMat::from_raw_code(f_, n_, codes_[code]);
    }
    u32 encode_matrix(const FqMat& m) const override { return encode_raw(m.raw_code()); }
    std::vector<u32> generators() const override {
        std::vector<u32> g;
        const u32 beta = f_->generator();
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i == j) continue;
                u32 lambda = Fq::kOne;
                for (int t = 0; t < f_->ext_degree(); ++t) {
                    FqMat m = FqMat::identity(f_, n_);
                    m(i, j) = lambda;
                    g.push_back(encode_matrix(m));
                    lambda = f_->mul(lambda, beta);
                }
            }
        if (kind_ == GroupKind::gl && f_->q() > 2) {
            FqMat m = FqMat::identity(f_, n_);
            m(0, 0) = beta;
            g.push_back(encode_matrix(m));
        }
        return g;
    }

private:
    u32 encode_raw(u64 raw) const {
        auto it = std::lower_bound(codes_.begin(), codes_.end(), raw);
        if (it == codes_.end() || *it != raw) throw invariant_error("matrix not in group");
        return u32(it - codes_.begin());
    }

    GroupKind kind_;
    int n_;
    std::shared_ptr<const Fq> f_;
    std::vector<u64> codes_;
};

/// PSL_2(q) as SL_2(q) modulo {±I}; the stored code of a coset is the
/// lexicographically smaller raw code of {M, -M}.
class Psl2Impl final : public GroupImpl {
public:
    Psl2Impl(u64 q, u64 expected_order, u64 enum_guard) : f_(Fq::get(q)) {
        u64 space = 1;
        for (int i = 0; i < 4; ++i) {
            if (space > enum_guard / q) throw budget_error("matrix enumeration space too large");
            space *= q;
        }
        for (u64 code = 0; code < space; ++code) {
            FqMat m = FqMat::from_raw_code(f_, 2, code);
            if (m.det() != Fq::kOne) continue;
            if (canonical_raw(m) == code) codes_.push_back(code);
        }
        if (codes_.size() != expected_order)
            throw invariant_error("PSL2 enumeration does not match order formula");
    }
    GroupKind kind() const override { return GroupKind::psl2; }
    u64 order() const override { return codes_.size(); }
    u32 identity() const override {
        return encode_raw(canonical_raw(FqMat::identity(f_, 2)));
    }
    u32 mul(u32 a, u32 b) const override {
        return encode_raw(canonical_raw(matrix(a) * matrix(b)));
    }
    u32 inv(u32 a) const override {
        auto m = matrix(a).inverse();
        if (!m) throw invariant_error("group element not invertible");
        return encode_raw(canonical_raw(*m));
    }
    int mat_dim() const override { return 2; }
    u32 field_q() const override { return f_->q(); }
    FqMat matrix(u32 code) const override { return FqMat::from_raw_code(f_, 2, codes_[code]); }
    u32 encode_matrix(const FqMat& m) const override { return encode_raw(canonical_raw(m)); }
    std::vector<u32> generators() const override {
        std::vector<u32> g;
        const u32 beta = f_->generator();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == j) continue;
                u32 lambda = Fq::kOne;
                for (int t = 0; t < f_->ext_degree(); ++t) {
                    FqMat m = FqMat::identity(f_, 2);
                    m(i, j) = lambda;
                    u32 c = encode_matrix(m);
                    if (c != identity()) g.push_back(c);
                    lambda = f_->mul(lambda, beta);
                }
            }
        return g;
    }

private:
    u64 canonical_raw(const FqMat& m) const {
        u64 a = m.raw_code();
        u64 b = m.scaled(f_->neg(Fq::kOne)).raw_code();
        return std::min(a, b);
    }
    u32 encode_raw(u64 raw) const {
        auto it = std::lower_bound(codes_.begin(), codes_.end(), raw);
        if (it == codes_.end() || *it != raw) throw invariant_error("matrix not in PSL2");
        return u32(it - codes_.begin());
    }

    std::shared_ptr<const Fq> f_;
    std::vector<u64> codes_;
};

class CayleyImpl final : public GroupImpl {
public:
    explicit CayleyImpl(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open Cayley table file: " + path);
        u64 n = 0;
        if (!(in >> n) || n == 0 || n > (1u << 16))
            throw config_error("Cayley file: bad group order");
        n_ = n;
        table_.resize(n * n);
        for (u64 i = 0; i < n * n; ++i) {
            i64 v;
            if (!(in >> v) || v < 0 || u64(v) >= n)
                throw config_error("Cayley file: bad table entry");
            table_[i] = u32(v);
        }
        validate();
    }
    GroupKind kind() const override { return GroupKind::cayley; }
    u64 order() const override { return n_; }
    u32 identity() const override { return 0; }
    u32 mul(u32 a, u32 b) const override { return table_[u64(a) * n_ + b]; }
    u32 inv(u32 a) const override { return inv_[a]; }
    std::vector<u32> generators() const override {
        std::vector<u32> g(n_ > 1 ? n_ - 1 : 0);
        std::iota(g.begin(), g.end(), 1);
        return g;
    }

private:
    void validate() {
        // identity is element 0, rows/columns are permutations, inverses exist
        std::vector<bool> seen(n_);
        for (u64 a = 0; a < n_; ++a) {
            if (mul(u32(a), 0) != a || mul(0, u32(a)) != a)
                throw config_error("Cayley file: element 0 is not a two-sided identity");
            std::fill(seen.begin(), seen.end(), false);
            for (u64 b = 0; b < n_; ++b) {
                u32 v = mul(u32(a), u32(b));
                if (seen[v]) throw config_error("Cayley file: row is not a permutation");
                seen[v] = true;
            }
            std::fill(seen.begin(), seen.end(), false);
            for (u64 b = 0; b < n_; ++b) {
                u32 v = mul(u32(b), u32(a));
                if (seen[v]) throw config_error("Cayley file: column is not a permutation");
                seen[v] = true;
            }
        }
        inv_.resize(n_);
        for (u64 a = 0; a < n_; ++a) {
            bool found = false;
            for (u64 b = 0; b < n_; ++b)
                if (mul(u32(a), u32(b)) == 0 && mul(u32(b), u32(a)) == 0) {
                    inv_[a] = u32(b);
                    found = true;
                    break;
                }
            if (!found) throw config_error("Cayley file: element without two-sided inverse");
        }
        // full associativity check for small tables, sampled otherwise
        if (n_ <= 256) {
            for (u64 a = 0; a < n_; ++a)
                for (u64 b = 0; b < n_; ++b)
                    for (u64 c = 0; c < n_; ++c)
                        if (mul(mul(u32(a), u32(b)), u32(c)) != mul(u32(a), mul(u32(b), u32(c))))
                            throw config_error("Cayley file: multiplication not associative");
        } else {
            CounterRng rng(0x6a7, 0);
            for (int t = 0; t < 100000; ++t) {
                u32 a = u32(rng.below(n_)), b = u32(rng.below(n_)), c = u32(rng.below(n_));
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw config_error("Cayley file: multiplication not associative");
            }
        }
    }

    u64 n_ = 0;
    std::vector<u32> table_;
    std::vector<u32> inv_;
};

}  // namespace detail

/// Value handle for an immutable enumerated finite group.
class FiniteGroup {
public:
    static constexpr u64 kDefaultSizeGuard = 10'000'000;      // |G| cap
    static constexpr u64 kDefaultEnumGuard = 1ull << 28;      // raw scan cap

    /// Grammar: S:<n> | A:<n> | GL:<n>:<q> | SL:<n>:<q> | PSL2:<q> | cayley:<path>
    static FiniteGroup from_spec(const std::string& spec, u64 size_guard = kDefaultSizeGuard) {
        auto parts = split(spec, ':');
        if (parts.empty()) throw config_error("empty group spec");
        const std::string& head = parts[0];
        std::shared_ptr<detail::GroupImpl> impl;
        if (head == "S" || head == "A") {
            if (parts.size() != 2) throw config_error("group spec: expected " + head + ":<n>");
            u64 n = parse_u64(parts[1], "n");
            if (n == 0 || n > 20) throw config_error("group spec: n out of range");
            u64 ord = 1;
            for (u64 i = 2; i <= n; ++i) ord *= i;
            if (head == "A" && n >= 2) ord /= 2;
            check_guard(ord, size_guard);
            if (head == "S")
                impl = std::make_shared<detail::SymmetricImpl>(int(n));
            else
                impl = std::make_shared<detail::AlternatingImpl>(int(n));
        } else if (head == "GL" || head == "SL") {
            if (parts.size() != 3) throw config_error("group spec: expected " + head + ":<n>:<q>");
            u64 n = parse_u64(parts[1], "n");
            u64 q = parse_u64(parts[2], "q");
            if (n == 0 || n > 8) throw config_error("group spec: n out of range");
            require_prime_power(q);
            u64 ord = gl_order(n, q);
            if (head == "SL") ord /= (q - 1);
            check_guard(ord, size_guard);
            impl = std::make_shared<detail::MatrixGroupImpl>(
                head == "GL" ? GroupKind::gl : GroupKind::sl, int(n), q, ord, kDefaultEnumGuard);
        } else if (head == "PSL2") {
            if (parts.size() != 2) throw config_error("group spec: expected PSL2:<q>");
            u64 q = parse_u64(parts[1], "q");
            require_prime_power(q);
            u64 ord = q * (q * q - 1) / std::gcd<u64>(2, q - 1);
            check_guard(ord, size_guard);
            impl = std::make_shared<detail::Psl2Impl>(q, ord, kDefaultEnumGuard);
        } else if (head == "cayley") {
            if (parts.size() < 2) throw config_error("group spec: expected cayley:<path>");
            // paths may contain ':'; rejoin
            std::string path = spec.substr(std::string("cayley:").size());
            impl = std::make_shared<detail::CayleyImpl>(path);
            check_guard(impl->order(), size_guard);
        } else {
            throw config_error("unknown group kind '" + head + "'");
        }
        impl->spec = spec;
        return FiniteGroup(std::move(impl));
    }

    GroupKind kind() const { return impl_->kind(); }
    u64 order() const { return impl_->order(); }
    const std::string& spec() const { return impl_->spec; }
    u32 id() const { return impl_->identity(); }
    u32 mul(u32 a, u32 b) const { return impl_->mul(a, b); }
    u32 inv(u32 a) const { return impl_->inv(a); }
    std::vector<u32> generators() const { return impl_->generators(); }

    int degree() const { return impl_->degree(); }
    Permutation permutation(u32 code) const { return impl_->permutation(code); }
    u32 encode_permutation(const Permutation& p) const { return impl_->encode_permutation(p); }
    int mat_dim() const { return impl_->mat_dim(); }
    u32 field_q() const { return impl_->field_q(); }
    FqMat matrix(u32 code) const { return impl_->matrix(code); }
    u32 encode_matrix(const FqMat& m) const { return impl_->encode_matrix(m); }

    bool is_permutation_kind() const {
        return kind() == GroupKind::symmetric || kind() == GroupKind::alternating;
    }
    bool is_matrix_kind() const {
        return kind() == GroupKind::gl || kind() == GroupKind::sl || kind() == GroupKind::psl2;
    }

    /// Sign of an element of an S_n-kind group (+1 on A_n-kind).
    bool is_even(u32 code) const {
        if (kind() == GroupKind::alternating) return true;
        if (kind() != GroupKind::symmetric) throw config_error("is_even requires a permutation kind");
        return permutation(code).sign() == 1;
    }

    const detail::GroupImpl* impl() const { return impl_.get(); }
    bool same_group(const FiniteGroup& o) const {
        return impl_ == o.impl_ || impl_->spec == o.impl_->spec;
    }

private:
    explicit FiniteGroup(std::shared_ptr<detail::GroupImpl> impl) : impl_(std::move(impl)) {}

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        out.push_back(cur);
        return out;
    }

    static u64 parse_u64(const std::string& s, const char* what) {
        if (s.empty()) throw config_error(std::string("group spec: missing ") + what);
        u64 v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw config_error(std::string("group spec: bad ") + what + " '" + s + "'");
            v = v * 10 + u64(c - '0');
            if (v > (1ull << 40)) throw config_error(std::string("group spec: ") + what + " too large");
        }
        return v;
    }

    static void require_prime_power(u64 q) {
        u64 p;
        int k;
        if (!prime_power(q, p, k)) throw config_error("q = " + std::to_string(q) + " is not a prime power");
    }

    static void check_guard(u64 ord, u64 guard) {
        if (ord > guard)
            throw budget_error("group order " + std::to_string(ord) + " exceeds size guard " +
                               std::to_string(guard));
    }

    static u64 gl_order(u64 n, u64 q) {
        // prod_{i<n} (q^n - q^i), with overflow guard
        long double approx = 1.0L;
        u64 qn = 1;
        for (u64 i = 0; i < n; ++i) {
            qn *= q;
            if (qn > (1ull << 62)) throw budget_error("group order overflows");
        }
        u64 ord = 1;
        u64 qi = 1;
        for (u64 i = 0; i < n; ++i) {
            u64 factor = qn - qi;
            approx *= (long double)factor;
            if (approx > 9e18L) throw budget_error("group order overflows");
            ord *= factor;
            qi *= q;
        }
        return ord;
    }

    std::shared_ptr<detail::GroupImpl> impl_;
};

/// Cheap accessor used in inner loops: multiplication-table fast path when
/// the group is small enough, virtual dispatch otherwise.
class GroupOps {
public:
    explicit GroupOps(const FiniteGroup& G) : g_(G.impl()), id_(G.id()), n_(G.order()) {
        if (const auto* t = g_->mul_table()) tab_ = t->data();
        if (const auto* t = g_->inv_table()) itab_ = t->data();
    }
    u32 mul(u32 a, u32 b) const { return tab_ ? tab_[u64(a) * n_ + b] : g_->mul(a, b); }
    u32 inv(u32 a) const { return itab_ ? itab_[a] : g_->inv(a); }
    u32 id() const { return id_; }
    u64 order() const { return n_; }

    u32 power(u32 g, i64 e) const {
        u32 base = e < 0 ? inv(g) : g;
        u64 k = u64(e < 0 ? -e : e);
        u32 acc = id_;
        u32 sq = base;
        while (k) {
            if (k & 1) acc = mul(acc, sq);
            k >>= 1;
            if (k) sq = mul(sq, sq);
        }
        return acc;
    }

private:
    const detail::GroupImpl* g_;
    const u32* tab_ = nullptr;
    const u32* itab_ = nullptr;
    u32 id_;
    u64 n_;
};

/// w(args) evaluated in G on element codes.
inline u32 evaluate_word(const Word& w, std::span<const u32> args, const FiniteGroup& G) {
    GroupOps ops(G);
    return w.evaluate<u32>(
        args, ops.id(), [&](u32 a, u32 b) { return ops.mul(a, b); },
        [&](u32 a) { return ops.inv(a); });
}

/// For primitive w returns (g^{b_1}, ..., g^{b_d}) with w(...) = g, verified.
inline std::vector<u32> surjectivity_witness(const Word& w, u32 g, const FiniteGroup& G) {
    auto b = w.bezout_coefficients();
    GroupOps ops(G);
    std::vector<u32> tuple(b.size());
    for (size_t i = 0; i < b.size(); ++i) tuple[i] = ops.power(g, b[i]);
    if (evaluate_word(w, tuple, G) != g)
        throw invariant_error("surjectivity witness failed verification");
    return tuple;
}

struct ClassInfo {
    u32 representative = 0;  // least element code in the class
    u64 size = 0;
    u64 centralizer_order = 0;
};

struct ConjugacyClasses {
    std::vector<ClassInfo> classes;   // ordered by (size, representative)
    std::vector<u32> class_of;        // element code -> class index
    u32 identity_class = 0;
    u32 count() const { return u32(classes.size()); }
};

/// Partition of G into conjugation orbits by BFS closure under conjugation by
/// a fixed generating set; O(|G| * |gens|).
inline ConjugacyClasses conjugacy_classes(const FiniteGroup& G) {
    const u64 n = G.order();
    GroupOps ops(G);
    auto gens = G.generators();
    std::vector<u32> gens_inv(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) gens_inv[i] = ops.inv(gens[i]);

    constexpr u32 kUnset = 0xffffffffu;
    std::vector<u32> class_of(n, kUnset);
    std::vector<ClassInfo> classes;
    std::vector<u32> queue;
    for (u64 start = 0; start < n; ++start) {
        if (class_of[start] != kUnset) continue;
        const u32 cls = u32(classes.size());
        classes.push_back({u32(start), 0, 0});
        queue.clear();
        queue.push_back(u32(start));
        class_of[start] = cls;
        u64 size = 0;
        while (!queue.empty()) {
            u32 x = queue.back();
            queue.pop_back();
            ++size;
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                u32 y = ops.mul(ops.mul(gens[gi], x), gens_inv[gi]);
                if (class_of[y] == kUnset) {
                    class_of[y] = cls;
                    queue.push_back(y);
                }
            }
        }
        classes[cls].size = size;
        if (n % size != 0) throw invariant_error("class size does not divide group order");
        classes[cls].centralizer_order = n / size;
    }

    // canonical order: ascending class size, then least representative
    std::vector<u32> perm(classes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](u32 a, u32 b) {
        if (classes[a].size != classes[b].size) return classes[a].size < classes[b].size;
        return classes[a].representative < classes[b].representative;
    });
    std::vector<u32> new_index(classes.size());
    for (u32 i = 0; i < perm.size(); ++i) new_index[perm[i]] = i;

    ConjugacyClasses out;
    out.classes.resize(classes.size());
    for (u32 i = 0; i < perm.size(); ++i) out.classes[i] = classes[perm[i]];
    out.class_of.resize(n);
    for (u64 x = 0; x < n; ++x) out.class_of[x] = new_index[class_of[x]];
    out.identity_class = out.class_of[G.id()];
    return out;
}

}  // namespace wordmap
