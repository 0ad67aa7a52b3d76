#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "wordmap/common.hpp"
#include "wordmap/rng.hpp"

namespace wordmap {

/// Permutation of {0, ..., n-1} stored as its image array.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= int(img_.size()) || seen[v])
                throw config_error("permutation image is not a bijection");
            seen[v] = true;
        }
    }

    int degree() const { return int(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    /// Composition acting on points: (a*b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        Permutation r;
        r.img_.resize(a.img_.size());
        for (size_t i = 0; i < r.img_.size(); ++i) r.img_[i] = a.img_[b.img_[i]];
        return r;
    }

    Permutation inverse() const {
        Permutation r;
        r.img_.resize(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = int(i);
        return r;
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }

    int sign() const {
        std::vector<bool> seen(img_.size(), false);
        int s = 1;
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (size_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            if (len % 2 == 0) s = -s;
        }
        return s;
    }

    int fixed_points() const {
        int f = 0;
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] == int(i)) ++f;
        return f;
    }

    bool is_identity() const {
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != int(i)) return false;
        return true;
    }

    /// Lehmer-code rank in [0, n!), lexicographic on image arrays.  n <= 20.
    u64 lehmer_rank() const {
        const int n = degree();
        std::vector<u64> fact(std::max(n, 1), 1);
        for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * u64(i);
        u64 rank = 0;
        for (int i = 0; i < n; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < n; ++j)
                if (img_[j] < img_[i]) ++smaller;
            rank += u64(smaller) * fact[n - 1 - i];
        }
        return rank;
    }

    static Permutation from_lehmer_rank(int n, u64 rank) {
        std::vector<u64> fact(n, 1);
        for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * u64(i);
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) {
            u64 f = fact[n - 1 - i];
            int idx = int(rank / f);
            rank %= f;
            img[i] = pool[idx];
            pool.erase(pool.begin() + idx);
        }
        return Permutation(std::move(img));
    }

    static Permutation random(int n, CounterRng& rng) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(img[i], img[rng.below(u64(i) + 1)]);
        Permutation p;
        p.img_ = std::move(img);
        return p;
    }

    /// Transposition (a b), 0-based.
    static Permutation transposition(int n, int a, int b) {
        Permutation p(n);
        std::swap(p.img_[a], p.img_[b]);
        return p;
    }

    /// Cycle (c0 c1 ... ck-1), 0-based.
    static Permutation cycle(int n, const std::vector<int>& c) {
        Permutation p(n);
        for (size_t i = 0; i < c.size(); ++i) p.img_[c[i]] = c[(i + 1) % c.size()];
        return p;
    }

private:
    std::vector<int> img_;
};

inline int sign(const Permutation& p) { return p.sign(); }
inline int fix(const Permutation& p) { return p.fixed_points(); }

}  // namespace wordmap
