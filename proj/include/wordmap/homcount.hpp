#pragma once

#include <vector>

#include "wordmap/dist.hpp"
#include "wordmap/group.hpp"
#include "wordmap/parallel.hpp"

namespace wordmap {

/// |Hom(Gamma, G)| for Gamma = <x_1..x_d | w> as the fiber of the word map
/// over the identity.
inline u64 hom_count(const Word& w, const FiniteGroup& G, u64 budget = 10'000'000'000ull,
                     int threads = 0) {
    const u64 n = G.order();
    const int d = std::max(w.arity(), 1);
    u64 tuples = 1;
    for (int i = 0; i < d; ++i) {
        if (tuples > budget / n) throw budget_error("hom_count budget exceeded");
        tuples *= n;
    }
    GroupOps ops(G);
    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<u64> partial(chunk_count, 0);
    parallel_chunks(tuples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        u64 hits = 0;
        std::vector<u32> tuple(d);
        u64 idx = begin;
        for (int i = 0; i < d; ++i) {
            tuple[i] = u32(idx % n);
            idx /= n;
        }
        const u32 id = ops.id();
        for (u64 t = begin; t < end; ++t) {
            u32 val = w.evaluate<u32>(
                std::span<const u32>(tuple), id, [&](u32 a, u32 b) { return ops.mul(a, b); },
                [&](u32 a) { return ops.inv(a); });
            if (val == id) ++hits;
            for (int i = 0; i < d; ++i) {
                if (++tuple[i] < n) break;
                tuple[i] = 0;
            }
        }
        partial[chunk] = hits;
    });
    u64 total = 0;
    for (u64 h : partial) total += h;
    return total;
}

namespace detail {

/// Flat table of all n! permutations of S_n (images and inverse indices),
/// used by the subgroup-growth enumeration.
struct PermTable {
    int n = 0;
    u64 count = 0;
    std::vector<int> images;    // count * n
    std::vector<u32> inverse;   // index of inverse permutation

    explicit PermTable(int n_) : n(n_) {
        count = 1;
        for (int i = 2; i <= n; ++i) count *= u64(i);
        images.resize(count * size_t(n));
        inverse.resize(count);
        for (u64 r = 0; r < count; ++r) {
            Permutation p = Permutation::from_lehmer_rank(n, r);
            for (int i = 0; i < n; ++i) images[r * n + i] = p(i);
            inverse[r] = u32(p.inverse().lehmer_rank());
        }
    }
    const int* row(u64 r) const { return images.data() + r * size_t(n); }
};

/// Word as a flat letter sequence; letter = (variable index, use-inverse).
struct FlatWord {
    std::vector<std::pair<int, bool>> letters;  // applied right to left
    explicit FlatWord(const Word& w, u64 expansion_guard = 100000) {
        for (const auto& s : w.syllables()) {
            u64 reps = u64(s.exp < 0 ? -s.exp : s.exp);
            if (letters.size() + reps > expansion_guard)
                throw budget_error("word too long for flat expansion");
            for (u64 i = 0; i < reps; ++i) letters.emplace_back(s.var - 1, s.exp < 0);
        }
    }
};

/// Image of point x under the evaluated word (function composition acts right
/// to left).
inline int apply_flat_word(const FlatWord& fw, const PermTable& tab,
                           std::span<const u64> tuple, int x) {
    for (size_t i = fw.letters.size(); i-- > 0;) {
        auto [var, use_inv] = fw.letters[i];
        u64 r = use_inv ? tab.inverse[tuple[var]] : tuple[var];
        x = tab.row(r)[x];
    }
    return x;
}

inline bool word_fixes_all(const FlatWord& fw, const PermTable& tab,
                           std::span<const u64> tuple, int n) {
    for (int x = 0; x < n; ++x)
        if (apply_flat_word(fw, tab, tuple, x) != x) return false;
    return true;
}

inline bool transitive(const PermTable& tab, std::span<const u64> tuple, int n) {
    int seen_count = 1;
    unsigned seen = 1u;  // bitmask, n <= 16
    int stack[16];
    int sp = 0;
    stack[sp++] = 0;
    while (sp) {
        int x = stack[--sp];
        for (u64 r : tuple) {
            int y = tab.row(r)[x];
            if (!(seen & (1u << y))) {
                seen |= 1u << y;
                ++seen_count;
                stack[sp++] = y;
            }
        }
    }
    return seen_count == n;
}

/// Finest G-invariant partition with points u, v together (union-find with a
/// worklist); the image is primitive iff every such closure is everything.
inline bool primitive(const PermTable& tab, std::span<const u64> tuple, int n) {
    if (!transitive(tab, tuple, n)) return false;
    if (n <= 2) return true;
    std::vector<int> parent(n);
    std::vector<std::pair<int, int>> work;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n; ++j) parent[j] = j;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        work.clear();
        work.emplace_back(0, i);
        int merges = 0;
        while (!work.empty()) {
            auto [u, v] = work.back();
            work.pop_back();
            int ru = find(u), rv = find(v);
            if (ru == rv) continue;
            parent[ru] = rv;
            ++merges;
            for (u64 r : tuple) {
                const int* row = tab.row(r);
                work.emplace_back(row[u], row[v]);
            }
        }
        // merges == n-1 iff the closure is the whole point set
        if (merges < n - 1) return false;
    }
    return true;
}

}  // namespace detail

struct SubgrowthRow {
    int n = 0;
    u64 hom_trans = 0;  // |Hom_trans(Gamma, S_n)|
    u64 hom_prim = 0;   // |Hom_prim(Gamma, S_n)|
    u64 a_n = 0;        // hom_trans / (n-1)!
    u64 m_n = 0;        // hom_prim / (n-1)!, with m_1 = 0 by convention
};

/// a_n and m_n for Gamma = <x_1..x_d | w = 1> by enumerating solution tuples
/// in S_n^d and filtering on transitive / primitive image.
inline SubgrowthRow subgrowth_row(const Word& relator, int n,
                                  u64 budget = 100'000'000ull, int threads = 0) {
    if (n < 1 || n > 16) throw config_error("subgrowth: n out of range [1,16]");
    const int d = std::max(relator.arity(), 1);
    u64 count = 1;
    for (int i = 2; i <= n; ++i) count *= u64(i);
    u64 tuples = 1;
    for (int i = 0; i < d; ++i) {
        if (tuples > budget / count) throw budget_error("subgrowth enumeration budget exceeded");
        tuples *= count;
    }
    detail::PermTable tab(n);  // guard passed; n! * n table is affordable
    detail::FlatWord fw(relator);

    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 8);
    std::vector<std::pair<u64, u64>> partial(chunk_count, {0, 0});
    parallel_chunks(tuples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
        u64 trans = 0, prim = 0;
        std::vector<u64> tuple(d);
        u64 idx = begin;
        for (int i = 0; i < d; ++i) {
            tuple[i] = idx % tab.count;
            idx /= tab.count;
        }
        for (u64 t = begin; t < end; ++t) {
            if (detail::word_fixes_all(fw, tab, std::span<const u64>(tuple), n) &&
                detail::transitive(tab, std::span<const u64>(tuple), n)) {
                ++trans;
                if (detail::primitive(tab, std::span<const u64>(tuple), n)) ++prim;
            }
            for (int i = 0; i < d; ++i) {
                if (++tuple[i] < tab.count) break;
                tuple[i] = 0;
            }
        }
        partial[chunk] = {trans, prim};
    });

    SubgrowthRow row;
    row.n = n;
    for (auto& [t, p] : partial) {
        row.hom_trans += t;
        row.hom_prim += p;
    }
    u64 fact = 1;
    for (int i = 2; i < n; ++i) fact *= u64(i);
    if (row.hom_trans % fact != 0)
        throw invariant_error("(n-1)! does not divide |Hom_trans|; enumeration bug");
    if (row.hom_prim % fact != 0)
        throw invariant_error("(n-1)! does not divide |Hom_prim|; enumeration bug");
    row.a_n = row.hom_trans / fact;
    row.m_n = (n == 1) ? 0 : row.hom_prim / fact;
    return row;
}

inline u64 subgroup_count(const Word& relator, int n, u64 budget = 100'000'000ull,
                          int threads = 0) {
    return subgrowth_row(relator, n, budget, threads).a_n;
}

inline u64 maximal_subgroup_count(const Word& relator, int n, u64 budget = 100'000'000ull,
                                  int threads = 0) {
    return subgrowth_row(relator, n, budget, threads).m_n;
}

/// Subgroup generated by the tuple entries, by closure under right
/// multiplication; equality with |G| means the tuple generates.
inline bool generates(std::span<const u32> tuple, const FiniteGroup& G, const GroupOps& ops,
                      std::vector<unsigned char>& visited_scratch,
                      std::vector<u32>& queue_scratch) {
    auto& visited = visited_scratch;
    auto& queue = queue_scratch;
    visited.assign(G.order(), 0);
    queue.clear();
    visited[ops.id()] = 1;
    queue.push_back(ops.id());
    u64 size = 1;
    while (!queue.empty()) {
        u32 x = queue.back();
        queue.pop_back();
        for (u32 g : tuple) {
            u32 y = ops.mul(x, g);
            if (!visited[y]) {
                visited[y] = 1;
                ++size;
                queue.push_back(y);
            }
        }
    }
    return size == G.order();
}

enum class EpiMode { exact, monte_carlo };

struct EpimorphismReport {
    EpiMode mode = EpiMode::exact;
    u64 solutions = 0;      // tuples with w(tuple) = 1 examined
    u64 epimorphisms = 0;   // of those, tuples generating G
    double probability = 0;
    WilsonInterval wilson;  // meaningful in Monte Carlo mode
};

/// Probability that a uniform homomorphism Gamma -> G (uniform solution of
/// w = 1) is surjective.  Monte Carlo mode finds solutions by rejection and
/// fails if fewer than 100 are seen.
inline EpimorphismReport epimorphism_probability(const Word& w, const FiniteGroup& G,
                                                 EpiMode mode, u64 samples = 0, u64 seed = 0,
                                                 u64 budget = 200'000'000ull, int threads = 0) {
    const int d = std::max(w.arity(), 1);
    const u64 n = G.order();
    GroupOps ops(G);
    EpimorphismReport rep;
    rep.mode = mode;

    threads = resolve_threads(threads);
    const int chunk_count = std::max(1, threads * 4);
    std::vector<std::pair<u64, u64>> partial(chunk_count, {0, 0});
    if (mode == EpiMode::exact) {
        u64 tuples = 1;
        for (int i = 0; i < d; ++i) {
            if (tuples > budget / n) throw budget_error("epimorphism enumeration budget exceeded");
            tuples *= n;
        }
        parallel_chunks(tuples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
            u64 sol = 0, epi = 0;
            std::vector<u32> tuple(d);
            std::vector<unsigned char> visited;
            std::vector<u32> queue;
            u64 idx = begin;
            for (int i = 0; i < d; ++i) {
                tuple[i] = u32(idx % n);
                idx /= n;
            }
            for (u64 t = begin; t < end; ++t) {
                u32 val = w.evaluate<u32>(
                    std::span<const u32>(tuple), ops.id(),
                    [&](u32 a, u32 b) { return ops.mul(a, b); },
                    [&](u32 a) { return ops.inv(a); });
                if (val == ops.id()) {
                    ++sol;
                    if (generates(std::span<const u32>(tuple), G, ops, visited, queue)) ++epi;
                }
                for (int i = 0; i < d; ++i) {
                    if (++tuple[i] < n) break;
                    tuple[i] = 0;
                }
            }
            partial[chunk] = {sol, epi};
        });
    } else {
        parallel_chunks(samples, threads, chunk_count, [&](int chunk, u64 begin, u64 end) {
            u64 sol = 0, epi = 0;
            std::vector<u32> tuple(d);
            std::vector<unsigned char> visited;
            std::vector<u32> queue;
            for (u64 s = begin; s < end; ++s) {
                CounterRng rng(seed, s);
                for (int i = 0; i < d; ++i) tuple[i] = u32(rng.below(n));
                u32 val = w.evaluate<u32>(
                    std::span<const u32>(tuple), ops.id(),
                    [&](u32 a, u32 b) { return ops.mul(a, b); },
                    [&](u32 a) { return ops.inv(a); });
                if (val == ops.id()) {
                    ++sol;
                    if (generates(std::span<const u32>(tuple), G, ops, visited, queue)) ++epi;
                }
            }
            partial[chunk] = {sol, epi};
        });
    }
    for (auto& [s, e] : partial) {
        rep.solutions += s;
        rep.epimorphisms += e;
    }
    if (mode == EpiMode::monte_carlo && rep.solutions < 100)
        throw budget_error("epimorphism_probability: rejection sampling found fewer than 100 "
                           "solutions; increase samples");
    rep.probability = rep.solutions ? double(rep.epimorphisms) / double(rep.solutions) : 0.0;
    rep.wilson = wilson_interval(rep.epimorphisms, rep.solutions);
    return rep;
}

}  // namespace wordmap
