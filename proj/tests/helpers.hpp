#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "wordmap/group.hpp"
#include "wordmap/rng.hpp"
#include "wordmap/word.hpp"

namespace testutil {

using namespace wordmap;

/// Writes a Cayley table file and returns the cayley:<path> group spec.
inline std::string write_cayley_file(const std::string& name,
                                     const std::vector<std::vector<int>>& table) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << table.size() << "\n";
    for (const auto& row : table) {
        for (size_t j = 0; j < row.size(); ++j) f << (j ? " " : "") << row[j];
        f << "\n";
    }
    return "cayley:" + path.string();
}

/// Dihedral group of order 8 as vertex permutations of a square, identity
/// first.
inline std::string d4_spec() {
    auto r = Permutation::cycle(4, {0, 1, 2, 3});
    auto s = Permutation(std::vector<int>{0, 3, 2, 1});
    std::vector<Permutation> elems;
    Permutation cur(4);
    for (int i = 0; i < 4; ++i) {
        elems.push_back(cur);
        cur = r * cur;
    }
    for (int i = 0; i < 4; ++i) elems.push_back(elems[i] * s);
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            Permutation p = elems[a] * elems[b];
            for (int i = 0; i < 8; ++i)
                if (elems[i] == p) {
                    table[a][b] = i;
                    break;
                }
        }
    return write_cayley_file("wordmap_test_d4.cayley", table);
}

inline std::string c4_spec() {
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) table[a][b] = (a + b) % 4;
    return write_cayley_file("wordmap_test_c4.cayley", table);
}

/// Random nontrivial reduced word with bounded arity and length.
inline Word random_word(CounterRng& rng, int max_arity, i64 max_length) {
    for (;;) {
        std::string text;
        int terms = 1 + int(rng.below(u64(max_length)));
        for (int t = 0; t < terms; ++t) {
            int var = 1 + int(rng.below(u64(max_arity)));
            int e = 1 + int(rng.below(3));
            if (rng.below(2)) e = -e;
            text += "x" + std::to_string(var) + "^" + std::to_string(e) + " ";
        }
        Word w = Word::parse(text);
        if (!w.trivial() && w.length() <= max_length) return w;
    }
}

}  // namespace testutil
