// Builds the character table of A5, expands the commutator-word distribution
// in irreducible characters, and prints the Witten zeta values used in the
// L2/Linf bounds.

#include <cstdio>

#include "wordmap/chartab.hpp"

int main() {
    using namespace wordmap;
    auto G = FiniteGroup::from_spec("A:5");
    auto T = character_table(G);

    std::printf("A5: %u conjugacy classes, degrees ", T.k());
    for (i64 d : T.degrees) std::printf("%lld ", (long long)d);
    std::printf("\n");

    auto p = exact_distribution(Word::parse("[x1,x2]"), G);
    auto fc = fourier_coefficients(p, T);
    std::printf("Fourier coefficients of the commutator distribution (expect 1/chi(1)):\n");
    for (u32 i = 0; i < T.k(); ++i)
        std::printf("  chi_%u (degree %lld): a = %.6f\n", i, (long long)T.degrees[i],
                    fc.a[i].real());

    std::printf("zeta_G(2) = %.6f, zeta_G(1) = %.6f\n", witten_zeta(T, 2.0), witten_zeta(T, 1.0));
    std::printf("L1 distance of p_[x1,x2] from uniform: %.6f\n",
                lp_distance(p, uniform(G), LpNorm::l1));
    return 0;
}
