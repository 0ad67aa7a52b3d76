// Runs the primitivity certificate for the Z^2 walk at a small cutoff and
// prints the assembled bounds.  The mod-p chains need a cutoff on the order
// of p^2 to mix, so N = 400 is about the smallest cutoff that certifies;
// the production run uses N = 1000 (see the walk-cert subcommand).

#include <cstdio>

#include "wordmap/walk.hpp"

int main() {
    using namespace wordmap;
    auto cert = certificate(400, 60);
    std::printf("cutoff N = %d, prime cutoff = %d\n", cert.cutoff, cert.prime_cutoff);
    std::printf("min P_n for n < N: %s = %.6f at n = %d\n", cert.min_pn_fraction.c_str(),
                cert.min_pn, cert.min_pn_at);
    std::printf("mod-6 bound: %.6f\n", cert.mod6_bound);
    std::printf("prime bounds:");
    for (auto& [p, b] : cert.prime_bounds) std::printf(" a_%d<%.5f", p, b);
    std::printf("\nprime tail (finite): %.6f, integral tail: %.6f, return bound: %.6f\n",
                cert.prime_tail_finite, cert.integral_tail, cert.return_bound);
    std::printf("tail lower bound: %.6f; verdict: %s\n", cert.tail_lower_bound,
                cert.verdict ? "inf P_n > 1/3 CERTIFIED" : "not certified at this cutoff");
    return 0;
}
