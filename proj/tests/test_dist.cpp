#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wordmap/dist.hpp"

using namespace wordmap;

namespace {
mpq_class q(long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}
}  // namespace

TEST_CASE("exact distribution: identity word is uniform", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto d = exact_distribution(Word::parse("x1"), S3);
    for (u64 g = 0; g < 6; ++g) CHECK(d.exact_value(g) == mpq_class(1, 6));
}

TEST_CASE("exact distribution: commutator on S3 vs brute-force oracle", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto d = exact_distribution(Word::parse("[x1,x2]"), S3);
    CHECK(d.exact_value(S3.id()) == mpq_class(1, 2));
    // independent oracle: count [x,y] = g directly
    GroupOps ops(S3);
    std::vector<u64> counts(6, 0);
    for (u32 x = 0; x < 6; ++x)
        for (u32 y = 0; y < 6; ++y) {
            u32 v = ops.mul(ops.mul(ops.inv(x), ops.inv(y)), ops.mul(x, y));
            ++counts[v];
        }
    for (u64 g = 0; g < 6; ++g)
        CHECK(d.exact_value(g) == q(long(counts[g]), 36));
}

TEST_CASE("exact distribution: squares on S3", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto d = exact_distribution(Word::parse("x1^2"), S3);
    CHECK(d.exact_value(S3.id()) == q(4, 6));
}

TEST_CASE("exact distribution: budget guard", "[dist]") {
    auto S10 = FiniteGroup::from_spec("S:10");
    CHECK_THROWS_AS(exact_distribution(Word::parse("x1 x2"), S10), budget_error);
}

TEST_CASE("exact distribution is a class function", "[dist]") {
    CounterRng rng(9, 0);
    for (const char* spec : {"S:4", "A:4", "PSL2:5"}) {
        auto G = FiniteGroup::from_spec(spec);
        auto cc = conjugacy_classes(G);
        for (int t = 0; t < 3; ++t) {
            Word w = testutil::random_word(rng, 2, 6);
            auto d = exact_distribution(w, G);
            for (u64 g = 0; g < G.order(); ++g) {
                u32 rep = cc.classes[cc.class_of[g]].representative;
                REQUIRE(d.exact_value(g) == d.exact_value(rep));
            }
            // total mass exactly 1, elementwise and classwise
            mpz_class s = 0;
            for (const auto& v : d.numerators()) s += v;
            REQUIRE(s == d.denominator());
            mpq_class cs = 0;
            for (const auto& m : exact_class_masses(d, cc)) cs += m;
            REQUIRE(cs == 1);
        }
    }
}

TEST_CASE("parity support: even words land in A_n", "[dist]") {
    auto S4 = FiniteGroup::from_spec("S:4");
    for (const char* ws : {"x1^2 x2^2", "[x1,x2]", "x1^4"}) {
        Word w = Word::parse(ws);
        REQUIRE(w.parity() == 1);
        auto d = exact_distribution(w, S4);
        for (u64 g = 0; g < S4.order(); ++g)
            if (!S4.is_even(u32(g))) REQUIRE(d.exact_value(g) == 0);
    }
}

TEST_CASE("monte carlo: concentration and determinism", "[dist]") {
    auto S5 = FiniteGroup::from_spec("S:5");
    auto d = monte_carlo_distribution(Word::parse("x1"), S5, 1000000, 42);
    double maxdev = 0;
    for (u64 g = 0; g < 120; ++g) maxdev = std::max(maxdev, std::fabs(d.value(g) - 1.0 / 120));
    CHECK(maxdev < 5e-3);

    auto d2 = monte_carlo_distribution(Word::parse("x1"), S5, 1000000, 42);
    CHECK(d.probabilities() == d2.probabilities());  // bit-identical
    // independent of worker count
    auto d3 = monte_carlo_distribution(Word::parse("x1"), S5, 1000000, 42, 1);
    auto d4 = monte_carlo_distribution(Word::parse("x1"), S5, 1000000, 42, 3);
    CHECK(d3.probabilities() == d4.probabilities());
    // total within 1e-12 of 1
    CHECK(std::fabs(d.total() - 1.0) < 1e-12);
}

TEST_CASE("monte carlo approximates the exact commutator distribution", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto w = Word::parse("[x1,x2]");
    auto mc = monte_carlo_distribution(w, S3, 1000000, 7);
    CHECK(std::fabs(mc.value(S3.id()) - 0.5) < 0.005);

    // L1 gap shrinks like 3 sqrt(|G|/samples)
    for (const char* spec : {"S:3", "S:4", "A:4", "S:5"}) {
        auto G = FiniteGroup::from_spec(spec);
        auto exact = exact_distribution(w, G);
        auto est = monte_carlo_distribution(w, G, 1000000, 11);
        CHECK(lp_distance(est, exact, LpNorm::l1) < 3 * std::sqrt(double(G.order()) / 1e6));
    }
}

TEST_CASE("lp distances", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto u = uniform(S3);
    CHECK(lp_distance(u, u, LpNorm::l1) == 0.0);
    CHECK(lp_distance(u, u, LpNorm::l2) == 0.0);
    CHECK(lp_distance(u, u, LpNorm::linf) == 0.0);

    auto pm = point_mass(S3, S3.id());
    CHECK(lp_distance(pm, u, LpNorm::l1) == Catch::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(lp_distance(pm, u, LpNorm::linf) == Catch::Approx(5.0).epsilon(1e-12));
    // (|G| * sum of squares)^(1/2) = sqrt(6 * (25/36 + 5/36)) = sqrt(5)
    CHECK(lp_distance(pm, u, LpNorm::l2) == Catch::Approx(std::sqrt(5.0)).epsilon(1e-12));

    auto S4 = FiniteGroup::from_spec("S:4");
    CHECK_THROWS_AS(lp_distance(pm, uniform(S4), LpNorm::l1), config_error);
}

TEST_CASE("uniform_gamma", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto u1 = uniform_gamma(S3, 1);
    for (u64 g = 0; g < 6; ++g)
        CHECK(u1.exact_value(g) == (S3.is_even(u32(g)) ? mpq_class(1, 3) : mpq_class(0)));
    CHECK(exact_equal(uniform_gamma(S3, 0), uniform(S3)));
    CHECK_THROWS_AS(uniform_gamma(FiniteGroup::from_spec("A:4"), 1), config_error);
}

TEST_CASE("convolution identities", "[dist]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto u = uniform(S3);
    auto f = exact_distribution(Word::parse("x1^2"), S3);
    CHECK(exact_equal(convolve(f, u), u));
    CHECK(exact_equal(convolve(point_mass(S3, S3.id()), f), f));
    // disjoint product = convolution, exactly
    auto f2 = exact_distribution(Word::parse("x1^2 x2^2"), S3);
    CHECK(exact_equal(convolve(f, f), f2));
}

TEST_CASE("disjoint product distributions convolve, random pairs", "[dist]") {
    CounterRng rng(17, 0);
    auto S4 = FiniteGroup::from_spec("S:4");
    for (int t = 0; t < 5; ++t) {
        Word u = testutil::random_word(rng, 1, 5);
        Word v = testutil::random_word(rng, 1, 5);
        Word ws[] = {u, v};
        Word prod = Word::disjoint_product(ws);
        auto lhs = exact_distribution(prod, S4);
        auto rhs = convolve(exact_distribution(u, S4), exact_distribution(v, S4));
        CHECK(exact_equal(lhs, rhs));
    }
}

TEST_CASE("fix_tail: analytic bound and oracle", "[dist]") {
    // w = x1, n = 100, k = 5: bound = e^0.5 / 5!
    auto rep = fix_tail(Word::parse("x1"), 100, 5, 100000, 123);
    REQUIRE(rep.has_bound);
    CHECK(rep.bound == Catch::Approx(std::exp(0.5) / 120.0).epsilon(1e-9));
    CHECK(rep.bound == Catch::Approx(0.013739).margin(1e-5));

    // independent oracle: Pr[fix >= 5] for a uniform permutation of 100 points
    // via inclusion-exclusion (derangement counts)
    const int n = 100;
    std::vector<mpz_class> der(n + 1);
    der[0] = 1;
    der[1] = 0;
    for (int m = 2; m <= n; ++m) der[m] = mpz_class(m - 1) * (der[m - 1] + der[m - 2]);
    mpz_class fact = 1;
    for (int m = 2; m <= n; ++m) fact *= m;
    mpz_class hits = 0;
    for (int j = 5; j <= n; ++j) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), n, j);
        hits += binom * der[n - j];
    }
    mpq_class oracle(hits, fact);
    oracle.canonicalize();
    double oracle_d = oracle.get_d();
    CHECK(oracle_d == Catch::Approx(0.0036598).margin(1e-6));

    CHECK(rep.wilson.lower <= oracle_d);
    CHECK(oracle_d <= rep.wilson.upper);
    CHECK(rep.wilson.upper < rep.bound);
    CHECK_FALSE(rep.wilson_upper_exceeds_bound);

    // k = 0: certain event, bound >= 1
    auto rep0 = fix_tail(Word::parse("x1"), 100, 0, 1000, 5);
    CHECK(rep0.estimate == 1.0);
    REQUIRE(rep0.has_bound);
    CHECK(rep0.bound >= 1.0);

    // commutator, l = 4, n = 600, k = 256: bound 16 e^{2*256^2/(4096*600)}
    auto repc = fix_tail(Word::parse("[x1,x2]"), 600, 256, 10000, 9);
    REQUIRE(repc.has_bound);
    CHECK(repc.bound ==
          Catch::Approx(16.0 * std::exp(2.0 * 256 * 256 / (4096.0 * 600))).epsilon(1e-9));
    CHECK(repc.bound > 1.0);  // vacuous
    CHECK(repc.estimate < 0.01);

    CHECK_THROWS_AS(fix_tail(Word::parse("x1"), 10, 11, 10, 1), config_error);
}

TEST_CASE("fix_tail determinism across thread counts", "[dist]") {
    auto a = fix_tail(Word::parse("x1^2"), 50, 2, 20000, 77, 1);
    auto b = fix_tail(Word::parse("x1^2"), 50, 2, 20000, 77, 3);
    CHECK(a.hits == b.hits);
}

TEST_CASE("exact and monte carlo work without a cached mul table", "[dist]") {
    auto G = FiniteGroup::from_spec("S:7");  // order 5040, above the table limit
    auto d = exact_distribution(Word::parse("x1"), G);
    for (u64 g = 0; g < 20; ++g) CHECK(d.exact_value(g) == q(1, 5040));
    auto mc = monte_carlo_distribution(Word::parse("x1^2"), G, 20000, 5, 1);
    auto mc2 = monte_carlo_distribution(Word::parse("x1^2"), G, 20000, 5, 2);
    CHECK(mc.probabilities() == mc2.probabilities());
}
