#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wordmap/fqlinalg.hpp"

using namespace wordmap;

TEST_CASE("polynomial factorization: examples", "[fqlinalg]") {
    auto F2 = Fq::get(2);
    auto fac = factor(PolyFq(F2, {1, 0, 1}));  // x^2 + 1 = (x+1)^2 over F2
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].first == PolyFq(F2, {1, 1}));
    CHECK(fac.factors[0].second == 2);

    auto F3 = Fq::get(3);
    CHECK(is_irreducible(PolyFq(F3, {1, 0, 1})));  // x^2 + 1 over F3
    auto fac3 = factor(PolyFq(F3, {1, 0, 1}));
    REQUIRE(fac3.factors.size() == 1);
    CHECK(fac3.factors[0].second == 1);

    auto F5 = Fq::get(5);
    auto fac5 = factor(PolyFq(F5, {0, 4, 0, 1}));  // x^3 - x = x (x-1) (x+1)
    REQUIRE(fac5.factors.size() == 3);
    for (const auto& [p, m] : fac5.factors) {
        CHECK(p.degree() == 1);
        CHECK(m == 1);
    }

    CHECK_THROWS_AS(factor(PolyFq::zero(F5)), config_error);
}

TEST_CASE("factorization re-multiplies to the input", "[fqlinalg]") {
    for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
        auto F = Fq::get(q);
        CounterRng rng(q * 1000 + 7, 0);
        for (int t = 0; t < 10000; ++t) {
            int deg = 1 + int(rng.below(12));
            std::vector<u32> c(size_t(deg) + 1);
            for (auto& v : c) v = u32(rng.below(q));
            if (c.back() == 0) c.back() = Fq::kOne;
            PolyFq f(F, std::move(c));
            auto fac = factor(f);
            PolyFq prod = PolyFq::constant(F, fac.unit);
            for (const auto& [p, m] : fac.factors) {
                REQUIRE(p.is_monic());
                for (int i = 0; i < m; ++i) prod = prod * p;
            }
            REQUIRE(prod == f);
        }
    }
}

TEST_CASE("jordan data: examples", "[fqlinalg]") {
    auto F2 = Fq::get(2);
    auto F3 = Fq::get(3);

    auto id3 = FqMat::identity(F2, 3);
    auto jd = jordan_data(id3);
    REQUIRE(jd.entries.size() == 1);
    CHECK(jd.entries[0].P == PolyFq(F2, {1, 1}));  // x + 1
    CHECK(jd.entries[0].blocks == std::vector<int>{1, 1, 1});
    CHECK(centralizer_dim(jd) == 9);

    FqMat j2(F2, 2);
    j2(0, 0) = 1;
    j2(0, 1) = 1;
    j2(1, 1) = 1;
    auto jd2 = jordan_data(j2);
    REQUIRE(jd2.entries.size() == 1);
    CHECK(jd2.entries[0].blocks == std::vector<int>{2});
    CHECK(centralizer_dim(jd2) == 2);

    // companion matrix of the irreducible x^2 + 1 over F3
    FqMat comp(F3, 2);
    comp(0, 1) = F3->neg(Fq::kOne);
    comp(1, 0) = 1;
    auto jdc = jordan_data(comp);
    REQUIRE(jdc.entries.size() == 1);
    CHECK(jdc.entries[0].P.degree() == 2);
    CHECK(jdc.entries[0].blocks == std::vector<int>{1});

    FqMat diag(F3, 2);
    diag(0, 0) = 1;
    diag(1, 1) = 2;
    CHECK(centralizer_dim(jordan_data(diag)) == 2);

    FqMat singular(F3, 2);
    singular(0, 0) = 1;
    CHECK_THROWS_AS(jordan_data(singular), config_error);
}

TEST_CASE("kernel dimensions", "[fqlinalg]") {
    auto F2 = Fq::get(2);
    FqMat j2(F2, 2);
    j2(0, 0) = 1;
    j2(0, 1) = 1;
    j2(1, 1) = 1;
    CHECK(kernel_dim(j2, PolyFq(F2, {1, 1})) == 1);       // ker (g + I)
    CHECK(kernel_dim(j2, min_poly(j2)) == 2);             // whole space
    CHECK(kernel_dim(j2, PolyFq(F2, {1})) == 0);          // unit polynomial
    // a polynomial coprime to the characteristic polynomial
    auto F3 = Fq::get(3);
    FqMat diag(F3, 2);
    diag(0, 0) = 1;
    diag(1, 1) = 2;
    CHECK(kernel_dim(diag, PolyFq(F3, {1, 0, 1})) == 0);  // x^2+1 has no eigenvalue here
}

TEST_CASE("centralizer formula vs linear system and brute force", "[fqlinalg]") {
    for (const char* spec : {"GL:2:2", "GL:2:3", "GL:3:2"}) {
        auto G = FiniteGroup::from_spec(spec);
        mpz_class q(static_cast<unsigned long>(G.field_q()));
        for (u64 g = 0; g < G.order(); ++g) {
            FqMat m = G.matrix(u32(g));
            auto jd = jordan_data(m);
            i64 dim = centralizer_dim(jd);
            REQUIRE(dim == centralizer_dim_linear_system(m));
            u64 order = centralizer_order_bruteforce(u32(g), G);
            mpz_class qdim;
            mpz_pow_ui(qdim.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(dim));
            REQUIRE(mpz_class(static_cast<unsigned long>(order)) < qdim);
        }
    }
}

TEST_CASE("brute-force centralizer orders", "[fqlinalg]") {
    auto GL22 = FiniteGroup::from_spec("GL:2:2");
    CHECK(centralizer_order_bruteforce(GL22.id(), GL22) == GL22.order());

    auto F2 = Fq::get(2);
    FqMat j2(F2, 2);
    j2(0, 0) = 1;
    j2(0, 1) = 1;
    j2(1, 1) = 1;
    CHECK(centralizer_order_bruteforce(GL22.encode_matrix(j2), GL22) == 2);

    auto GL23 = FiniteGroup::from_spec("GL:2:3");
    auto F3 = Fq::get(3);
    FqMat diag(F3, 2);
    diag(0, 0) = 1;
    diag(1, 1) = 2;
    CHECK(centralizer_order_bruteforce(GL23.encode_matrix(diag), GL23) == 4);
}

TEST_CASE("big kernel bound and experiment", "[fqlinalg]") {
    CHECK(big_kernel_bound(2, 1, 1, 3, 2) == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(big_kernel_bound(3, 2, 1, 1, 1) == Catch::Approx(81.0).epsilon(1e-12));  // vacuous
    CHECK(big_kernel_bound(5, 1, 2, 2, 1) >= 1.0);  // k = 1 is always vacuous
    CHECK_THROWS_AS(big_kernel_bound(2, 3, 1, 1, 1), config_error);

    auto GL42 = FiniteGroup::from_spec("GL:4:2");
    auto rep = big_kernel_experiment(Word::parse("x1"), GL42, 1, 2, 20000, 21);
    CHECK(rep.threshold == 4);
    CHECK(rep.bound >= 1.0);
    CHECK(rep.estimate <= 1.0);
    // ker Q(g) can only be everything when g is the identity (Q = x + 1)
    CHECK(rep.estimate <= 10.0 / 20160 + 0.01);
}

TEST_CASE("small centralizer experiment", "[fqlinalg]") {
    auto GL25 = FiniteGroup::from_spec("GL:2:5");
    // exhaustive: every centralizer has dim <= 4 <= 3*2
    auto rep = small_centralizer_experiment(Word::parse("x1"), GL25, 0, 3.0, 0);
    CHECK(rep.exhaustive);
    CHECK(rep.trials == GL25.order());
    CHECK(rep.probability == 1.0);

    // q^{c r} >= |G| makes the event certain
    auto rep2 = small_centralizer_experiment(Word::parse("x1^2"), GL25, 5000, 10.0, 3);
    CHECK(rep2.probability == 1.0);

    auto GL27 = FiniteGroup::from_spec("GL:2:7");
    auto rep3 = small_centralizer_experiment(Word::parse("x1^2"), GL27, 10000, 2.0, 1);
    CHECK(rep3.probability >= 0.0);
    CHECK(rep3.probability <= 1.0);
    CHECK(rep3.wilson.lower <= rep3.probability);
    CHECK(rep3.probability <= rep3.wilson.upper);
    // deterministic across thread counts
    auto rep4 = small_centralizer_experiment(Word::parse("x1^2"), GL27, 10000, 2.0, 1, 3);
    CHECK(rep3.hits == rep4.hits);

    CHECK_THROWS_AS(
        small_centralizer_experiment(Word::parse("x1"), FiniteGroup::from_spec("PSL2:5"), 10, 2.0, 1),
        config_error);
}

TEST_CASE("eq total-blocks for random matrix groups", "[fqlinalg]") {
    for (const char* spec : {"GL:2:4", "GL:2:5", "SL:2:7", "GL:3:3"}) {
        auto G = FiniteGroup::from_spec(spec);
        CounterRng rng(123, 0);
        for (int t = 0; t < 50; ++t) {
            u32 g = u32(rng.below(G.order()));
            auto jd = jordan_data(G.matrix(g));
            int total = 0;
            for (const auto& e : jd.entries)
                for (int b : e.blocks) total += b * e.P.degree();
            REQUIRE(total == G.mat_dim());
        }
    }
}
