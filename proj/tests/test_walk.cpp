#include <catch2/catch_amalgamated.hpp>

#include "wordmap/walk.hpp"

using namespace wordmap;

TEST_CASE("walk grid: first steps", "[walk]") {
    WalkGridExact g(10);
    g.step();
    CHECK(g.primitive_probability() == 1);
    CHECK(g.probability(1, 0) == mpq_class(1, 4));
    g.step();
    CHECK(g.primitive_probability() == mpq_class(1, 2));
    CHECK(g.probability(0, 0) == mpq_class(1, 4));
    CHECK(g.probability(2, 0) == mpq_class(1, 16));
    CHECK(g.probability(1, 1) == mpq_class(1, 8));
    CHECK(g.total_mass() == 1);
}

TEST_CASE("walk grid: parity support and mass conservation", "[walk]") {
    WalkGridExact g(30);
    for (int n = 1; n <= 30; ++n) {
        g.step();
        REQUIRE(g.total_mass() == 1);
        // wrong-parity points carry no mass
        REQUIRE(g.probability(0, (n % 2 == 0) ? 1 : 0) == 0);
    }
}

TEST_CASE("interval mode: total mass encloses 1", "[walk]") {
    WalkGridInterval g(200);
    for (int n = 1; n <= 200; ++n) {
        g.step();
        REQUIRE(g.total_mass().contains(1.0));
    }
    ModChainInterval chain(6);
    for (int n = 1; n <= 500; ++n) {
        chain.step();
        REQUIRE(chain.total_mass().contains(1.0));
    }
}

TEST_CASE("rational and interval modes agree to n = 40", "[walk]") {
    WalkGridExact ge(40);
    WalkGridInterval gi(40);
    for (int n = 1; n <= 40; ++n) {
        ge.step();
        gi.step();
        for (int a = 0; a <= n; ++a)
            for (int b = (n - a) % 2; a + b <= n; b += 2) {
                double exact = ge.probability(a, b).get_d();
                Interval iv = gi.probability(a, b);
                REQUIRE(iv.lo <= exact);
                REQUIRE(exact <= iv.hi);
            }
        Interval p = gi.primitive_probability();
        double pe = ge.primitive_probability().get_d();
        REQUIRE(p.lo <= pe);
        REQUIRE(pe <= p.hi);
    }
}

TEST_CASE("monotonicity lemma holds exhaustively to n = 20", "[walk]") {
    WalkGridExact g(20);
    for (int n = 1; n <= 20; ++n) {
        g.step();
        // collect active points
        std::vector<std::pair<int, int>> pts;
        for (int a = 0; a <= n; ++a)
            for (int b = (n - a) % 2; a + b <= n; b += 2) pts.emplace_back(a, b);
        for (auto [a, b] : pts)
            for (auto [a2, b2] : pts) {
                if (a == a2 && b == b2) continue;
                // variant 1: componentwise domination (a,b) >= (a2,b2)
                if (a >= a2 && b >= b2)
                    REQUIRE(g.probability(a, b) <= g.probability(a2, b2));
                // variant 2: same coordinate sum, more unbalanced is smaller
                if (a + b == a2 + b2 && std::abs(a - b) >= std::abs(a2 - b2))
                    REQUIRE(g.probability(a, b) <= g.probability(a2, b2));
            }
    }
}

TEST_CASE("sublattice bound 4/(p+1)^2 for p in {3,5,7}, n <= 40", "[walk]") {
    WalkGridExact g(40);
    for (int n = 1; n <= 40; ++n) {
        g.step();
        for (int p : {3, 5, 7}) {
            mpq_class mass = g.sublattice_mass(p) - g.origin_probability();
            mpq_class bound(4, (p + 1) * (p + 1));
            bound.canonicalize();
            REQUIRE(mass < bound);
        }
    }
}

TEST_CASE("mod chain: target states and multiplier", "[walk]") {
    auto t6 = mod_target_states(6);
    CHECK(t6.size() == 12);
    int even = 0;
    for (auto [a, b] : t6)
        if ((a + b) % 2 == 0) ++even;
    CHECK(even == 10);
    CHECK(mod_target_multiplier(6) == 10);
    CHECK(mod_target_multiplier(5) == 1);
    CHECK(mod_target_multiplier(7) == 1);
    CHECK(mod_target_multiplier(2) == 1);
}

TEST_CASE("mod chain bounds at moderate cutoffs", "[walk]") {
    CHECK(mod_chain_bound(6, 200) == Catch::Approx(10.0 / 18).margin(1e-6));
    CHECK(mod_chain_bound(5, 200) == Catch::Approx(0.04).margin(1e-6));
    double b59_small = mod_chain_bound(59, 100);
    double b59_large = mod_chain_bound(59, 400);
    CHECK(b59_large <= b59_small);  // bound improves with the cutoff
}

TEST_CASE("grid mass is dominated by the chain bound (cross-check)", "[walk]") {
    WalkGridExact g(20);
    for (int n = 1; n <= 20; ++n) {
        g.step();
        // a_{n,6} on the grid: mass of (2Z)^2 union (3Z)^2 minus the origin
        mpq_class a6 = g.sublattice_mass(2) + g.sublattice_mass(3) - g.sublattice_mass(6) -
                       g.origin_probability();
        double bound = mod_chain_bound(6, n);
        REQUIRE(a6.get_d() <= bound + 1e-12);
    }
}

TEST_CASE("mod limit check", "[walk]") {
    auto r6 = mod_limit_check(6, true, 2000);
    CHECK(r6.closed_form == Catch::Approx(5.0 / 9).epsilon(1e-12));
    CHECK(r6.difference < 1e-3);

    auto r2o = mod_limit_check(2, false, 501);
    CHECK(r2o.closed_form == Catch::Approx(0.0).margin(1e-12));
    CHECK(r2o.chain_value < 1e-9);

    auto r2e = mod_limit_check(2, true, 500);
    CHECK(r2e.closed_form == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(r2e.difference < 1e-9);
}

TEST_CASE("prime tail", "[walk]") {
    CHECK(prime_tail(3) == mpq_class(1, 4));
    CHECK(prime_tail(5) == mpq_class(1, 9));
    CHECK_THROWS_AS(prime_tail(4), config_error);
    CHECK_THROWS_AS(prime_tail(9), config_error);
    CHECK_THROWS_AS(prime_tail(2), config_error);

    mpq_class s = prime_tail_sum(60, 10003, true);
    CHECK(s < mpq_class(132, 10000));
    CHECK(s > mpq_class(130, 10000));
    CHECK(prime_tail_sum(60, 10003, false) < s);  // sharper variant is smaller
}

TEST_CASE("return probability bound", "[walk]") {
    CHECK(return_probability_bound(2) == Catch::Approx(0.25).margin(1e-12));
    double b10 = return_probability_bound(10);
    double b100 = return_probability_bound(100);
    CHECK(b100 <= b10);
}

TEST_CASE("certificate at a weak cutoff is internally consistent", "[walk]") {
    auto cert = certificate(10, 60);
    CHECK(cert.cutoff == 10);
    CHECK(int(cert.pn.size()) == 9);
    CHECK(cert.pn[0] == 1.0);
    CHECK(cert.head_ok);  // P_n > 1/3 for n < 10
    // reassemble the tail bound from the reported pieces
    double total = 1.0 - cert.mod6_bound - cert.prime_tail_finite - cert.integral_tail -
                   cert.return_bound;
    for (auto& [p, b] : cert.prime_bounds) total -= b;
    CHECK(cert.tail_lower_bound == Catch::Approx(total).margin(1e-9));
    CHECK(cert.verdict == (cert.head_ok && cert.tail_ok));

    CHECK_THROWS_AS(certificate(1, 60), config_error);
    CHECK_THROWS_AS(certificate(10, 10), config_error);
}

TEST_CASE("multidimensional walk primitivity", "[walk]") {
    CHECK(multidim_primitivity(1, 2, 1000, 3) == 1.0);
    CHECK(multidim_primitivity(1, 5, 1000, 3) == 1.0);
    CHECK(multidim_primitivity(2, 2, 100000, 9) == Catch::Approx(0.5).margin(0.01));
    CHECK(multidim_primitivity(100, 8, 20000, 5) > 0.9);
    CHECK_THROWS_AS(multidim_primitivity(5, 1, 10, 1), config_error);
    // deterministic across thread counts
    CHECK(multidim_primitivity(20, 3, 50000, 11, 1) == multidim_primitivity(20, 3, 50000, 11, 3));
}

TEST_CASE("walk grid guards", "[walk]") {
    WalkGridExact g(5);
    g.run_to(5);
    CHECK_THROWS_AS(g.step(), budget_error);
    CHECK_THROWS_AS(WalkGridExact(0), config_error);
}
