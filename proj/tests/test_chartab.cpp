#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wordmap/chartab.hpp"

using namespace wordmap;

namespace {

std::vector<std::string> table_group_specs() {
    return {"S:3", "S:4", "A:4", "A:5", testutil::d4_spec(), "PSL2:5"};
}

void check_orthogonality(const CharacterTable& T) {
    const double n = double(T.G.order());
    const u32 k = T.k();
    for (u32 i = 0; i < k; ++i)
        for (u32 i2 = 0; i2 < k; ++i2) {
            cplx acc = 0;
            for (u32 j = 0; j < k; ++j)
                acc += double(T.classes.classes[j].size) * T.values[i][j] *
                       std::conj(T.values[i2][j]);
            cplx expect = (i == i2) ? cplx(n, 0) : cplx(0, 0);
            REQUIRE(std::abs(acc - expect) <= 1e-9 * n);
        }
    for (u32 j = 0; j < k; ++j)
        for (u32 j2 = 0; j2 < k; ++j2) {
            cplx acc = 0;
            for (u32 i = 0; i < k; ++i) acc += T.values[i][j] * std::conj(T.values[i][j2]);
            double target = (j == j2) ? n / double(T.classes.classes[j].size) : 0.0;
            REQUIRE(std::abs(acc - cplx(target, 0)) <=
                    1e-9 * n / double(T.classes.classes[j].size));
        }
}

}  // namespace

TEST_CASE("character table degrees", "[chartab]") {
    auto T3 = character_table(FiniteGroup::from_spec("S:3"));
    CHECK(T3.degrees == std::vector<i64>{1, 1, 2});

    auto T5 = character_table(FiniteGroup::from_spec("A:5"));
    CHECK(T5.degrees == std::vector<i64>{1, 3, 3, 4, 5});

    auto Tp = character_table(FiniteGroup::from_spec("PSL2:5"));
    CHECK(Tp.degrees == std::vector<i64>{1, 3, 3, 4, 5});

    auto T7 = character_table(FiniteGroup::from_spec("PSL2:7"));
    CHECK(T7.degrees == std::vector<i64>{1, 3, 3, 6, 7, 8});

    auto T4 = character_table(FiniteGroup::from_spec("S:4"));
    CHECK(T4.degrees == std::vector<i64>{1, 1, 2, 3, 3});
}

TEST_CASE("cyclic C4: linear characters are powers of i", "[chartab]") {
    auto C4 = FiniteGroup::from_spec(testutil::c4_spec());
    auto T = character_table(C4);
    REQUIRE(T.k() == 4);
    CHECK(T.degrees == std::vector<i64>{1, 1, 1, 1});
    bool found_i = false;
    for (u32 i = 0; i < 4; ++i)
        for (u32 j = 0; j < 4; ++j) {
            cplx v = T.values[i][j];
            // every value is a 4th root of unity
            REQUIRE(std::abs(std::abs(v) - 1.0) < 1e-9);
            REQUIRE(std::abs(v * v * v * v - cplx(1, 0)) < 1e-8);
            if (std::abs(v - cplx(0, 1)) < 1e-9) found_i = true;
        }
    CHECK(found_i);
}

TEST_CASE("orthogonality invariants on the test groups", "[chartab]") {
    for (const auto& spec : table_group_specs()) {
        auto T = character_table(FiniteGroup::from_spec(spec));
        check_orthogonality(T);
        i64 sum = 0;
        for (i64 d : T.degrees) sum += d * d;
        CHECK(sum == i64(T.G.order()));
        CHECK(T.degrees[0] == 1);  // trivial character first
        for (u32 j = 0; j < T.k(); ++j)
            CHECK(std::abs(T.values[0][j] - cplx(1, 0)) < 1e-9);
    }
}

TEST_CASE("fourier coefficients: uniform and point mass", "[chartab]") {
    auto S4 = FiniteGroup::from_spec("S:4");
    auto T = character_table(S4);
    auto fu = fourier_coefficients(uniform(S4), T);
    CHECK(std::abs(fu.a[0] - cplx(1, 0)) < 1e-9);
    for (u32 i = 1; i < T.k(); ++i) CHECK(std::abs(fu.a[i]) < 1e-9);

    auto fd = fourier_coefficients(point_mass(S4, S4.id()), T);
    for (u32 i = 0; i < T.k(); ++i)
        CHECK(std::abs(fd.a[i] - cplx(double(T.degrees[i]), 0)) < 1e-9);
}

TEST_CASE("fourier coefficients: commutator gives 1/chi(1)", "[chartab]") {
    for (const auto& spec : table_group_specs()) {
        auto G = FiniteGroup::from_spec(spec);
        auto T = character_table(G);
        auto p = exact_distribution(Word::parse("[x1,x2]"), G);
        auto fc = fourier_coefficients(p, T);
        for (u32 i = 0; i < T.k(); ++i)
            REQUIRE(std::abs(fc.a[i] - cplx(1.0 / double(T.degrees[i]), 0)) < 1e-8);
    }
}

TEST_CASE("reconstruct round trips", "[chartab]") {
    auto A5 = FiniteGroup::from_spec("A:5");
    auto T = character_table(A5);

    FourierCoefficients unit;
    unit.a.assign(T.k(), cplx(0, 0));
    unit.a[0] = 1;
    auto u = reconstruct(unit, T);
    for (u64 g = 0; g < A5.order(); ++g)
        CHECK(u.value(g) == Catch::Approx(1.0 / 60).margin(1e-12));

    auto p = exact_distribution(Word::parse("x1^2"), A5);
    auto rt = reconstruct(fourier_coefficients(p, T), T);
    for (u64 g = 0; g < A5.order(); ++g)
        REQUIRE(std::fabs(rt.value(g) - p.value(g)) < 1e-9);

    auto pd = point_mass(A5, A5.id());
    auto rtd = reconstruct(fourier_coefficients(pd, T), T);
    for (u64 g = 0; g < A5.order(); ++g)
        REQUIRE(std::fabs(rtd.value(g) - pd.value(g)) < 1e-9);

    CHECK(fourier_coefficients(p, T).a[0].real() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("multiplicativity for disjoint words", "[chartab]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    auto T3 = character_table(S3);
    CHECK(check_multiplicativity(Word::parse("x1"), Word::parse("x1"), S3, T3) < 1e-12);

    auto S4 = FiniteGroup::from_spec("S:4");
    auto T4 = character_table(S4);
    CHECK(check_multiplicativity(Word::parse("x1^2"), Word::parse("x1^3"), S4, T4) < 1e-8);

    auto A5 = FiniteGroup::from_spec("A:5");
    auto T5 = character_table(A5);
    CHECK(check_multiplicativity(Word::parse("[x1,x2]"), Word::parse("x1^2"), A5, T5) < 1e-8);
}

TEST_CASE("class convolution probability vs brute force", "[chartab]") {
    for (const char* spec : {"S:3", "S:4", "A:4", "A:5"}) {
        auto G = FiniteGroup::from_spec(spec);
        auto T = character_table(G);
        GroupOps ops(G);
        const auto& cc = T.classes;
        // collect class members
        std::vector<std::vector<u32>> members(cc.count());
        for (u64 g = 0; g < G.order(); ++g) members[cc.class_of[g]].push_back(u32(g));
        for (u32 c1 = 0; c1 < cc.count(); ++c1)
            for (u32 c2 = 0; c2 < cc.count(); ++c2) {
                // brute force over C1 x C2 for a few targets
                std::vector<u64> counts(G.order(), 0);
                for (u32 x : members[c1])
                    for (u32 y : members[c2]) ++counts[ops.mul(x, y)];
                const u64 pairs = u64(members[c1].size()) * members[c2].size();
                for (u32 g : {G.id(), members[c1][0], members[c2][0]}) {
                    double brute = double(counts[g]) / double(pairs);
                    double formula = class_convolution_probability(c1, c2, g, T);
                    REQUIRE(std::fabs(brute - formula) < 1e-9);
                }
            }
    }
}

TEST_CASE("class convolution probability: identity classes", "[chartab]") {
    auto S4 = FiniteGroup::from_spec("S:4");
    auto T = character_table(S4);
    u32 idc = T.classes.identity_class;
    CHECK(class_convolution_probability(idc, idc, S4.id(), T) == Catch::Approx(1.0).margin(1e-9));
    u32 other = T.classes.classes[1].representative;
    CHECK(class_convolution_probability(idc, idc, other, T) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("witten zeta", "[chartab]") {
    auto T3 = character_table(FiniteGroup::from_spec("S:3"));
    CHECK(witten_zeta(T3, 2.0) == Catch::Approx(2.25).epsilon(1e-12));
    CHECK(witten_zeta(T3, 0.0) == Catch::Approx(3.0).epsilon(1e-12));  // k(G)
    auto T5 = character_table(FiniteGroup::from_spec("A:5"));
    CHECK(witten_zeta(T5, 0.0) == Catch::Approx(5.0).epsilon(1e-12));
    CHECK(witten_zeta(T5, 2.0) ==
          Catch::Approx(1.0 + 2.0 / 9 + 1.0 / 16 + 1.0 / 25).epsilon(1e-12));
    CHECK(witten_zeta(T5, -1.0) == Catch::Approx(1 + 3 + 3 + 4 + 5).epsilon(1e-12));
}

TEST_CASE("sign sum equals gamma", "[chartab]") {
    auto S3 = FiniteGroup::from_spec("S:3");
    CHECK(sign_sum_exact(exact_distribution(Word::parse("x1^2"), S3)) == 1);
    CHECK(sign_sum_exact(exact_distribution(Word::parse("x1"), S3)) == 0);
    auto S4 = FiniteGroup::from_spec("S:4");
    CHECK(sign_sum_exact(exact_distribution(Word::parse("x1^2 x2^3"), S4)) == 0);
    CHECK_THROWS_AS(sign_sum(uniform(FiniteGroup::from_spec("A:4"))), config_error);
}

TEST_CASE("coefficient bound report over PSL2(q)", "[chartab]") {
    auto rows = coefficient_bound_report(Word::parse("x1"), {5, 7});
    for (const auto& r : rows) CHECK(r.max_abs_coefficient == Catch::Approx(1.0).margin(1e-9));

    auto comm_rows = coefficient_bound_report(Word::parse("[x1,x2]"), {5, 7});
    for (const auto& r : comm_rows) {
        CHECK(r.max_abs_coefficient == Catch::Approx(1.0).margin(1e-8));
        // a = 1/chi(1) makes every observed exponent exactly -1
        CHECK(r.max_observed_exponent == Catch::Approx(-1.0).margin(1e-6));
    }

    auto sq_rows = coefficient_bound_report(Word::parse("x1^2"), {5, 7, 9});
    std::string exponents = "observed exponents for x1^2 (q, max log|a|/log deg):";
    for (const auto& r : sq_rows) {
        CHECK(std::isfinite(r.max_abs_coefficient));
        CHECK(r.max_abs_coefficient >= 1.0 - 1e-9);  // trivial character contributes 1
        exponents += " (" + std::to_string(r.q) + ", " + std::to_string(r.max_observed_exponent) + ")";
    }
    WARN(exponents);
}

TEST_CASE("character ratio diagnostic", "[chartab]") {
    auto T3 = character_table(FiniteGroup::from_spec("S:3"));
    auto v3 = character_ratio_check(T3, 0.5);
    for (const auto& v : v3) CHECK(v.character != 0);  // trivial character never violates

    auto T6 = character_table(FiniteGroup::from_spec("S:6"));
    auto v6 = character_ratio_check(T6, 0.3);
    for (const auto& v : v6) {
        CHECK(v.character != 0);
        CHECK(v.abs_value > v.degree_bound);
    }
}

TEST_CASE("four disjoint squares on PSL2(q): Linf bound trend", "[chartab]") {
    auto rows = disjoint_power_linf_trend(Word::parse("x1^2"), 4, {5, 7, 9, 11});
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.linf_bound));
        CHECK(r.linf_bound >= 0.0);
    }
    // trend reported; finiteness asserted above
    std::string trend = "Linf bound trend (q, bound):";
    for (const auto& r : rows)
        trend += " (" + std::to_string(r.q) + ", " + std::to_string(r.linf_bound) + ")";
    WARN(trend);
}
