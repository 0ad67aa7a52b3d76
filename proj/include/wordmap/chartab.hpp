#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <vector>

#include "wordmap/dist.hpp"

namespace wordmap {

using cplx = std::complex<double>;

/// Complex character table: values[i][j] = chi_i on class j, chi_0 trivial,
/// degrees exact integers.  Rows after the trivial one are ordered by
/// ascending degree, then lexicographically on rounded values.
struct CharacterTable {
    FiniteGroup G;
    ConjugacyClasses classes;
    std::vector<i64> degrees;
    std::vector<std::vector<cplx>> values;
    std::vector<u32> inverse_class;  // class index of the inverse class

    u32 k() const { return u32(degrees.size()); }
    /// chi_i(g^-1) for g in class j.
    cplx value_at_inverse(u32 i, u32 j) const { return values[i][inverse_class[j]]; }
};

namespace detail {

inline double round6(double x) { return std::round(x * 1e6) / 1e6; }

inline bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        double ar = round6(a[i].real()), br = round6(b[i].real());
        if (ar != br) return ar < br;
        double ai = round6(a[i].imag()), bi = round6(b[i].imag());
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace detail

/// Character table via the class-algebra method: a random complex combination
/// of the class-multiplication matrices is diagonalized; its eigenvectors are
/// the central characters, which are normalized to irreducible characters by
/// orthogonality.  The combination is retried (deterministically from `seed`)
/// until all eigenvalues separate.
inline CharacterTable character_table(const FiniteGroup& G, u32 class_guard = 300,
                                      u64 seed = 0xd1c5) {
    auto cc = conjugacy_classes(G);
    const u32 k = cc.count();
    if (k > class_guard)
        throw budget_error("class count " + std::to_string(k) + " exceeds guard " +
                           std::to_string(class_guard));
    const u64 n = G.order();
    GroupOps ops(G);

    // inv_class[j]: class of rep_j^{-1}
    std::vector<u32> inv_class(k);
    for (u32 j = 0; j < k; ++j) inv_class[j] = cc.class_of[ops.inv(cc.classes[j].representative)];

    const u32 j0 = cc.identity_class;
    Eigen::MatrixXcd V;
    bool ok = false;
    std::string last_failure;
    for (int trial = 0; trial < 16 && !ok; ++trial) {
        CounterRng rng(seed, u64(trial));
        std::vector<cplx> coeff(k);
        for (u32 i = 0; i < k; ++i)
            coeff[i] = cplx(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);

        // M(j, l) = sum_i coeff_i * a_{ijl}, where a_{ijl} counts x in C_i
        // with x^{-1} r_l in C_j.
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k, k);
        for (u32 l = 0; l < k; ++l) {
            const u32 rl = cc.classes[l].representative;
            for (u64 x = 0; x < n; ++x) {
                u32 j = cc.class_of[ops.mul(ops.inv(u32(x)), rl)];
                M(j, l) += coeff[cc.class_of[x]];
            }
        }

        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M);
        if (solver.info() != Eigen::Success) {
            last_failure = "eigen-decomposition did not converge";
            continue;
        }
        auto lambda = solver.eigenvalues();
        double scale = 0;
        for (u32 i = 0; i < k; ++i) scale = std::max(scale, std::abs(lambda[i]));
        double min_gap = std::numeric_limits<double>::infinity();
        for (u32 a = 0; a < k; ++a)
            for (u32 b = a + 1; b < k; ++b)
                min_gap = std::min(min_gap, std::abs(lambda[a] - lambda[b]));
        if (k > 1 && min_gap < 1e-8 * std::max(1.0, scale)) {
            last_failure = "eigenvalues failed to separate";
            continue;
        }
        V = solver.eigenvectors();
        ok = true;
        for (u32 c = 0; c < k; ++c)
            if (std::abs(V.col(c)[j0]) < 1e-10 * V.col(c).norm()) {
                ok = false;
                last_failure = "eigenvector vanishes on the identity class";
                break;
            }
    }
    if (!ok)
        throw invariant_error("character table: class-algebra diagonalization failed (" +
                              last_failure + ")");

    // Normalize each eigenvector to a central character, recover degrees, then
    // the character values chi(C_j) = omega_j * chi(1) / |C_j|.
    std::vector<std::vector<cplx>> rows(k, std::vector<cplx>(k));
    std::vector<i64> degs(k);
    for (u32 c = 0; c < k; ++c) {
        std::vector<cplx> omega(k);
        const cplx norm = V.col(c)[j0];
        for (u32 j = 0; j < k; ++j) omega[j] = V.col(c)[j] / norm;
        double s = 0;
        for (u32 j = 0; j < k; ++j) s += std::norm(omega[j]) / double(cc.classes[j].size);
        const double deg = std::sqrt(double(n) / s);
        const i64 deg_int = llround(deg);
        if (std::abs(deg - double(deg_int)) > 1e-6 * std::max<double>(1.0, deg) || deg_int < 1)
            throw invariant_error(
                "character table: non-integral degree from class-algebra eigenvector " +
                std::to_string(c) + " (value " + std::to_string(deg) + ")");
        degs[c] = deg_int;
        for (u32 j = 0; j < k; ++j)
            rows[c][j] = omega[j] * double(deg_int) / double(cc.classes[j].size);
    }

    // order: trivial first, then (degree, lex on rounded values)
    std::vector<u32> order(k);
    std::iota(order.begin(), order.end(), 0);
    auto is_trivial = [&](u32 c) {
        if (degs[c] != 1) return false;
        for (u32 j = 0; j < k; ++j)
            if (std::abs(rows[c][j] - cplx(1, 0)) > 1e-6) return false;
        return true;
    };
    std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
        bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (degs[a] != degs[b]) return degs[a] < degs[b];
        return detail::lex_less(rows[a], rows[b]);
    });

    CharacterTable T{G, std::move(cc), {}, {}, std::move(inv_class)};
    T.degrees.resize(k);
    T.values.resize(k);
    for (u32 i = 0; i < k; ++i) {
        T.degrees[i] = degs[order[i]];
        T.values[i] = std::move(rows[order[i]]);
    }

    // construction postconditions
    i64 sum_sq = 0;
    for (i64 d : T.degrees) sum_sq += d * d;
    if (sum_sq != i64(n)) throw invariant_error("character table: sum of squared degrees != |G|");
    for (u32 i = 0; i < k; ++i)
        for (u32 i2 = i; i2 < k; ++i2) {
            cplx acc = 0;
            for (u32 j = 0; j < k; ++j)
                acc += double(T.classes.classes[j].size) * T.values[i][j] *
                       std::conj(T.values[i2][j]);
            cplx expect = (i == i2) ? cplx(double(n), 0) : cplx(0, 0);
            if (std::abs(acc - expect) > 1e-9 * double(n))
                throw invariant_error("character table: row orthogonality residual too large");
        }
    return T;
}

struct FourierCoefficients {
    std::vector<cplx> a;  // indexed like the table's characters
};

/// a_chi = sum_g p(g) chi(g^-1), computed classwise.
inline FourierCoefficients fourier_coefficients(const Distribution& p, const CharacterTable& T) {
    if (!p.group().same_group(T.G)) throw config_error("fourier_coefficients: group mismatch");
    auto mass = class_masses(p, T.classes);
    FourierCoefficients fc;
    fc.a.assign(T.k(), cplx(0, 0));
    for (u32 i = 0; i < T.k(); ++i)
        for (u32 j = 0; j < T.k(); ++j) fc.a[i] += mass[j] * T.value_at_inverse(i, j);
    return fc;
}

/// p(g) = |G|^-1 sum_chi a_chi chi(g); inverse of fourier_coefficients on
/// class functions.
inline Distribution reconstruct(const FourierCoefficients& fc, const CharacterTable& T) {
    const u64 n = T.G.order();
    std::vector<cplx> per_class(T.k(), cplx(0, 0));
    for (u32 j = 0; j < T.k(); ++j) {
        for (u32 i = 0; i < T.k(); ++i) per_class[j] += fc.a[i] * T.values[i][j];
        per_class[j] /= double(n);
        if (std::abs(per_class[j].imag()) > 1e-9)
            throw invariant_error("reconstruct: non-real value on a class");
    }
    std::vector<double> prob(n);
    for (u64 g = 0; g < n; ++g) prob[g] = per_class[T.classes.class_of[g]].real();
    return Distribution::empirical(T.G, std::move(prob), 0);
}

/// max_chi | a_{w1 w2, chi} - a_{w1, chi} a_{w2, chi} / chi(1) | for the
/// disjoint product of w1 and w2, from exact distributions.
inline double check_multiplicativity(const Word& w1, const Word& w2, const FiniteGroup& G,
                                     const CharacterTable& T,
                                     u64 budget = 10'000'000'000ull, int threads = 0) {
    Word ws[] = {w1, w2};
    Word w = Word::disjoint_product(ws);
    auto a1 = fourier_coefficients(exact_distribution(w1, G, budget, threads), T);
    auto a2 = fourier_coefficients(exact_distribution(w2, G, budget, threads), T);
    auto a12 = fourier_coefficients(exact_distribution(w, G, budget, threads), T);
    double dev = 0;
    for (u32 i = 0; i < T.k(); ++i)
        dev = std::max(dev, std::abs(a12.a[i] - a1.a[i] * a2.a[i] / double(T.degrees[i])));
    return dev;
}

/// p(C1, C2, g): probability that x1 x2 = g for uniform independent x_i in C_i,
/// by the character-sum formula.
inline double class_convolution_probability(u32 c1, u32 c2, u32 g, const CharacterTable& T) {
    cplx acc = 0;
    const u32 jg = T.classes.class_of[g];
    for (u32 i = 0; i < T.k(); ++i)
        acc += T.values[i][c1] * T.values[i][c2] * T.value_at_inverse(i, jg) /
               double(T.degrees[i]);
    acc /= double(T.G.order());
    if (std::abs(acc.imag()) > 1e-9)
        throw invariant_error("class convolution probability came out non-real");
    return acc.real();
}

/// zeta_G(s) = sum over irreducible characters of chi(1)^{-s}.
inline double witten_zeta(const CharacterTable& T, double s) {
    double z = 0;
    for (i64 d : T.degrees) z += std::pow(double(d), -s);
    return z;
}

/// sum_g p(g) sgn(g) on an S_n-kind group, exactly (equals gamma(w) for exact
/// word distributions).
inline mpq_class sign_sum_exact(const Distribution& p) {
    const FiniteGroup& G = p.group();
    if (G.kind() != GroupKind::symmetric)
        throw config_error("sign_sum requires a symmetric-kind group");
    if (!p.is_exact()) throw config_error("sign_sum_exact needs an exact distribution");
    mpz_class acc = 0;
    for (u64 g = 0; g < G.order(); ++g)
        acc += G.is_even(u32(g)) ? p.numerators()[g] : -p.numerators()[g];
    mpq_class q(acc, p.denominator());
    q.canonicalize();
    return q;
}

inline double sign_sum(const Distribution& p) {
    const FiniteGroup& G = p.group();
    if (G.kind() != GroupKind::symmetric)
        throw config_error("sign_sum requires a symmetric-kind group");
    double acc = 0;
    for (u64 g = 0; g < G.order(); ++g) acc += G.is_even(u32(g)) ? p.value(g) : -p.value(g);
    return acc;
}

struct CoefficientBoundRow {
    u64 q = 0;
    double max_abs_coefficient = 0;
    // max over characters of degree > 1 of log|a_{w,chi}| / log chi(1);
    // -infinity when every such coefficient vanishes.  Reported, never
    // asserted against any conjectured exponent.
    double max_observed_exponent = -std::numeric_limits<double>::infinity();
};

/// max_chi |a_{w,chi}| over PSL2(q) for each q, with the observed exponents,
/// for empirical inspection of the boundedness of Fourier coefficients.
inline std::vector<CoefficientBoundRow> coefficient_bound_report(
    const Word& w, const std::vector<u64>& qs, u64 budget = 10'000'000'000ull, int threads = 0) {
    std::vector<CoefficientBoundRow> rows;
    for (u64 q : qs) {
        auto G = FiniteGroup::from_spec("PSL2:" + std::to_string(q));
        auto T = character_table(G);
        auto fc = fourier_coefficients(exact_distribution(w, G, budget, threads), T);
        CoefficientBoundRow row;
        row.q = q;
        for (u32 i = 0; i < T.k(); ++i) {
            double av = std::abs(fc.a[i]);
            row.max_abs_coefficient = std::max(row.max_abs_coefficient, av);
            if (T.degrees[i] > 1 && av > 0)
                row.max_observed_exponent = std::max(
                    row.max_observed_exponent, std::log(av) / std::log(double(T.degrees[i])));
        }
        rows.push_back(row);
    }
    return rows;
}

struct RatioViolation {
    u32 character = 0;
    u32 class_index = 0;
    double abs_value = 0;
    double degree_bound = 0;
};

/// Diagnostic scan of |chi(g)| <= chi(1)^{1-eps/3} over classes with
/// fix(g) <= n^{1-eps}.  Violations are expected at small n and only reported.
inline std::vector<RatioViolation> character_ratio_check(const CharacterTable& T, double eps) {
    if (!T.G.is_permutation_kind())
        throw config_error("character_ratio_check requires a symmetric or alternating kind");
    const int n = T.G.degree();
    const double fix_threshold = std::pow(double(n), 1.0 - eps);
    std::vector<RatioViolation> out;
    for (u32 j = 0; j < T.k(); ++j) {
        int f = T.G.permutation(T.classes.classes[j].representative).fixed_points();
        if (double(f) > fix_threshold) continue;
        for (u32 i = 0; i < T.k(); ++i) {
            double bound = std::pow(double(T.degrees[i]), 1.0 - eps / 3.0);
            double v = std::abs(T.values[i][j]);
            if (v > bound + 1e-9) out.push_back({i, j, v, bound});
        }
    }
    return out;
}

struct LinfTrendRow {
    u64 q = 0;
    double linf_bound = 0;  // sum_{chi != 1} |a_{w,chi}| chi(1)
};

/// L^infinity bound trend for the disjoint product of `copies` copies of w on
/// PSL2(q): multiplicativity gives a_{prod,chi} = a_{w,chi}^copies / chi(1)^{copies-1}.
inline std::vector<LinfTrendRow> disjoint_power_linf_trend(const Word& w, int copies,
                                                           const std::vector<u64>& qs,
                                                           u64 budget = 10'000'000'000ull,
                                                           int threads = 0) {
    std::vector<LinfTrendRow> rows;
    for (u64 q : qs) {
        auto G = FiniteGroup::from_spec("PSL2:" + std::to_string(q));
        auto T = character_table(G);
        auto fc = fourier_coefficients(exact_distribution(w, G, budget, threads), T);
        double bound = 0;
        for (u32 i = 0; i < T.k(); ++i) {
            if (std::abs(fc.a[i] - cplx(1, 0)) < 1e-9 && T.degrees[i] == 1 && i == 0)
                continue;  // trivial character
            double a_prod = std::pow(std::abs(fc.a[i]), copies) /
                            std::pow(double(T.degrees[i]), copies - 1);
            bound += a_prod * double(T.degrees[i]);
        }
        rows.push_back({q, bound});
    }
    return rows;
}

}  // namespace wordmap
