// Command-line front end: word-map distributions, Fourier analysis, the
// random-walk primitivity certificate, centralizer statistics, and Hom
// counting, with reproducible seeds and machine-readable artifacts.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "wordmap/chartab.hpp"
#include "wordmap/dist.hpp"
#include "wordmap/fqlinalg.hpp"
#include "wordmap/homcount.hpp"
#include "wordmap/io.hpp"
#include "wordmap/walk.hpp"

namespace {

using namespace wordmap;

constexpr const char* kVersion = "wordmap 0.1.0";

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
    int threads = 0;
};

void add_output_options(CLI::App* cmd, OutputOptions& oo, bool allow_csv = true) {
    cmd->add_option("--out", oo.out_path, "write the artifact to this path (default: stdout)");
    if (allow_csv)
        cmd->add_option("--format", oo.format, "artifact format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", oo.threads,
                    "worker cap (default: WORDMAP_THREADS or hardware concurrency)");
}

/// Writes the artifact, then a run manifest (config echo, version, wall time)
/// next to it (or to stderr when the artifact goes to stdout).  Artifact
/// bytes depend only on the config and seed, never on wall time or threads.
void emit(const OutputOptions& oo, const std::string& artifact, const json& config_echo,
          std::chrono::steady_clock::time_point t0) {
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json manifest;
    manifest["config"] = config_echo;
    manifest["version"] = kVersion;
    manifest["wall_time_ms"] = wall_ms;
    if (oo.out_path.empty()) {
        std::cout << artifact;
        if (artifact.empty() || artifact.back() != '\n') std::cout << '\n';
        std::cerr << manifest.dump() << "\n";
    } else {
        std::ofstream f(oo.out_path, std::ios::binary);
        if (!f) throw config_error("cannot open output file: " + oo.out_path);
        f << artifact;
        if (artifact.empty() || artifact.back() != '\n') f << '\n';
        std::ofstream m(oo.out_path + ".manifest.json");
        m << manifest.dump(2) << "\n";
    }
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw config_error("empty numeric list");
    return out;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"word-map distributions on finite groups and their Fourier analysis"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "flat key=value config file; keys are <subcommand>.<option>, e.g. "
                   "dist.word=x1");

    auto t0 = std::chrono::steady_clock::now();

    // ---- dist ----
    auto* dist_cmd = app.add_subcommand("dist", "exact or Monte Carlo word-map distribution");
    struct {
        std::string word, group, mode = "exact";
        u64 samples = 1000000, seed = 1, budget = 10'000'000'000ull;
        bool norms = false;
        OutputOptions oo;
    } dist_opt;
    dist_cmd->add_option("--word", dist_opt.word, "word, e.g. \"x1^2 x2^2\"")->required();
    dist_cmd->add_option("--group", dist_opt.group, "group spec, e.g. A:5")->required();
    dist_cmd->add_option("--mode", dist_opt.mode)->check(CLI::IsMember({"exact", "mc"}));
    dist_cmd->add_option("--samples", dist_opt.samples, "Monte Carlo sample count");
    dist_cmd->add_option("--seed", dist_opt.seed, "Monte Carlo seed");
    dist_cmd->add_option("--budget", dist_opt.budget, "exact-mode evaluation budget");
    dist_cmd->add_flag("--norms", dist_opt.norms, "include L1/L2/Linf distances to uniform");
    add_output_options(dist_cmd, dist_opt.oo);
    dist_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(dist_opt.group);
        Word w = Word::parse(dist_opt.word);
        Distribution d =
            dist_opt.mode == "exact"
                ? exact_distribution(w, G, dist_opt.budget, dist_opt.oo.threads)
                : monte_carlo_distribution(w, G, dist_opt.samples, dist_opt.seed,
                                           dist_opt.oo.threads);
        json config{{"subcommand", "dist"},   {"word", dist_opt.word},
                    {"group", dist_opt.group}, {"mode", dist_opt.mode},
                    {"samples", dist_opt.samples}, {"seed", dist_opt.seed},
                    {"norms", dist_opt.norms}};
        if (dist_opt.oo.format == "csv") {
            emit(dist_opt.oo, distribution_csv(d), config, t0);
            return;
        }
        auto cc = conjugacy_classes(G);
        json j = distribution_json(d, cc);
        if (dist_opt.norms) {
            auto u = uniform(G);
            j["norms"] = {{"l1", lp_distance(d, u, LpNorm::l1)},
                          {"l2", lp_distance(d, u, LpNorm::l2)},
                          {"linf", lp_distance(d, u, LpNorm::linf)}};
        }
        emit(dist_opt.oo, j.dump(2), config, t0);
    });

    // ---- fourier ----
    auto* fourier_cmd =
        app.add_subcommand("fourier", "character table and Fourier coefficients a_{w,chi}");
    struct {
        std::string word, group;
        bool table_only = false;
        u64 budget = 10'000'000'000ull;
        OutputOptions oo;
    } fourier_opt;
    fourier_cmd->add_option("--word", fourier_opt.word, "word (omit with --table-only)");
    fourier_cmd->add_option("--group", fourier_opt.group)->required();
    fourier_cmd->add_flag("--table-only", fourier_opt.table_only, "export the table only");
    fourier_cmd->add_option("--budget", fourier_opt.budget);
    add_output_options(fourier_cmd, fourier_opt.oo, false);
    fourier_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(fourier_opt.group);
        auto T = character_table(G);
        json j = character_table_json(T);
        json config{{"subcommand", "fourier"},
                    {"word", fourier_opt.word},
                    {"group", fourier_opt.group},
                    {"table_only", fourier_opt.table_only}};
        if (!fourier_opt.table_only) {
            if (fourier_opt.word.empty())
                throw config_error("fourier: --word required unless --table-only");
            Word w = Word::parse(fourier_opt.word);
            auto fc = fourier_coefficients(
                exact_distribution(w, G, fourier_opt.budget, fourier_opt.oo.threads), T);
            json coeffs = json::array();
            for (const auto& a : fc.a) coeffs.push_back(json::array({a.real(), a.imag()}));
            j["word"] = fourier_opt.word;
            j["coefficients"] = std::move(coeffs);
        }
        emit(fourier_opt.oo, j.dump(2), config, t0);
    });

    // ---- zeta ----
    auto* zeta_cmd = app.add_subcommand("zeta", "Witten zeta function values as CSV");
    struct {
        std::string group, s = "2";
        OutputOptions oo;
    } zeta_opt;
    zeta_cmd->add_option("--group", zeta_opt.group)->required();
    zeta_cmd->add_option("--s", zeta_opt.s, "comma-separated list of s values");
    add_output_options(zeta_cmd, zeta_opt.oo, false);
    zeta_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(zeta_opt.group);
        auto T = character_table(G);
        std::ostringstream os;
        os.precision(17);
        os << "s,zeta\n";
        for (double s : parse_double_list(zeta_opt.s)) os << s << "," << witten_zeta(T, s) << "\n";
        json config{{"subcommand", "zeta"}, {"group", zeta_opt.group}, {"s", zeta_opt.s}};
        emit(zeta_opt.oo, os.str(), config, t0);
    });

    // ---- walk-cert ----
    auto* cert_cmd =
        app.add_subcommand("walk-cert", "certificate that inf_n P_n > 1/3 for the Z^2 walk");
    struct {
        int cutoff = 1000, prime_cutoff = 60;
        OutputOptions oo;
    } cert_opt;
    cert_cmd->add_option("--cutoff", cert_opt.cutoff, "chain cutoff N");
    cert_cmd->add_option("--prime-cutoff", cert_opt.prime_cutoff, "largest per-prime chain bound");
    add_output_options(cert_cmd, cert_opt.oo, false);
    cert_cmd->callback([&] {
        auto cert = certificate(cert_opt.cutoff, cert_opt.prime_cutoff);
        json config{{"subcommand", "walk-cert"},
                    {"cutoff", cert_opt.cutoff},
                    {"prime_cutoff", cert_opt.prime_cutoff}};
        emit(cert_opt.oo, certificate_json(cert).dump(2), config, t0);
    });

    // ---- walk-pn ----
    auto* pn_cmd = app.add_subcommand("walk-pn", "P_n as exact fractions, CSV");
    struct {
        int max_n = 100;
        OutputOptions oo;
    } pn_opt;
    pn_cmd->add_option("--max-n", pn_opt.max_n, "largest n")->required();
    add_output_options(pn_cmd, pn_opt.oo, false);
    pn_cmd->callback([&] {
        if (pn_opt.max_n < 1) throw config_error("walk-pn: max-n must be >= 1");
        WalkGridExact grid(pn_opt.max_n);
        std::ostringstream os;
        os.precision(17);
        os << "n,pn_fraction,pn\n";
        for (int n = 1; n <= pn_opt.max_n; ++n) {
            grid.step();
            mpq_class p = grid.primitive_probability();
            os << n << "," << p.get_str() << "," << p.get_d() << "\n";
        }
        json config{{"subcommand", "walk-pn"}, {"max_n", pn_opt.max_n}};
        emit(pn_opt.oo, os.str(), config, t0);
    });

    // ---- centralizer ----
    auto* cent_cmd =
        app.add_subcommand("centralizer", "centralizer dimensions and orders over F_q");
    struct {
        std::string group;
        bool all = false;
        i64 element = -1;
        OutputOptions oo;
    } cent_opt;
    cent_cmd->add_option("--group", cent_opt.group, "GL:<n>:<q> or SL:<n>:<q>")->required();
    cent_cmd->add_flag("--all", cent_opt.all, "every element");
    cent_cmd->add_option("--element", cent_opt.element, "single element code");
    add_output_options(cent_cmd, cent_opt.oo, false);
    cent_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(cent_opt.group);
        if (!G.is_matrix_kind() || G.kind() == GroupKind::psl2)
            throw config_error("centralizer: GL/SL kinds only");
        std::ostringstream os;
        os << "element,centralizer_dim,centralizer_order\n";
        auto row = [&](u32 g) {
            os << g << "," << centralizer_dim(jordan_data(G.matrix(g))) << ","
               << centralizer_order_bruteforce(g, G) << "\n";
        };
        if (cent_opt.all)
            for (u64 g = 0; g < G.order(); ++g) row(u32(g));
        else if (cent_opt.element >= 0)
            row(u32(cent_opt.element));
        else
            throw config_error("centralizer: need --all or --element");
        json config{{"subcommand", "centralizer"},
                    {"group", cent_opt.group},
                    {"all", cent_opt.all},
                    {"element", cent_opt.element}};
        emit(cent_opt.oo, os.str(), config, t0);
    });

    // ---- small-centralizer ----
    auto* sc_cmd = app.add_subcommand(
        "small-centralizer", "Pr[|C_G(w(g))| <= q^(c r)] via the dimension proxy");
    struct {
        std::string word, group;
        double c = 2.0;
        u64 samples = 100000, seed = 1;
        OutputOptions oo;
    } sc_opt;
    sc_cmd->add_option("--word", sc_opt.word)->required();
    sc_cmd->add_option("--group", sc_opt.group)->required();
    sc_cmd->add_option("--c", sc_opt.c, "exponent multiplier")->required();
    sc_cmd->add_option("--samples", sc_opt.samples, "0 = exhaustive enumeration");
    sc_cmd->add_option("--seed", sc_opt.seed);
    add_output_options(sc_cmd, sc_opt.oo, false);
    sc_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(sc_opt.group);
        Word w = Word::parse(sc_opt.word);
        auto rep = small_centralizer_experiment(w, G, sc_opt.samples, sc_opt.c, sc_opt.seed,
                                                sc_opt.oo.threads);
        json j{{"word", sc_opt.word},
               {"group", sc_opt.group},
               {"c", rep.c},
               {"rank", rep.rank},
               {"exhaustive", rep.exhaustive},
               {"trials", rep.trials},
               {"hits", rep.hits},
               {"probability", rep.probability},
               {"wilson_lower", rep.wilson.lower},
               {"wilson_upper", rep.wilson.upper}};
        json config{{"subcommand", "small-centralizer"}, {"word", sc_opt.word},
                    {"group", sc_opt.group},             {"c", sc_opt.c},
                    {"samples", sc_opt.samples},         {"seed", sc_opt.seed}};
        emit(sc_opt.oo, j.dump(2), config, t0);
    });

    // ---- homcount ----
    auto* hom_cmd = app.add_subcommand("homcount", "|Hom(Gamma, G)| for Gamma = <x | w>");
    struct {
        std::string relator, group, epi;
        u64 samples = 1000000, seed = 1, budget = 10'000'000'000ull;
        OutputOptions oo;
    } hom_opt;
    hom_cmd->add_option("--relator", hom_opt.relator)->required();
    hom_cmd->add_option("--group", hom_opt.group)->required();
    hom_cmd->add_option("--epi", hom_opt.epi, "also estimate epimorphism probability")
        ->check(CLI::IsMember({"exact", "mc"}));
    hom_cmd->add_option("--samples", hom_opt.samples);
    hom_cmd->add_option("--seed", hom_opt.seed);
    hom_cmd->add_option("--budget", hom_opt.budget);
    add_output_options(hom_cmd, hom_opt.oo, false);
    hom_cmd->callback([&] {
        auto G = FiniteGroup::from_spec(hom_opt.group);
        Word w = Word::parse(hom_opt.relator);
        json j{{"relator", hom_opt.relator}, {"group", hom_opt.group}};
        j["hom_count"] = hom_count(w, G, hom_opt.budget, hom_opt.oo.threads);
        if (!hom_opt.epi.empty()) {
            auto rep = epimorphism_probability(
                w, G, hom_opt.epi == "exact" ? EpiMode::exact : EpiMode::monte_carlo,
                hom_opt.samples, hom_opt.seed, hom_opt.budget, hom_opt.oo.threads);
            j["epi"] = {{"mode", hom_opt.epi},
                        {"solutions", rep.solutions},
                        {"epimorphisms", rep.epimorphisms},
                        {"probability", rep.probability},
                        {"wilson_lower", rep.wilson.lower},
                        {"wilson_upper", rep.wilson.upper}};
        }
        json config{{"subcommand", "homcount"}, {"relator", hom_opt.relator},
                    {"group", hom_opt.group},   {"epi", hom_opt.epi},
                    {"samples", hom_opt.samples}, {"seed", hom_opt.seed}};
        emit(hom_opt.oo, j.dump(2), config, t0);
    });

    // ---- subgrowth ----
    auto* sub_cmd =
        app.add_subcommand("subgrowth", "a_n and m_n for Gamma = <x | w>, CSV per n");
    struct {
        std::string relator;
        int max_n = 6;
        u64 budget = 100'000'000ull;
        OutputOptions oo;
    } sub_opt;
    sub_cmd->add_option("--relator", sub_opt.relator)->required();
    sub_cmd->add_option("--max-n", sub_opt.max_n);
    sub_cmd->add_option("--budget", sub_opt.budget);
    add_output_options(sub_cmd, sub_opt.oo, false);
    sub_cmd->callback([&] {
        Word w = Word::parse(sub_opt.relator);
        std::ostringstream os;
        os.precision(17);
        // ratio column compares against the free group of rank d-1
        const int d = w.arity();
        const bool with_ratio = d >= 2;
        Word free_rel;
        if (with_ratio)
            free_rel = Word::parse("d=" + std::to_string(d - 1) + " x1 x1^-1");
        os << (with_ratio ? "n,a_n,m_n,ratio_to_free\n" : "n,a_n,m_n\n");
        for (int n = 1; n <= sub_opt.max_n; ++n) {
            auto row = subgrowth_row(w, n, sub_opt.budget, sub_opt.oo.threads);
            os << n << "," << row.a_n << "," << row.m_n;
            if (with_ratio) {
                auto base = subgrowth_row(free_rel, n, sub_opt.budget, sub_opt.oo.threads);
                os << "," << double(row.a_n) / double(base.a_n);
            }
            os << "\n";
        }
        json config{{"subcommand", "subgrowth"},
                    {"relator", sub_opt.relator},
                    {"max_n", sub_opt.max_n}};
        emit(sub_opt.oo, os.str(), config, t0);
    });

    // ---- fixtail ----
    auto* fix_cmd = app.add_subcommand(
        "fixtail", "Pr[fix(W_n) >= k] estimate with the analytic tail bound");
    struct {
        std::string word;
        int n = 100, k = 5;
        u64 samples = 1000000, seed = 1;
        OutputOptions oo;
    } fix_opt;
    fix_cmd->add_option("--word", fix_opt.word)->required();
    fix_cmd->add_option("--n", fix_opt.n, "degree of the symmetric group")->required();
    fix_cmd->add_option("--k", fix_opt.k, "fixed-point threshold")->required();
    fix_cmd->add_option("--samples", fix_opt.samples);
    fix_cmd->add_option("--seed", fix_opt.seed);
    add_output_options(fix_cmd, fix_opt.oo, false);
    fix_cmd->callback([&] {
        Word w = Word::parse(fix_opt.word);
        auto rep = fix_tail(w, fix_opt.n, fix_opt.k, fix_opt.samples, fix_opt.seed,
                            fix_opt.oo.threads);
        json j{{"word", fix_opt.word},
               {"n", rep.n},
               {"k", rep.k},
               {"word_length", rep.word_length},
               {"samples", rep.samples},
               {"hits", rep.hits},
               {"estimate", rep.estimate},
               {"wilson_lower", rep.wilson.lower},
               {"wilson_upper", rep.wilson.upper},
               {"has_bound", rep.has_bound},
               {"bound", rep.bound},
               {"wilson_upper_exceeds_bound", rep.wilson_upper_exceeds_bound}};
        json config{{"subcommand", "fixtail"}, {"word", fix_opt.word}, {"n", fix_opt.n},
                    {"k", fix_opt.k},          {"samples", fix_opt.samples},
                    {"seed", fix_opt.seed}};
        emit(fix_opt.oo, j.dump(2), config, t0);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // any command-line/config problem is a config error
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const wordmap::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const wordmap::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const wordmap::invariant_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
