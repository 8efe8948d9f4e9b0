// Command-line front end: exact computations on finite Sullivan models.
//
// Exit codes: 0 success, 1 assertion/corpus mismatch, 2 input error,
// 3 resource cap hit.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sullivan/sullivan.hpp"

using namespace sullivan;

namespace {

struct Options {
    bool machine = false;
    unsigned long long cap = kDefaultBasisCap;
};

void line(const std::string& key, const std::string& value) {
    std::cout << key << " = " << value << "\n";
}
void line(const std::string& key, long value) {
    std::cout << key << " = " << value << "\n";
}
void line(const std::string& key, bool value) {
    std::cout << key << " = " << (value ? "true" : "false") << "\n";
}

SullivanModel load_model(const std::string& path) {
    return parse_model(slurp(path));
}

void banner(const Options& opt, const std::string& text) {
    if (!opt.machine) std::cout << "# " << text << "\n";
}

int cmd_check(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    StructureReport rep = check_differential(m);
    banner(opt, "structure of " + path);
    line("d2zero", rep.d_squared_zero);
    line("minimal", rep.minimal);
    line("nilpotent", rep.nilpotent);
    for (const auto& g : rep.d_squared_failures)
        line("d2_failure", g);
    if (rep.witness_order && !opt.machine) {
        std::cout << "# admissible order:";
        for (GenId g : *rep.witness_order) std::cout << " " << m.gens().name(g);
        std::cout << "\n";
    }
    return 0;
}

int cmd_betti(const Options& opt, const std::string& path, int max_degree,
              bool have_max) {
    SullivanModel m = load_model(path);
    EllipticityReport er = is_elliptic(m);
    if (!have_max) {
        if (!er.elliptic)
            throw ContractError("model is not elliptic; give --max-degree");
        max_degree = formal_dimension(m, er.evidence());
    }
    BettiTable bt = betti_table(m, max_degree, er.evidence(), opt.cap);
    banner(opt, "betti numbers of " + path);
    for (int n = 0; n <= bt.max_degree; ++n)
        if (bt.b[n] != 0) line("betti[" + std::to_string(n) + "]", bt.b[n]);
    line("total", bt.total);
    line("complete", bt.complete);
    return 0;
}

int cmd_pure(const Options&, const std::string& path) {
    SullivanModel m = load_model(path);
    PureModel pm = associated_pure(m);
    std::cout << print_model(pm.model);
    return 0;
}

int cmd_elliptic(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    EllipticityReport er = is_elliptic(m);
    banner(opt, "ellipticity of " + path);
    line("elliptic", er.elliptic);
    line("quotient_dim",
         er.quotient_dim ? std::to_string(*er.quotient_dim) : "inf");
    for (const auto& [var, power] : er.witnesses)
        line("witness[" + var + "]", power);
    if (!opt.machine)
        for (const auto& s : er.groebner_printed) std::cout << "# basis: " << s << "\n";
    return 0;
}

int cmd_split(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    try {
        TwoStageDecomposition ts = two_stage_split(m);
        banner(opt, "two-stage decomposition of " + path);
        line("two_stage", true);
        line("dimU_even", static_cast<long>(ts.q));
        line("dimV", static_cast<long>(ts.r));
        if (!opt.machine) {
            std::cout << "# U:";
            for (GenId g : ts.u) std::cout << " " << m.gens().name(g);
            std::cout << "\n# V:";
            for (GenId g : ts.v) std::cout << " " << m.gens().name(g);
            std::cout << "\n";
        }
    } catch (const NotTwoStageError& e) {
        line("two_stage", false);
        if (!opt.machine) std::cout << "# " << e.what() << "\n";
    }
    return 0;
}

int cmd_maximalize(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    TwoStageDecomposition ts = two_stage_split(m);
    MaximalityAnalysis mx = maximality(m, ts);
    banner(opt, "maximality of " + path);
    line("maximal", mx.maximal_input);
    line("dimV", static_cast<long>(ts.r));
    line("repaired.dimV", static_cast<long>(mx.repaired_decomp.r));
    if (!mx.maximal_input) {
        if (!opt.machine) {
            std::cout << "# repaired model:\n" << print_model(mx.repaired);
            std::cout << "# isomorphism onto the original:\n";
            for (GenId g = 0; g < m.generator_count(); ++g)
                std::cout << "#   " << m.gens().name(g) << " -> "
                          << mx.repair->values[g].str() << "\n";
        }
    }
    return 0;
}

int cmd_matrix(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    TwoStageDecomposition ts = two_stage_split(m);
    QuadraticBlockMatrix qb = quadratic_block_matrix(m, ts);
    banner(opt, "quadratic block matrix of " + path);
    line("p", static_cast<long>(qb.p));
    line("r", static_cast<long>(qb.r));
    line("skew_rank", qb.rank);
    line("left_inverse", qb.left_inverse_exists);
    if (!opt.machine) {
        for (int k = 0; k < qb.r; ++k) {
            std::cout << "# M^" << (k + 1) << ":\n";
            for (const auto& row : qb.blocks[k]) {
                std::cout << "#  ";
                for (const auto& x : row) std::cout << " " << x.get_str();
                std::cout << "\n";
            }
        }
    }
    return 0;
}

int cmd_hypotheses(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    TwoStageDecomposition ts = two_stage_split(m);
    HypothesisReport hyp = hypothesis_check(m, ts);
    banner(opt, "theorem hypotheses for " + path);
    line("hyp.pure", hyp.pure);
    line("hyp.odd_only", hyp.odd_only);
    line("hyp.quadratic", hyp.quadratic_differential);
    line("hyp.u_even_single_degree", hyp.u_even_single_degree);
    line("hyp.A", hyp.condition_a);
    line("hyp.B", hyp.condition_b);
    line("hyp.stable_separated", hyp.stable_separated);
    line("chi_pi", static_cast<long>(hyp.chi_pi));
    if (!opt.machine && hyp.stable_params) {
        auto [r, s, t, u] = *hyp.stable_params;
        std::cout << "# stable-separated with r=" << r << " s=" << s
                  << " t=" << t << " u=" << u << "\n";
    }
    return 0;
}

int cmd_gottlieb(const Options& opt, const std::string& path) {
    SullivanModel m = load_model(path);
    GottliebReport rep = gottlieb(m);
    banner(opt, "Gottlieb dimensions of " + path);
    for (const auto& [n, dim] : rep.dims)
        line("gottlieb[" + std::to_string(n) + "]", dim);
    line("gottlieb.total", rep.total);
    return 0;
}

int cmd_wang(const Options& opt, const std::string& path,
             const std::string& base) {
    SullivanModel m = load_model(path);
    WangData w = wang(m, m.gens().id_of(base), opt.cap);
    banner(opt, "Wang derivation of " + path + " over " + base);
    line("wang.ker", w.dim_ker);
    line("wang.coker", w.dim_coker);
    line("wang.total", w.total_h);
    line("wang.exact", w.exactness_holds);
    if (!opt.machine) {
        for (GenId g = 0; g < w.fibre.generator_count(); ++g)
            if (!w.theta.value(g).is_zero())
                std::cout << "# theta(" << w.fibre.gens().name(g) << ") = "
                          << w.theta.value(g).str() << "\n";
    }
    return 0;
}

int cmd_bounds(const Options& opt, const std::string& path,
               const std::vector<std::string>& cert_paths, long budget) {
    SullivanModel m = load_model(path);
    std::vector<Certificate> certs;
    for (const auto& cp : cert_paths) {
        ExtensionSpec spec = parse_extension(slurp(cp));
        certs.push_back(verify_extension(spec, &m));
        if (!certs.back().valid && !opt.machine)
            std::cout << "# certificate " << cp << " failed verification\n";
    }
    RankBounds rb = rank_bounds(m, certs, budget, opt.cap);
    banner(opt, "toral-rank bounds for " + path);
    line("rk0.lower", rb.lower);
    line("rk0.upper", rb.upper ? std::to_string(*rb.upper) : "unknown");
    line("rk0.exact", rb.exact);
    line("trc.lhs", rb.trc_lhs);
    line("trc.rhs", "2^" + std::to_string(rb.trc_rhs_exponent));
    line("trc.holds", rb.trc_holds);
    if (!opt.machine) {
        std::cout << "# lower bound: " << rb.lower_provenance << "\n";
        if (rb.upper_chi)
            std::cout << "# upper from -chi_pi: " << *rb.upper_chi << "\n";
        if (rb.upper_thm)
            std::cout << "# upper from theorem (" << rb.upper_thm_provenance
                      << "): " << *rb.upper_thm << "\n";
        if (rb.two_stage)
            std::cout << "# dimV = " << rb.dim_v
                      << ", dimU_even = " << rb.dim_u_even << "\n";
        for (const auto& n : rb.notes) std::cout << "# " << n << "\n";
        if (rb.lemma_defect)
            std::cout << "# DEFECT: the constructive bound predicts a larger "
                         "certificate than the search found\n";
    }
    return 0;
}

int cmd_certify(const Options& opt, const std::string& path,
                const std::string& model_path) {
    ExtensionSpec spec = parse_extension(slurp(path));
    std::optional<SullivanModel> reference;
    if (!model_path.empty()) reference = load_model(model_path);
    Certificate cert =
        verify_extension(spec, reference ? &*reference : nullptr);
    banner(opt, "certificate " + path);
    line("cert.valid", cert.valid);
    line("cert.n", static_cast<long>(cert.n));
    for (const auto& item : cert.audit) {
        if (!opt.machine)
            std::cout << "# [" << (item.passed ? "ok" : "FAIL") << "] "
                      << item.name
                      << (item.detail.empty() ? "" : ": " + item.detail) << "\n";
    }
    return cert.valid ? 0 : 1;
}

int cmd_corpus(const Options& opt, const std::string& manifest,
               const std::string& filter) {
    RunReport report = run_corpus(manifest, filter, opt.cap);
    for (const auto& e : report.entries) {
        std::cout << (e.pass ? "PASS" : "FAIL") << " " << e.name;
        if (!opt.machine)
            std::cout << " (" << static_cast<long>(e.wall_ms) << " ms)";
        std::cout << "\n";
        if (!e.error.empty()) std::cout << "  error: " << e.error << "\n";
        for (const auto& [key, expected, actual, ok] : e.rows)
            if (!ok)
                std::cout << "  " << key << ": expected " << expected
                          << ", got " << actual << "\n";
    }
    return report.all_pass ? 0 : 1;
}

int cmd_random(const Options& opt, std::uint64_t seed,
               const RandomModelParams& params) {
    SullivanModel m = random_two_stage(seed, params);
    TwoStageDecomposition ts = two_stage_split(m);
    QuadraticBlockMatrix qb = quadratic_block_matrix(m, ts);
    if (!opt.machine)
        std::cout << "# seed " << seed << ", skew rank " << qb.rank << "\n";
    std::cout << print_model(m);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations on finite Sullivan models"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--machine", opt.machine, "key = value output only");
    app.add_option("--cap", opt.cap, "basis-size guard (total monomials)");

    std::string path, base, model_path, filter = "*";
    std::vector<std::string> cert_paths;
    int max_degree = -1;
    long budget = kDefaultSearchBudget;
    std::uint64_t seed = 0;
    RandomModelParams params;
    bool no_max_rank = false;

    auto* check = app.add_subcommand("check", "differential and structure checks");
    check->add_option("file", path)->required();

    auto* betti_cmd = app.add_subcommand("betti", "degree-wise cohomology dimensions");
    betti_cmd->add_option("file", path)->required();
    auto* md = betti_cmd->add_option("--max-degree", max_degree, "top degree");

    auto* pure = app.add_subcommand("pure", "print the associated pure model");
    pure->add_option("file", path)->required();

    auto* elliptic = app.add_subcommand("elliptic", "decide ellipticity");
    elliptic->add_option("file", path)->required();

    auto* split = app.add_subcommand("split", "two-stage decomposition");
    split->add_option("file", path)->required();

    auto* maximalize = app.add_subcommand("maximalize",
                                          "repair V to maximal dimension");
    maximalize->add_option("file", path)->required();

    auto* matrix = app.add_subcommand("matrix", "skew block matrix and rank");
    matrix->add_option("file", path)->required();

    auto* hypotheses = app.add_subcommand("hypotheses", "theorem hypothesis flags");
    hypotheses->add_option("file", path)->required();

    auto* gottlieb_cmd = app.add_subcommand("gottlieb", "Gottlieb dimensions");
    gottlieb_cmd->add_option("file", path)->required();

    auto* wang_cmd = app.add_subcommand("wang", "Wang derivation over an odd cocycle");
    wang_cmd->add_option("file", path)->required();
    wang_cmd->add_option("--base", base, "base generator")->required();

    auto* bounds = app.add_subcommand("bounds", "toral-rank bounds and TRC verdict");
    bounds->add_option("file", path)->required();
    bounds->add_option("--cert", cert_paths, "extension certificate files");
    bounds->add_option("--budget", budget, "lower-bound search budget");

    auto* certify = app.add_subcommand("certify", "verify an extension certificate");
    certify->add_option("file", path)->required();
    certify->add_option("--model", model_path, "reference fibre model");

    auto* corpus = app.add_subcommand("corpus", "run a corpus manifest");
    corpus->add_option("manifest", path)->required();
    corpus->add_option("--filter", filter, "entry name glob");

    auto* random = app.add_subcommand("random", "seeded random two-stage model");
    random->add_option("--seed", seed)->required();
    random->add_option("--p", params.p, "dim U");
    random->add_option("--r", params.r, "dim V");
    random->add_option("--deg-lo", params.deg_lo);
    random->add_option("--deg-hi", params.deg_hi);
    random->add_option("--extra", params.extra_cocycles, "extra odd cocycles");
    random->add_flag("--no-max", no_max_rank, "skip the full-rank rejection");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opt, path);
        if (betti_cmd->parsed())
            return cmd_betti(opt, path, max_degree, md->count() > 0);
        if (pure->parsed()) return cmd_pure(opt, path);
        if (elliptic->parsed()) return cmd_elliptic(opt, path);
        if (split->parsed()) return cmd_split(opt, path);
        if (maximalize->parsed()) return cmd_maximalize(opt, path);
        if (matrix->parsed()) return cmd_matrix(opt, path);
        if (hypotheses->parsed()) return cmd_hypotheses(opt, path);
        if (gottlieb_cmd->parsed()) return cmd_gottlieb(opt, path);
        if (wang_cmd->parsed()) return cmd_wang(opt, path, base);
        if (bounds->parsed()) return cmd_bounds(opt, path, cert_paths, budget);
        if (certify->parsed()) return cmd_certify(opt, path, model_path);
        if (corpus->parsed()) return cmd_corpus(opt, path, filter);
        if (random->parsed()) {
            params.require_full_rank = !no_max_rank;
            return cmd_random(opt, seed, params);
        }
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
