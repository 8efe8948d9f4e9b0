#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sullivan/parse.hpp"
#include "sullivan/structure.hpp"

namespace sullivan {

// ---------------------------------------------------------------------------
// K-S extensions over a degree-2 base and their certificates
// ---------------------------------------------------------------------------

struct ExtensionSpec {
    SullivanModel total;              // Lambda(A) (x) Lambda(W)
    std::vector<GenId> base_ids;      // the a_i, degree 2, D a_i = 0
    SullivanModel fibre;              // restriction of D modulo (a_1..a_n)
    std::vector<GenId> fibre_ids;     // total-table ids of the fibre generators

    int base_size() const { return static_cast<int>(base_ids.size()); }
};

// Builds the fibre by reducing D modulo the ideal of the base generators.
inline ExtensionSpec make_extension(SullivanModel total,
                                    std::vector<GenId> base_ids) {
    const GeneratorTable& t = total.gens();
    std::set<GenId> base(base_ids.begin(), base_ids.end());
    if (base.size() != base_ids.size())
        throw StructuralError("duplicate base generator");

    auto fibre_table = std::make_shared<GeneratorTable>();
    std::vector<GenId> to_fibre(t.size(), 0);
    std::vector<GenId> fibre_ids;
    for (GenId g = 0; g < t.size(); ++g) {
        if (base.count(g)) continue;
        to_fibre[g] = fibre_table->add(t.name(g), t.degree(g));
        fibre_ids.push_back(g);
    }
    TablePtr ft = fibre_table;
    SullivanModel fibre(ft, total.name());
    for (GenId g : fibre_ids) {
        Polynomial v(ft);
        for (const auto& [mono, c] : total.differential(g).terms()) {
            bool touches_base = false;
            for (const auto& [id, e] : mono.factors)
                if (base.count(id)) { touches_base = true; break; }
            if (touches_base) continue;
            Monomial remapped;
            remapped.degree = mono.degree;
            for (const auto& [id, e] : mono.factors)
                remapped.factors.emplace_back(to_fibre[id], e);
            v.add_term(std::move(remapped), c);
        }
        fibre.set_differential(to_fibre[g], std::move(v));
    }
    return ExtensionSpec{std::move(total), std::move(base_ids), std::move(fibre),
                         std::move(fibre_ids)};
}

// Extension files are model files plus `base <ident>` lines.
inline ExtensionSpec parse_extension(const std::string& text) {
    ParsedFile f = parse_model_file(text);
    if (f.base_ids.empty())
        throw StructuralError("extension file has no 'base' lines");
    return make_extension(std::move(f.model), std::move(f.base_ids));
}

inline std::string print_extension(const ExtensionSpec& spec) {
    return print_model_with_base(spec.total, spec.base_ids);
}

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Certificate {
    ExtensionSpec spec;
    bool valid = false;
    int n = 0; // certified rk_0 lower bound when valid
    std::vector<CheckItem> audit;
    std::optional<EllipticityReport> total_ellipticity;
};

// Checks, in order: base shape, restriction to the expected fibre, D^2 = 0,
// existence of a K-S ordering, ellipticity of the total. The verdict
// rk_0 >= n stands only when every check passes.
inline Certificate verify_extension(const ExtensionSpec& spec,
                                    const SullivanModel* expected_fibre = nullptr) {
    Certificate cert;
    cert.spec = spec;
    const GeneratorTable& t = spec.total.gens();
    auto log = [&](std::string name, bool ok, std::string detail = "") {
        cert.audit.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };

    bool base_ok = true;
    std::string base_detail;
    for (GenId a : spec.base_ids) {
        if (t.degree(a) != 2) {
            base_ok = false;
            base_detail = "base generator '" + t.name(a) + "' has degree " +
                          std::to_string(t.degree(a)) + ", expected 2";
        } else if (!spec.total.differential(a).is_zero()) {
            base_ok = false;
            base_detail = "base generator '" + t.name(a) + "' is not a cocycle";
        }
    }
    log("base generators of degree 2 with D a = 0", base_ok, base_detail);

    bool restrict_ok = true;
    std::string restrict_detail;
    if (expected_fibre) {
        const GeneratorTable& et = expected_fibre->gens();
        if (et.size() != spec.fibre.generator_count()) {
            restrict_ok = false;
            restrict_detail = "fibre generator count mismatch";
        } else {
            for (GenId g = 0; g < et.size() && restrict_ok; ++g) {
                const std::string& name = spec.fibre.gens().name(g);
                if (!et.has(name) ||
                    et.degree(et.id_of(name)) != spec.fibre.gens().degree(g)) {
                    restrict_ok = false;
                    restrict_detail = "fibre generator '" + name +
                                      "' missing from the reference model";
                    break;
                }
                // compare D mod (A) with the reference differential, by names
                Polynomial expect(spec.fibre.table());
                for (const auto& [mono, c] :
                     expected_fibre->differential(et.id_of(name)).terms()) {
                    Monomial remapped;
                    remapped.degree = mono.degree;
                    for (const auto& [id, e] : mono.factors)
                        remapped.factors.emplace_back(
                            spec.fibre.gens().id_of(et.name(id)), e);
                    std::sort(remapped.factors.begin(), remapped.factors.end());
                    expect.add_term(std::move(remapped), c);
                }
                if (expect != spec.fibre.differential(g)) {
                    restrict_ok = false;
                    restrict_detail =
                        "D(" + name + ") mod base = " +
                        spec.fibre.differential(g).str() +
                        " differs from the reference differential " + expect.str();
                }
            }
        }
    }
    log("restriction modulo the base recovers the fibre differential",
        restrict_ok, restrict_detail);

    StructureReport sr = check_differential(spec.total);
    std::string d2_detail;
    if (!sr.d_squared_zero) {
        const std::string& g = sr.d_squared_failures.front();
        Polynomial residual = spec.total.d_of(spec.total.differential(t.id_of(g)));
        d2_detail = "D^2(" + g + ") = " + residual.str();
    }
    log("D^2 = 0 on every generator", sr.d_squared_zero, d2_detail);

    // K-S ordering of the fibre generators: h -> g when h occurs in D(g)
    bool ks_ok = false;
    {
        std::set<GenId> fibre_set(spec.fibre_ids.begin(), spec.fibre_ids.end());
        std::map<GenId, std::vector<GenId>> deps;
        std::map<GenId, int> indeg;
        for (GenId g : spec.fibre_ids) indeg[g] = 0;
        for (GenId g : spec.fibre_ids) {
            std::set<GenId> seen;
            for (const auto& [mono, c] : spec.total.differential(g).terms())
                for (const auto& [id, e] : mono.factors)
                    if (fibre_set.count(id) && id != g && seen.insert(id).second) {
                        deps[id].push_back(g);
                        ++indeg[g];
                    }
            // a generator appearing in its own differential breaks triangularity
            for (const auto& [mono, c] : spec.total.differential(g).terms())
                if (mono.contains(g)) indeg[g] = -1;
        }
        std::vector<GenId> ready;
        for (auto& [g, d] : indeg)
            if (d == 0) ready.push_back(g);
        std::size_t done = 0;
        while (!ready.empty()) {
            GenId g = ready.back();
            ready.pop_back();
            ++done;
            for (GenId h : deps[g])
                if (--indeg[h] == 0) ready.push_back(h);
        }
        ks_ok = done == spec.fibre_ids.size();
    }
    log("a K-S ordering of the fibre generators exists", ks_ok);

    bool elliptic_ok = false;
    if (base_ok && sr.d_squared_zero) {
        EllipticityReport er = is_elliptic(spec.total);
        elliptic_ok = er.elliptic;
        cert.total_ellipticity = std::move(er);
    }
    log("total model has finite-dimensional cohomology", elliptic_ok);

    cert.valid = base_ok && restrict_ok && sr.d_squared_zero && ks_ok && elliptic_ok;
    cert.n = cert.valid ? spec.base_size() : 0;
    return cert;
}

// ---------------------------------------------------------------------------
// The constructive lower-bound extension: D v_i = d v_i + a_i^{(|v_i|+1)/2}
// ---------------------------------------------------------------------------

inline ExtensionSpec construct_lemma_extension(const SullivanModel& m,
                                               const TwoStageDecomposition& ts,
                                               const std::vector<GenId>& vpp) {
    const GeneratorTable& t = m.gens();
    for (GenId v : vpp) {
        if (!t.odd(v))
            throw ContractError("lemma extension: generator '" + t.name(v) +
                                "' has even degree");
        if (std::find(ts.v.begin(), ts.v.end(), v) == ts.v.end())
            throw ContractError("lemma extension: generator '" + t.name(v) +
                                "' is not in V");
    }
    auto table = std::make_shared<GeneratorTable>();
    std::vector<GenId> base_ids;
    for (std::size_t i = 0; i < vpp.size(); ++i) {
        std::string name = "a" + std::to_string(i + 1);
        while (t.has(name) || table->has(name)) name += "'";
        base_ids.push_back(table->add(name, 2));
    }
    std::vector<GenId> shift(t.size());
    for (GenId g = 0; g < t.size(); ++g)
        shift[g] = table->add(t.name(g), t.degree(g));

    TablePtr frozen = table;
    SullivanModel total(frozen, m.name());
    for (GenId g = 0; g < t.size(); ++g) {
        Polynomial v(frozen);
        for (const auto& [mono, c] : m.differential(g).terms()) {
            Monomial remapped;
            remapped.degree = mono.degree;
            for (const auto& [id, e] : mono.factors)
                remapped.factors.emplace_back(shift[id], e);
            v.add_term(std::move(remapped), c);
        }
        total.set_differential(shift[g], std::move(v));
    }
    for (std::size_t i = 0; i < vpp.size(); ++i) {
        int power = (t.degree(vpp[i]) + 1) / 2;
        Monomial pw;
        pw.factors.emplace_back(base_ids[i], power);
        pw.degree = 2 * power;
        Polynomial d_new = total.differential(shift[vpp[i]]);
        d_new.add_term(std::move(pw), Rational(1));
        total.set_differential(shift[vpp[i]], std::move(d_new));
    }
    return make_extension(std::move(total), std::move(base_ids));
}

// ---------------------------------------------------------------------------
// Lower-bound search over subsets of V
// ---------------------------------------------------------------------------

struct SearchResult {
    std::optional<Certificate> best;
    long best_n = 0;
    bool budget_exhausted = false;
    // set when U^even is concentrated in one degree but no certificate of
    // size >= dim V - dim U^even was found — the constructive bound predicts
    // one, so its absence is worth reporting
    bool lemma_defect = false;
    long candidates_tried = 0;
};

inline constexpr long kDefaultSearchBudget = 4096;

// Subsets of V in decreasing size, lexicographic within a size class;
// the first verified-elliptic extension wins.
inline SearchResult search_lower_bound(const SullivanModel& m,
                                       const TwoStageDecomposition& ts,
                                       long budget = kDefaultSearchBudget) {
    for (GenId v : ts.v)
        if (!m.gens().odd(v))
            throw ContractError("search_lower_bound requires V of odd degree");

    SearchResult out;
    int r = ts.r;
    long expected = std::max<long>(0, static_cast<long>(ts.r) -
                                          static_cast<long>(ts.q));
    std::set<int> even_degrees;
    for (GenId g : ts.u_even) even_degrees.insert(m.gens().degree(g));
    bool lemma_applies = even_degrees.size() <= 1;

    for (int size = r; size >= 0 && !out.best; --size) {
        // lexicographically ordered combinations of V indices
        std::vector<int> combo(size);
        for (int i = 0; i < size; ++i) combo[i] = i;
        while (true) {
            if (out.candidates_tried >= budget) {
                out.budget_exhausted = true;
                break;
            }
            ++out.candidates_tried;
            std::vector<GenId> vpp;
            for (int ix : combo) vpp.push_back(ts.v[ix]);
            ExtensionSpec spec = construct_lemma_extension(m, ts, vpp);
            Certificate cert = verify_extension(spec);
            if (cert.valid) {
                out.best_n = cert.n;
                out.best = std::move(cert);
                break;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && combo[i] == r - size + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
        if (out.budget_exhausted) break;
    }
    if (lemma_applies && out.best_n < expected) out.lemma_defect = true;
    return out;
}

// ---------------------------------------------------------------------------
// Bounds aggregator
// ---------------------------------------------------------------------------

struct RankBounds {
    bool two_stage = false;
    bool maximal = false;          // decomposition repaired to maximal V
    long dim_v = -1;
    long dim_u_even = -1;
    long lower = 0;
    std::string lower_provenance = "trivial";
    std::optional<long> upper_chi;
    std::string upper_thm_provenance;
    std::optional<long> upper_thm;
    std::optional<long> upper;
    bool exact = false;
    long trc_lhs = 0;              // total dim H
    long trc_rhs_exponent = 0;     // rhs = 2^lower
    bool trc_holds = false;
    bool lemma_defect = false;
    bool search_budget_exhausted = false;
    std::vector<std::string> notes;
};

inline RankBounds rank_bounds(const SullivanModel& m,
                              const std::vector<Certificate>& supplied = {},
                              long budget = kDefaultSearchBudget,
                              unsigned long long cap = kDefaultBasisCap) {
    EllipticityReport er = is_elliptic(m);
    if (!er.elliptic)
        throw ContractError("rank_bounds requires an elliptic model");

    RankBounds out;
    {
        // chi_pi needs no decomposition
        int n_even = 0, n_odd = 0;
        for (const auto& g : m.gens().generators())
            (g.odd() ? n_odd : n_even)++;
        out.upper_chi = -(n_even - n_odd);
    }

    std::optional<TwoStageDecomposition> decomp;
    SullivanModel worked = m;
    try {
        decomp = two_stage_split(m);
    } catch (const NotTwoStageError& e) {
        out.notes.push_back(e.what());
    }

    if (decomp) {
        out.two_stage = true;
        MaximalityAnalysis mx = maximality(m, *decomp);
        worked = mx.repaired;
        decomp = mx.repaired_decomp;
        out.maximal = mx.maximal;
        if (!mx.maximal_input)
            out.notes.push_back("decomposition repaired to display V with "
                                "maximal dimension");
        out.dim_v = decomp->r;
        out.dim_u_even = decomp->q;

        HypothesisReport hyp = hypothesis_check(worked, *decomp);
        if (hyp.quadratic_differential && (hyp.condition_a || hyp.condition_b)) {
            out.upper_thm = decomp->r - decomp->q;
            out.upper_thm_provenance = hyp.condition_a
                ? "quadratic two-stage, connectivity condition (A)"
                : "quadratic two-stage, connectivity condition (B)";
        } else if (hyp.odd_only && hyp.stable_separated) {
            out.upper_thm = decomp->r;
            out.upper_thm_provenance = "odd generators, stable and separated degrees";
        }

        if (decomp->v_all_odd) {
            SearchResult sr = search_lower_bound(worked, *decomp, budget);
            out.lemma_defect = sr.lemma_defect;
            out.search_budget_exhausted = sr.budget_exhausted;
            if (sr.best && sr.best_n > out.lower) {
                out.lower = sr.best_n;
                out.lower_provenance = "constructed extension over " +
                                       std::to_string(sr.best_n) + " base generators";
            }
        } else {
            out.notes.push_back("V contains even generators; lower-bound "
                                "search skipped");
        }
    }

    for (const auto& cert : supplied) {
        Certificate recheck = verify_extension(cert.spec);
        if (!recheck.valid) {
            out.notes.push_back("a supplied certificate failed re-verification "
                                "and was ignored");
            continue;
        }
        if (recheck.n > out.lower) {
            out.lower = recheck.n;
            out.lower_provenance = "supplied extension over " +
                                   std::to_string(recheck.n) + " base generators";
        }
    }

    out.upper = out.upper_chi;
    if (out.upper_thm && (!out.upper || *out.upper_thm < *out.upper))
        out.upper = out.upper_thm;
    out.exact = out.upper && out.lower == *out.upper;

    int fd = formal_dimension(m, er.evidence());
    out.trc_lhs = betti_table(m, fd, er.evidence(), cap).total;
    out.trc_rhs_exponent = out.lower;
    BigInt rhs = 1;
    rhs <<= static_cast<unsigned long>(out.lower);
    out.trc_holds = BigInt(out.trc_lhs) >= rhs;
    return out;
}

} // namespace sullivan
