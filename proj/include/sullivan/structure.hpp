#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "sullivan/cohomology.hpp"
#include "sullivan/purity.hpp"

namespace sullivan {

// ---------------------------------------------------------------------------
// Two-stage decomposition W = U + V with dU = 0, dV in Lambda U
// ---------------------------------------------------------------------------

struct TwoStageDecomposition {
    std::vector<GenId> u, v;           // ascending ids
    std::vector<GenId> u_odd, u_even;
    int p = 0; // dim U^odd
    int q = 0; // dim U^even
    int r = 0; // dim V
    bool v_all_odd = true;

    bool in_u(GenId g) const {
        return std::binary_search(u.begin(), u.end(), g);
    }
};

// Greedy split with maximality bias: cocycle generators go to U only when
// they are even or occur in some differential; all other generators,
// including unused odd cocycles, land in V.
inline TwoStageDecomposition two_stage_split(const SullivanModel& m) {
    const GeneratorTable& t = m.gens();
    std::vector<bool> occurs(t.size(), false);
    for (GenId g = 0; g < t.size(); ++g)
        for (const auto& [mono, c] : m.differential(g).terms())
            for (const auto& [id, e] : mono.factors) occurs[id] = true;

    TwoStageDecomposition out;
    for (GenId g = 0; g < t.size(); ++g) {
        bool cocycle = m.differential(g).is_zero();
        if (cocycle && (occurs[g] || !t.odd(g))) {
            out.u.push_back(g);
            (t.odd(g) ? out.u_odd : out.u_even).push_back(g);
        } else {
            out.v.push_back(g);
            if (!t.odd(g)) out.v_all_odd = false;
        }
    }
    for (GenId v : out.v)
        for (const auto& [mono, c] : m.differential(v).terms())
            for (const auto& [id, e] : mono.factors)
                if (!out.in_u(id))
                    throw NotTwoStageError(
                        "not two-stage: d(" + t.name(v) +
                        ") involves non-cocycle generator '" + t.name(id) + "'");
    out.p = static_cast<int>(out.u_odd.size());
    out.q = static_cast<int>(out.u_even.size());
    out.r = static_cast<int>(out.v.size());
    return out;
}

// ---------------------------------------------------------------------------
// Dual contraction i_{u*}
// ---------------------------------------------------------------------------

inline Derivation dual_contraction(const TablePtr& table, GenId u) {
    std::vector<Polynomial> values(table->size());
    values[u] = Polynomial::unit(table);
    return make_derivation(table, -table->degree(u), std::move(values));
}

inline Polynomial contract(const TablePtr& table, GenId u, const Polynomial& p) {
    return apply_derivation(dual_contraction(table, u), p);
}

// ---------------------------------------------------------------------------
// Maximality of dim V via the kernel of u* -> (i_{u*} d)|_V, with repair
// ---------------------------------------------------------------------------

struct MaximalityAnalysis {
    bool maximal_input = false;  // the given decomposition was already maximal
    bool maximal = false;        // after repair (always true on success)
    // the map c |-> sum_u c_u (i_{u*} d)|_V and its kernel on the input
    // model, grouped by U-degree class (the kernel of L splits by degree);
    // matrix rows are indexed by (v, monomial) pairs, columns by the duals
    // of that class
    struct LBlock {
        int degree;
        std::vector<GenId> gens;
        std::vector<QVec> l_rows;
        std::vector<QVec> kernel;
    };
    std::vector<LBlock> input_l;
    std::vector<LBlock> input_kernel; // blocks with nonzero kernel only
    SullivanModel repaired;
    TwoStageDecomposition repaired_decomp;
    std::optional<ModelMorphism> repair; // repaired -> original
    int passes = 0;
};

namespace detail {

// Equation rows of L restricted to one degree class of U.
inline std::vector<QVec> l_rows_for_class(const SullivanModel& m,
                                          const TwoStageDecomposition& ts,
                                          const std::vector<GenId>& class_gens) {
    std::size_t ncols = class_gens.size();
    std::vector<QVec> rows;
    for (GenId v : ts.v) {
        // equations: coefficients of every monomial of i_{u*} dv
        std::map<Monomial, QVec, MonomialOrder> eq;
        for (std::size_t j = 0; j < ncols; ++j) {
            Polynomial c = contract(m.table(), class_gens[j], m.differential(v));
            for (const auto& [mono, coeff] : c.terms()) {
                auto [it, fresh] = eq.emplace(mono, QVec(ncols, Rational(0)));
                it->second[j] = coeff;
            }
        }
        for (auto& [mono, row] : eq) rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<QVec> l_kernel_for_class(const SullivanModel& m,
                                            const TwoStageDecomposition& ts,
                                            const std::vector<GenId>& class_gens) {
    return kernel_basis(l_rows_for_class(m, ts, class_gens), class_gens.size());
}

} // namespace detail

inline MaximalityAnalysis maximality(const SullivanModel& m,
                                     const TwoStageDecomposition& decomp) {
    MaximalityAnalysis out;
    out.repaired = m;
    out.repaired_decomp = decomp;

    const GeneratorTable& t = m.gens();
    std::vector<Polynomial> phi_total(t.size());
    for (GenId g = 0; g < t.size(); ++g)
        phi_total[g] = Polynomial::generator(m.table(), g);

    bool first_pass = true;
    while (true) {
        const SullivanModel& cur = out.repaired;
        const TwoStageDecomposition& ts = out.repaired_decomp;

        // group U by degree
        std::map<int, std::vector<GenId>> classes;
        for (GenId u : ts.u) classes[t.degree(u)].push_back(u);

        std::map<int, std::vector<QVec>> kernels;
        bool trivial = true;
        for (const auto& [deg, gens] : classes) {
            auto k = detail::l_kernel_for_class(cur, ts, gens);
            if (!k.empty()) trivial = false;
            kernels.emplace(deg, std::move(k));
        }
        if (first_pass) {
            out.maximal_input = trivial;
            for (const auto& [deg, gens] : classes) {
                MaximalityAnalysis::LBlock block{
                    deg, gens, detail::l_rows_for_class(cur, ts, gens),
                    kernels[deg]};
                if (!kernels[deg].empty()) out.input_kernel.push_back(block);
                out.input_l.push_back(std::move(block));
            }
            first_pass = false;
        }
        if (trivial) break;
        ++out.passes;

        // repair one degree class with nonzero kernel (smallest degree first)
        int deg = -1;
        for (const auto& [d_, k] : kernels)
            if (!k.empty()) { deg = d_; break; }
        const std::vector<GenId>& gens = classes[deg];
        std::size_t n = gens.size();

        std::vector<QVec> kappa = kernels[deg];
        std::vector<int> pivots = rref(kappa);
        std::vector<bool> is_pivot(n, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<int> free_ix;
        for (std::size_t j = 0; j < n; ++j)
            if (!is_pivot[j]) free_ix.push_back(static_cast<int>(j));

        // dual base change: keep the free duals, append the kernel rows
        std::vector<QVec> a_rows;
        for (int j : free_ix) {
            QVec e(n, Rational(0));
            e[j] = 1;
            a_rows.push_back(std::move(e));
        }
        for (const auto& row : kappa) a_rows.push_back(row);
        std::vector<QVec> b = inverse(a_rows); // columns are the new basis

        // slot l carries the name of gens[free_ix[l]] (stays in U) or of
        // gens[pivots[l - #free]] (moves to V)
        std::vector<GenId> slot_gid(n);
        for (std::size_t l = 0; l < free_ix.size(); ++l)
            slot_gid[l] = gens[free_ix[l]];
        for (std::size_t i = 0; i < pivots.size(); ++i)
            slot_gid[free_ix.size() + i] = gens[pivots[i]];

        // phi_step: slot generator -> combination of the old class generators
        std::vector<Polynomial> step(t.size());
        for (GenId g = 0; g < t.size(); ++g)
            step[g] = Polynomial::generator(m.table(), g);
        for (std::size_t l = 0; l < n; ++l) {
            Polynomial img(m.table());
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(b[j][l]) != 0)
                    img += b[j][l] * Polynomial::generator(m.table(), gens[j]);
            step[slot_gid[l]] = std::move(img);
        }
        // inverse substitution: old class generator -> combination of slots
        std::vector<Polynomial> inv_sub(t.size());
        for (GenId g = 0; g < t.size(); ++g)
            inv_sub[g] = Polynomial::generator(m.table(), g);
        for (std::size_t j = 0; j < n; ++j) {
            Polynomial img(m.table());
            for (std::size_t l = 0; l < n; ++l)
                if (sgn(a_rows[l][j]) != 0)
                    img += a_rows[l][j] * Polynomial::generator(m.table(), slot_gid[l]);
            inv_sub[gens[j]] = std::move(img);
        }

        SullivanModel next(cur.table(), cur.name());
        for (GenId g = 0; g < t.size(); ++g)
            next.set_differential(g, substitute(cur.differential(g), cur.table(),
                                                inv_sub));
        // moved generators become cocycles of V
        TwoStageDecomposition ts2 = ts;
        std::set<GenId> moved;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            moved.insert(gens[pivots[i]]);
        ts2.u.clear(); ts2.u_odd.clear(); ts2.u_even.clear();
        for (GenId u : ts.u) {
            if (moved.count(u)) {
                ts2.v.push_back(u);
                if (!t.odd(u)) ts2.v_all_odd = false;
            } else {
                ts2.u.push_back(u);
                (t.odd(u) ? ts2.u_odd : ts2.u_even).push_back(u);
            }
        }
        std::sort(ts2.v.begin(), ts2.v.end());
        ts2.p = static_cast<int>(ts2.u_odd.size());
        ts2.q = static_cast<int>(ts2.u_even.size());
        ts2.r = static_cast<int>(ts2.v.size());

        for (GenId v : ts2.v) {
            if (!next.differential(v).is_zero())
                for (const auto& [mono, c] : next.differential(v).terms())
                    for (const auto& [id, e] : mono.factors)
                        if (!ts2.in_u(id))
                            throw InternalError("maximality repair left dV "
                                                "outside Lambda U");
        }

        // accumulate the morphism: repaired -> original
        std::vector<Polynomial> phi_next(t.size());
        for (GenId g = 0; g < t.size(); ++g)
            phi_next[g] = substitute(step[g], m.table(), phi_total);
        phi_total = std::move(phi_next);

        out.repaired = std::move(next);
        out.repaired_decomp = std::move(ts2);
    }

    out.maximal = true;
    if (!out.maximal_input)
        out.repair = make_morphism(out.repaired, m, phi_total);
    return out;
}

// ---------------------------------------------------------------------------
// Skew-symmetric block matrix of a quadratic differential
// ---------------------------------------------------------------------------

struct QuadraticBlockMatrix {
    int p = 0; // dim U^odd
    int r = 0; // dim V
    std::vector<std::vector<QVec>> blocks; // r skew p x p matrices
    long rank = 0;                         // of the stacked rp x p matrix
    bool left_inverse_exists = false;
};

inline QuadraticBlockMatrix quadratic_block_matrix(const SullivanModel& m,
                                                   const TwoStageDecomposition& ts) {
    const GeneratorTable& t = m.gens();
    for (GenId v : ts.v)
        for (const auto& [mono, c] : m.differential(v).terms())
            if (mono.length() != 2)
                throw ContractError(
                    "quadratic_block_matrix: d(" + t.name(v) +
                    ") is not quadratic; use maximality, which has no "
                    "quadratic restriction");

    QuadraticBlockMatrix out;
    out.p = ts.p;
    out.r = ts.r;
    std::map<GenId, int> odd_pos;
    for (int i = 0; i < ts.p; ++i) odd_pos.emplace(ts.u_odd[i], i);

    std::vector<QVec> stacked;
    for (GenId v : ts.v) {
        std::vector<QVec> mk(ts.p, QVec(ts.p, Rational(0)));
        for (const auto& [mono, c] : m.differential(v).terms()) {
            if (mono.factors.size() != 2) continue; // even square or mixed
            GenId a = mono.factors[0].first, b2 = mono.factors[1].first;
            if (!t.odd(a) || !t.odd(b2)) continue;
            int i = odd_pos.at(a), j = odd_pos.at(b2);
            mk[i][j] = c;
            mk[j][i] = -c;
        }
        for (const auto& row : mk) stacked.push_back(row);
        out.blocks.push_back(std::move(mk));
    }
    out.rank = stacked.empty() ? 0 : dense_rank(stacked);
    out.left_inverse_exists = out.rank == out.p;
    return out;
}

// ---------------------------------------------------------------------------
// Degree hypotheses and the homotopy Euler characteristic
// ---------------------------------------------------------------------------

struct HypothesisReport {
    bool pure = false;
    bool odd_only = false;
    bool quadratic_differential = false;
    bool u_even_single_degree = false; // U^even concentrated in one degree
    bool condition_a = false;          // exists r: U^odd (2r-1)-connected,
                                       // U^even (2r+2)-co-connected
    bool condition_b = false;          // exists s: U^odd (2s+1)-co-connected,
                                       // U^even (4s-4)-connected
    bool stable_separated = false;
    std::optional<int> a_r, b_s;
    std::optional<std::array<int, 4>> stable_params; // r, s, t, u
    int chi_pi = 0;                    // dim W^even - dim W^odd
};

inline HypothesisReport hypothesis_check(const SullivanModel& m,
                                         const TwoStageDecomposition& ts) {
    const GeneratorTable& t = m.gens();
    HypothesisReport rep;

    rep.pure = is_pure(m);
    rep.odd_only = true;
    int max_deg = 1;
    int n_even = 0, n_odd = 0;
    for (const auto& g : t.generators()) {
        max_deg = std::max(max_deg, g.degree);
        if (g.odd()) ++n_odd; else { ++n_even; rep.odd_only = false; }
    }
    rep.chi_pi = n_even - n_odd;

    rep.quadratic_differential = true;
    for (GenId g = 0; g < t.size(); ++g)
        for (const auto& [mono, c] : m.differential(g).terms())
            if (mono.length() != 2) rep.quadratic_differential = false;

    std::set<int> even_degrees;
    for (GenId g : ts.u_even) even_degrees.insert(t.degree(g));
    rep.u_even_single_degree = even_degrees.size() <= 1;

    auto all_at_least = [&](const std::vector<GenId>& gens, int bound) {
        for (GenId g : gens)
            if (t.degree(g) < bound) return false;
        return true;
    };
    auto all_at_most = [&](const std::vector<GenId>& gens, int bound) {
        for (GenId g : gens)
            if (t.degree(g) > bound) return false;
        return true;
    };

    for (int r = 1; r <= max_deg + 2 && !rep.condition_a; ++r) {
        // (2r-1)-connected: degrees >= 2r; (2r+2)-co-connected: degrees <= 2r+1
        if (all_at_least(ts.u_odd, 2 * r) && all_at_most(ts.u_even, 2 * r + 1)) {
            rep.condition_a = true;
            rep.a_r = r;
        }
    }
    for (int s = 1; s <= max_deg + 2 && !rep.condition_b; ++s) {
        // (2s+1)-co-connected: degrees <= 2s; (4s-4)-connected: degrees >= 4s-3
        if (all_at_most(ts.u_odd, 2 * s) && all_at_least(ts.u_even, 4 * s - 3)) {
            rep.condition_b = true;
            rep.b_s = s;
        }
    }
    for (int r = 1; r <= max_deg + 1 && !rep.stable_separated; ++r) {
        for (int s = r; s <= std::min(2 * r, max_deg + 1) && !rep.stable_separated; ++s) {
            if (!(all_at_least(ts.u, r) && all_at_most(ts.u, s))) continue;
            for (int tt = s; tt <= s + r && !rep.stable_separated; ++tt) {
                for (int uu = tt; uu <= s + r && !rep.stable_separated; ++uu) {
                    if (all_at_least(ts.v, tt) && all_at_most(ts.v, uu)) {
                        rep.stable_separated = true;
                        rep.stable_params = {r, s, tt, uu};
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Gottlieb groups
// ---------------------------------------------------------------------------

struct GottliebReport {
    std::map<int, long> dims; // per generator degree
    long total = 0;
};

// dim G_n: dimension of the projection of the space of degree -n
// derivations commuting with d (in the graded sense) onto the values on
// degree-n generators.
inline long gottlieb_dim(const SullivanModel& m, int n) {
    if (n < 1) throw ContractError("gottlieb_dim requires n >= 1");
    const GeneratorTable& t = m.gens();

    struct Unknown {
        GenId g;
        Monomial mu;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::size_t> dual_cols; // unknowns with deg(g) == n
    for (GenId g = 0; g < t.size(); ++g) {
        int vdeg = t.degree(g) - n;
        if (vdeg < 0) continue;
        for (const auto& mu : degree_basis(t, vdeg)) {
            if (t.degree(g) == n) dual_cols.push_back(unknowns.size());
            unknowns.push_back({g, mu});
        }
    }
    if (unknowns.empty()) return 0;

    Derivation d = m.d();
    int sign = n % 2 == 0 ? 1 : -1; // (-1)^n

    // rows: for each generator g, coefficients over basis(deg g + 1 - n)
    std::map<int, std::map<Monomial, int, MonomialOrder>> row_index;
    std::vector<int> row_offset(t.size() + 1, 0);
    for (GenId g = 0; g < t.size(); ++g) {
        int target = t.degree(g) + 1 - n;
        int count = 0;
        if (target >= 0) {
            auto& idx = row_index[target];
            if (idx.empty())
                for (const auto& mono : degree_basis(t, target))
                    idx.emplace(mono, static_cast<int>(idx.size()));
            count = static_cast<int>(idx.size());
        }
        row_offset[g + 1] = row_offset[g] + count;
    }

    std::vector<QVec> rows(row_offset[t.size()],
                           QVec(unknowns.size(), Rational(0)));
    auto add_poly = [&](GenId g, const Polynomial& p, std::size_t col,
                        const Rational& scale) {
        if (p.is_zero()) return;
        int target = t.degree(g) + 1 - n;
        auto& idx = row_index.at(target);
        for (const auto& [mono, c] : p.terms())
            rows[row_offset[g] + idx.at(mono)][col] += scale * c;
    };

    for (std::size_t col = 0; col < unknowns.size(); ++col) {
        const Unknown& x = unknowns[col];
        // d(theta(g)) contribution
        Polynomial d_mu = apply_derivation(d, x.mu, Rational(1));
        add_poly(x.g, d_mu, col, Rational(1));
        // -(-1)^n theta(dg) contribution, theta = elementary derivation
        std::vector<Polynomial> values(t.size());
        values[x.g] = Polynomial::from_monomial(m.table(), x.mu);
        Derivation elem = make_derivation(m.table(), -n, std::move(values));
        for (GenId g = 0; g < t.size(); ++g) {
            if (m.differential(g).is_zero()) continue;
            Polynomial th_dg = apply_derivation(elem, m.differential(g));
            add_poly(g, th_dg, col, Rational(-sign));
        }
    }

    std::vector<QVec> solutions = kernel_basis(std::move(rows), unknowns.size());
    if (dual_cols.empty()) return 0;
    std::vector<QVec> proj;
    for (const auto& sol : solutions) {
        QVec v(dual_cols.size());
        for (std::size_t j = 0; j < dual_cols.size(); ++j) v[j] = sol[dual_cols[j]];
        proj.push_back(std::move(v));
    }
    return proj.empty() ? 0 : dense_rank(proj);
}

// Total over the generator degrees (a derivation of any other degree
// cannot restrict to a nonzero functional on some (W^n)*).
inline GottliebReport gottlieb(const SullivanModel& m) {
    GottliebReport rep;
    std::set<int> degrees;
    for (const auto& g : m.gens().generators()) degrees.insert(g.degree);
    for (int n : degrees) {
        long dim = gottlieb_dim(m, n);
        rep.dims[n] = dim;
        rep.total += dim;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Wang derivation of an extension over a single odd cocycle generator
// ---------------------------------------------------------------------------

struct WangData {
    GenId base_gen = 0;
    SullivanModel fibre;         // base generator deleted, d reduced mod (u0)
    Derivation theta;            // on the fibre, degree 1 - |u0|
    InducedMap theta_star;
    long dim_ker = 0;
    long dim_coker = 0;
    long total_h = 0;            // dim H of the total model
    bool exactness_holds = false; // total_h == dim_ker + dim_coker
};

namespace detail {

inline bool all_odd(const GeneratorTable& t) {
    for (const auto& g : t.generators())
        if (!g.odd()) return false;
    return true;
}

inline int degree_sum(const GeneratorTable& t) {
    int s = 0;
    for (const auto& g : t.generators()) s += g.degree;
    return s;
}

// top degree that can carry cohomology, for a finite computation window
inline int h_window(const SullivanModel& m) {
    if (all_odd(m.gens())) return degree_sum(m.gens());
    EllipticityReport er = is_elliptic(m);
    if (!er.elliptic)
        throw ContractError("cohomology window unbounded: model with even "
                            "generators is not elliptic");
    return formal_dimension(m, er.evidence());
}

} // namespace detail

inline WangData wang(const SullivanModel& m, GenId u0,
                     unsigned long long cap = kDefaultBasisCap) {
    const GeneratorTable& t = m.gens();
    if (!t.odd(u0))
        throw ContractError("wang: base generator '" + t.name(u0) + "' is even");
    if (!m.differential(u0).is_zero())
        throw ContractError("wang: base generator '" + t.name(u0) +
                            "' is not a cocycle");
    for (GenId g = 0; g < t.size(); ++g)
        for (const auto& [mono, c] : m.differential(g).terms())
            if (mono.factors.size() == 1 && mono.factors[0] == std::make_pair(u0, 1))
                throw ContractError("wang: base generator occurs linearly in d(" +
                                    t.name(g) + ")");

    auto fibre_table = std::make_shared<GeneratorTable>();
    std::vector<GenId> to_fibre(t.size(), 0);
    for (GenId g = 0; g < t.size(); ++g) {
        if (g == u0) continue;
        to_fibre[g] = fibre_table->add(t.name(g), t.degree(g));
    }
    TablePtr ft = fibre_table;

    auto remap = [&](const Monomial& mono) {
        Monomial out;
        out.degree = mono.degree;
        for (const auto& [id, e] : mono.factors)
            out.factors.emplace_back(to_fibre[id], e);
        return out;
    };

    WangData out;
    out.base_gen = u0;
    out.fibre = SullivanModel(ft, m.name().empty() ? "" : m.name() + "_fibre");
    std::vector<Polynomial> theta_values(ft->size());
    for (GenId g = 0; g < t.size(); ++g) {
        if (g == u0) continue;
        Polynomial dbar(ft), th(ft);
        for (const auto& [mono, c] : m.differential(g).terms()) {
            if (!mono.contains(u0)) {
                dbar.add_term(remap(mono), c);
            } else {
                auto [sign, rest] = monomial_strip_front(t, mono, u0);
                th.add_term(remap(rest), sign > 0 ? c : -c);
            }
        }
        out.fibre.set_differential(to_fibre[g], std::move(dbar));
        theta_values[to_fibre[g]] = std::move(th);
    }
    StructureReport fr = check_differential(out.fibre);
    if (!fr.d_squared_zero)
        throw InternalError("wang: fibre differential fails d^2 = 0");
    out.theta = make_derivation(ft, 1 - t.degree(u0), std::move(theta_values));

    int window = detail::h_window(out.fibre);
    out.theta_star = induced_map_on_h(out.fibre, out.theta, window, cap);
    out.dim_ker = out.theta_star.total_ker();
    out.dim_coker = out.theta_star.total_coker();

    int total_window = detail::h_window(m);
    out.total_h = betti_table(m, total_window, EllipticEvidence{true}, cap).total;
    out.exactness_holds = out.total_h == out.dim_ker + out.dim_coker;
    return out;
}

} // namespace sullivan
