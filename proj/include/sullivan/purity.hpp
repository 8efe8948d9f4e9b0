#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

// ---------------------------------------------------------------------------
// Associated pure model
// ---------------------------------------------------------------------------

struct PureModel {
    SullivanModel model;
};

inline bool is_pure(const SullivanModel& m) {
    const GeneratorTable& t = m.gens();
    for (GenId g = 0; g < t.size(); ++g) {
        if (!t.odd(g)) {
            if (!m.differential(g).is_zero()) return false;
        } else {
            for (const auto& [mono, c] : m.differential(g).terms())
                for (const auto& [id, e] : mono.factors)
                    if (t.odd(id)) return false;
        }
    }
    return true;
}

// d_sigma = 0 on even generators; on odd generators, the part of d lying in
// the subalgebra on even generators.
inline PureModel associated_pure(const SullivanModel& m) {
    const GeneratorTable& t = m.gens();
    SullivanModel pure(m.table(), m.name());
    for (GenId g = 0; g < t.size(); ++g) {
        if (!t.odd(g)) continue;
        Polynomial part = m.differential(g).filter([&](const Monomial& mono) {
            for (const auto& [id, e] : mono.factors)
                if (t.odd(id)) return false;
            return true;
        });
        pure.set_differential(g, std::move(part));
    }
    StructureReport rep = check_differential(pure);
    if (!rep.d_squared_zero)
        throw InternalError("associated pure model has d^2 != 0 "
                            "(input differential is invalid)");
    return PureModel{std::move(pure)};
}

// ---------------------------------------------------------------------------
// Commutative polynomial ring on the even generators, weighted grevlex
// ---------------------------------------------------------------------------

struct EvenRing {
    std::vector<GenId> vars;   // even generator ids, declaration order
    std::vector<int> weights;  // their degrees
    std::vector<std::string> names;
    std::map<GenId, int> var_index;

    std::size_t nvars() const { return vars.size(); }
};

inline EvenRing even_ring(const GeneratorTable& t) {
    EvenRing r;
    for (GenId g = 0; g < t.size(); ++g) {
        if (t.odd(g)) continue;
        r.var_index.emplace(g, static_cast<int>(r.vars.size()));
        r.vars.push_back(g);
        r.weights.push_back(t.degree(g));
        r.names.push_back(t.name(g));
    }
    return r;
}

struct EvenMono {
    std::vector<int> e;
    long wdeg = 0;

    friend bool operator==(const EvenMono& a, const EvenMono& b) {
        return a.e == b.e;
    }
};

// Weighted graded-reverse-lexicographic order; variable significance is
// declaration order (earlier variable = more significant).
struct GrevlexLess {
    bool operator()(const EvenMono& a, const EvenMono& b) const {
        if (a.wdeg != b.wdeg) return a.wdeg < b.wdeg;
        for (std::size_t i = a.e.size(); i-- > 0;) {
            int diff = a.e[i] - b.e[i];
            if (diff != 0) return diff > 0; // rightmost nonzero of a-b positive
        }
        return false;
    }
};

struct EvenPoly {
    std::map<EvenMono, Rational, GrevlexLess> terms;

    bool is_zero() const { return terms.empty(); }
    const EvenMono& lt() const { return terms.rbegin()->first; }
    const Rational& lc() const { return terms.rbegin()->second; }

    void add(const EvenMono& m, const Rational& c) {
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }
};

namespace detail {

inline EvenMono even_mono_mul(const EvenMono& a, const EvenMono& b) {
    EvenMono out = a;
    for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] += b.e[i];
    out.wdeg = a.wdeg + b.wdeg;
    return out;
}

inline bool even_mono_divides(const EvenMono& a, const EvenMono& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline EvenMono even_mono_div(const EvenMono& a, const EvenMono& b) {
    EvenMono out = a;
    for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] -= b.e[i];
    out.wdeg = a.wdeg - b.wdeg;
    return out;
}

inline EvenMono even_mono_lcm(const EvenMono& a, const EvenMono& b,
                              const EvenRing& ring) {
    EvenMono out = a;
    out.wdeg = 0;
    for (std::size_t i = 0; i < out.e.size(); ++i) {
        out.e[i] = std::max(a.e[i], b.e[i]);
        out.wdeg += static_cast<long>(out.e[i]) * ring.weights[i];
    }
    return out;
}

inline EvenPoly even_mul_term(const EvenPoly& p, const EvenMono& m,
                              const Rational& c) {
    EvenPoly out;
    for (const auto& [mono, v] : p.terms)
        out.terms.emplace(even_mono_mul(mono, m), v * c);
    return out;
}

inline void even_sub(EvenPoly& a, const EvenPoly& b) {
    for (const auto& [m, c] : b.terms) a.add(m, -c);
}

} // namespace detail

inline EvenPoly to_even_poly(const EvenRing& ring, const Polynomial& p) {
    EvenPoly out;
    for (const auto& [mono, c] : p.terms()) {
        EvenMono em;
        em.e.assign(ring.nvars(), 0);
        em.wdeg = mono.degree;
        for (const auto& [id, e] : mono.factors) {
            auto it = ring.var_index.find(id);
            if (it == ring.var_index.end())
                throw InternalError("to_even_poly: odd generator in even part");
            em.e[it->second] = e;
        }
        out.add(em, c);
    }
    return out;
}

inline std::string even_mono_str(const EvenRing& ring, const EvenMono& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << ring.names[i];
        if (m.e[i] > 1) os << "^" << m.e[i];
    }
    if (first) os << "1";
    return os.str();
}

inline std::string even_poly_str(const EvenRing& ring, const EvenPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print leading term first
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        if (a != 1) os << a.get_str() << "*";
        os << even_mono_str(ring, m);
    }
    return os.str();
}

struct PolynomialIdeal {
    EvenRing ring;
    std::vector<EvenPoly> gens;
};

// Ideal generated by the pure differentials of the odd generators,
// inside the polynomial ring on the even generators.
inline PolynomialIdeal pure_part_ideal(const PureModel& pm) {
    PolynomialIdeal ideal;
    ideal.ring = even_ring(pm.model.gens());
    const GeneratorTable& t = pm.model.gens();
    for (GenId g = 0; g < t.size(); ++g) {
        if (!t.odd(g) || pm.model.differential(g).is_zero()) continue;
        ideal.gens.push_back(to_even_poly(ideal.ring, pm.model.differential(g)));
    }
    return ideal;
}

struct GroebnerBasis {
    EvenRing ring;
    std::vector<EvenPoly> polys; // reduced, monic, sorted by leading term
};

inline EvenPoly normal_form(const std::vector<EvenPoly>& basis, EvenPoly f) {
    EvenPoly remainder;
    while (!f.is_zero()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (detail::even_mono_divides(g.lt(), f.lt())) {
                EvenMono q = detail::even_mono_div(f.lt(), g.lt());
                Rational c = f.lc() / g.lc();
                detail::even_sub(f, detail::even_mul_term(g, q, c));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.add(f.lt(), f.lc());
            f.terms.erase(std::prev(f.terms.end()));
        }
    }
    return remainder;
}

inline EvenPoly normal_form(const GroebnerBasis& gb, EvenPoly f) {
    return normal_form(gb.polys, std::move(f));
}

// Buchberger with the coprime and chain criteria; deterministic pair order
// (lcm weighted degree, then indices). Output is the reduced basis with
// unit leading coefficients.
inline GroebnerBasis groebner(const PolynomialIdeal& ideal) {
    const EvenRing& ring = ideal.ring;
    std::vector<EvenPoly> g;
    for (const auto& f : ideal.gens) {
        if (f.is_zero()) throw ContractError("groebner: zero ideal generator");
        EvenPoly monic = f;
        Rational inv = Rational(1) / f.lc();
        for (auto& [m, c] : monic.terms) c *= inv;
        g.push_back(std::move(monic));
    }

    struct Pair {
        long lcm_deg;
        int i, j;
        bool operator<(const Pair& o) const {
            if (lcm_deg != o.lcm_deg) return lcm_deg < o.lcm_deg;
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };
    std::set<Pair> pending;
    std::set<std::pair<int, int>> pending_ix;
    auto push_pair = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        Pair p{detail::even_mono_lcm(g[i].lt(), g[j].lt(), ring).wdeg, i, j};
        pending.insert(p);
        pending_ix.emplace(i, j);
    };
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(g.size()); ++j) push_pair(i, j);

    auto is_pending = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return pending_ix.count({i, j}) != 0;
    };

    while (!pending.empty()) {
        Pair p = *pending.begin();
        pending.erase(pending.begin());
        pending_ix.erase({p.i, p.j});
        const EvenMono& lti = g[p.i].lt();
        const EvenMono& ltj = g[p.j].lt();
        EvenMono lcm = detail::even_mono_lcm(lti, ltj, ring);
        // coprime criterion
        if (lcm.wdeg == lti.wdeg + ltj.wdeg) {
            bool coprime = true;
            for (std::size_t k = 0; k < lcm.e.size(); ++k)
                if (lti.e[k] > 0 && ltj.e[k] > 0) coprime = false;
            if (coprime) continue;
        }
        // chain criterion: some k with LT_k | lcm and both companion pairs done
        bool skip = false;
        for (int k = 0; k < static_cast<int>(g.size()) && !skip; ++k) {
            if (k == p.i || k == p.j) continue;
            if (detail::even_mono_divides(g[k].lt(), lcm) &&
                !is_pending(p.i, k) && !is_pending(p.j, k))
                skip = true;
        }
        if (skip) continue;

        EvenPoly s = detail::even_mul_term(g[p.i], detail::even_mono_div(lcm, lti),
                                           Rational(1));
        detail::even_sub(s, detail::even_mul_term(
                                g[p.j], detail::even_mono_div(lcm, ltj), Rational(1)));
        EvenPoly r = normal_form(g, std::move(s));
        if (r.is_zero()) continue;
        Rational inv = Rational(1) / r.lc();
        for (auto& [m, c] : r.terms) c *= inv;
        g.push_back(std::move(r));
        int fresh = static_cast<int>(g.size()) - 1;
        for (int i = 0; i < fresh; ++i) push_pair(i, fresh);
    }

    // minimalize: drop elements whose leading term another leading term divides
    std::vector<int> order(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return GrevlexLess{}(g[a].lt(), g[b].lt());
    });
    std::vector<EvenPoly> minimal;
    for (int ix : order) {
        bool dominated = false;
        for (const auto& kept : minimal)
            if (detail::even_mono_divides(kept.lt(), g[ix].lt())) dominated = true;
        if (!dominated) minimal.push_back(g[ix]);
    }
    // interreduce tails
    GroebnerBasis out;
    out.ring = ring;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<EvenPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        EvenPoly r = normal_form(others, minimal[i]);
        if (r.is_zero())
            throw InternalError("groebner: minimal element reduced to zero");
        Rational inv = Rational(1) / r.lc();
        for (auto& [m, c] : r.terms) c *= inv;
        out.polys.push_back(std::move(r));
    }
    std::sort(out.polys.begin(), out.polys.end(), [](const EvenPoly& a, const EvenPoly& b) {
        return GrevlexLess{}(a.lt(), b.lt());
    });
    return out;
}

struct ZeroDimReport {
    bool zero_dimensional = false;
    std::optional<long> quotient_dim;            // count of standard monomials
    std::vector<int> pure_power_caps;            // per variable, -1 when absent
    long top_standard_wdeg = 0;
};

// Zero-dimensional iff every variable has a pure power among the leading
// terms; the standard monomials are then enumerated and counted.
inline ZeroDimReport is_zero_dimensional(const GroebnerBasis& gb) {
    const EvenRing& ring = gb.ring;
    ZeroDimReport rep;
    std::size_t n = ring.nvars();
    rep.pure_power_caps.assign(n, -1);

    for (const auto& p : gb.polys) {
        const EvenMono& lt = p.lt();
        if (lt.wdeg == 0) { // the whole ring: quotient is zero
            rep.zero_dimensional = true;
            rep.quotient_dim = 0;
            for (auto& c : rep.pure_power_caps) c = 0;
            return rep;
        }
        int nz = -1;
        bool pure = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (lt.e[i] == 0) continue;
            if (nz >= 0) { pure = false; break; }
            nz = static_cast<int>(i);
        }
        if (pure && nz >= 0) {
            int& cap = rep.pure_power_caps[nz];
            if (cap < 0 || lt.e[nz] < cap) cap = lt.e[nz];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (rep.pure_power_caps[i] < 0) return rep; // infinite quotient

    // count exponent vectors below the caps that no leading term divides
    std::vector<EvenMono> lts;
    for (const auto& p : gb.polys) lts.push_back(p.lt());
    long count = 0;
    EvenMono probe;
    probe.e.assign(n, 0);
    auto rec = [&](auto&& self, std::size_t var) -> void {
        if (var == n) {
            for (const auto& lt : lts)
                if (detail::even_mono_divides(lt, probe)) return;
            ++count;
            long wdeg = 0;
            for (std::size_t i = 0; i < n; ++i)
                wdeg += static_cast<long>(probe.e[i]) * ring.weights[i];
            rep.top_standard_wdeg = std::max(rep.top_standard_wdeg, wdeg);
            return;
        }
        for (int e = 0; e < rep.pure_power_caps[var]; ++e) {
            probe.e[var] = e;
            self(self, var + 1);
        }
        probe.e[var] = 0;
    };
    rec(rec, 0);
    rep.zero_dimensional = true;
    rep.quotient_dim = count;
    return rep;
}

// ---------------------------------------------------------------------------
// Ellipticity decision
// ---------------------------------------------------------------------------

struct EllipticityReport {
    bool elliptic = false;
    bool purely_odd = false;
    std::optional<long> quotient_dim;  // nullopt = infinite
    std::optional<GroebnerBasis> gb;
    std::vector<std::string> groebner_printed;
    std::vector<std::pair<std::string, std::string>> witnesses; // (var, pure power)

    EllipticEvidence evidence() const { return EllipticEvidence{elliptic}; }
};

// Finite-dimensionality of H(Lambda W, d) decided on the associated pure
// model: elliptic iff Lambda(W^even)/(d_sigma W^odd) is zero-dimensional.
inline EllipticityReport is_elliptic(const SullivanModel& m) {
    StructureReport sr = check_differential(m);
    if (!sr.d_squared_zero)
        throw ContractError("is_elliptic: d^2 != 0 on generator '" +
                            sr.d_squared_failures.front() + "'");
    EllipticityReport rep;
    PureModel pure = associated_pure(m);
    PolynomialIdeal ideal = pure_part_ideal(pure);

    if (ideal.ring.nvars() == 0) {
        // finite exterior algebra
        rep.elliptic = true;
        rep.purely_odd = true;
        rep.quotient_dim = 1;
        return rep;
    }
    if (ideal.gens.empty()) {
        rep.elliptic = false;
        rep.quotient_dim = std::nullopt;
        return rep;
    }
    GroebnerBasis gb = groebner(ideal);
    ZeroDimReport zd = is_zero_dimensional(gb);
    for (const auto& p : gb.polys)
        rep.groebner_printed.push_back(even_poly_str(ideal.ring, p));
    rep.elliptic = zd.zero_dimensional;
    rep.quotient_dim = zd.quotient_dim;
    if (rep.elliptic) {
        // smallest pure power of each variable that reduces to zero; it
        // exists because the ideal is weighted-homogeneous and zero-dim
        for (std::size_t i = 0; i < ideal.ring.nvars(); ++i) {
            int w = ideal.ring.weights[i];
            int bound = static_cast<int>(zd.top_standard_wdeg / w) + 1;
            bool found = false;
            for (int k = 1; k <= bound && !found; ++k) {
                EvenMono pw;
                pw.e.assign(ideal.ring.nvars(), 0);
                pw.e[i] = k;
                pw.wdeg = static_cast<long>(k) * w;
                EvenPoly f;
                f.add(pw, Rational(1));
                if (normal_form(gb, f).is_zero()) {
                    rep.witnesses.emplace_back(ideal.ring.names[i],
                                               even_mono_str(ideal.ring, pw));
                    found = true;
                }
            }
            if (!found)
                throw InternalError("no pure-power witness for variable " +
                                    ideal.ring.names[i]);
        }
    }
    rep.gb = std::move(gb);
    return rep;
}

} // namespace sullivan
