#pragma once

// Independent cross-check for the cohomology path. Everything here is
// deliberately written against its own representation: monomials are dense
// exponent vectors, products sort a letter word by adjacent transpositions
// with graded signs, and ranks come from plain rational Gaussian
// elimination. It shares only the model's raw data (generator degrees and
// the differential polynomials) with the library.

#include <map>
#include <vector>

#include "sullivan/model.hpp"

namespace oracle {

using sullivan::Rational;
using Exps = std::vector<int>;

struct OPoly {
    std::map<Exps, Rational> terms;

    void add(const Exps& e, const Rational& c) {
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }
};

inline std::vector<int> degrees_of(const sullivan::GeneratorTable& t) {
    std::vector<int> deg;
    for (const auto& g : t.generators()) deg.push_back(g.degree);
    return deg;
}

// letter word of a monomial: generator indices, each repeated its exponent
inline std::vector<int> word_of(const Exps& e) {
    std::vector<int> w;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) w.push_back(static_cast<int>(i));
    return w;
}

// Sorts a word by adjacent transpositions, tracking the Koszul sign; a
// repeated odd letter kills the term. Returns 0, +1 or -1.
inline int sort_word(std::vector<int>& w, const std::vector<int>& deg) {
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            if (deg[w[j]] % 2 != 0 && deg[w[j - 1]] % 2 != 0) sign = -sign;
            std::swap(w[j], w[j - 1]);
        }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && deg[w[i]] % 2 != 0) return 0;
    return sign;
}

inline Exps exps_of_word(const std::vector<int>& w, std::size_t n) {
    Exps e(n, 0);
    for (int g : w) ++e[g];
    return e;
}

inline OPoly omul(const OPoly& a, const OPoly& b, const std::vector<int>& deg) {
    OPoly out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<int> w = word_of(ea);
            std::vector<int> wb = word_of(eb);
            w.insert(w.end(), wb.begin(), wb.end());
            int sign = sort_word(w, deg);
            if (sign == 0) continue;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            out.add(exps_of_word(w, deg.size()), c);
        }
    return out;
}

inline OPoly opoly_of(const sullivan::Polynomial& p, std::size_t n) {
    OPoly out;
    for (const auto& [mono, c] : p.terms()) {
        Exps e(n, 0);
        for (const auto& [id, exp] : mono.factors) e[id] = exp;
        out.add(e, c);
    }
    return out;
}

// d of a single monomial via the letter word
inline OPoly od_monomial(const sullivan::SullivanModel& m, const Exps& e) {
    const auto deg = degrees_of(m.gens());
    std::size_t n = deg.size();
    OPoly out;
    std::vector<int> w = word_of(e);
    int prefix_deg = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const sullivan::Polynomial& dg = m.differential(w[i]);
        if (!dg.is_zero()) {
            // d(x1..xk) = sum_i (-1)^{|x1..x_{i-1}|} x1..x_{i-1} d(x_i) x_{i+1}..xk
            int sign = prefix_deg % 2 == 0 ? 1 : -1;
            std::vector<int> prefix(w.begin(), w.begin() + i);
            std::vector<int> suffix(w.begin() + i + 1, w.end());
            OPoly pre, suf;
            pre.add(exps_of_word(prefix, n), Rational(sign));
            suf.add(exps_of_word(suffix, n), Rational(1));
            OPoly term = omul(pre, opoly_of(dg, n), deg);
            term = omul(term, suf, deg);
            for (const auto& [te, tc] : term.terms) out.add(te, tc);
        }
        prefix_deg += deg[w[i]];
    }
    return out;
}

// all exponent vectors of total degree exactly k
inline std::vector<Exps> obasis(const std::vector<int>& deg, int k) {
    std::vector<Exps> out;
    Exps cur(deg.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == deg.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        int top = deg[i] % 2 != 0 ? 1 : remaining / deg[i];
        for (int e = 0; e <= top && e * deg[i] <= remaining; ++e) {
            cur[i] = e;
            self(self, i + 1, remaining - e * deg[i]);
        }
        cur[i] = 0;
    };
    rec(rec, 0, k);
    return out;
}

inline long orank(std::vector<std::vector<Rational>> rows) {
    long rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        ++rank;
        ++r;
    }
    return rank;
}

inline long orank_d(const sullivan::SullivanModel& m, int k) {
    if (k < 0) return 0;
    const auto deg = degrees_of(m.gens());
    auto dom = obasis(deg, k);
    auto cod = obasis(deg, k + 1);
    std::map<Exps, int> ix;
    for (std::size_t i = 0; i < cod.size(); ++i) ix.emplace(cod[i], i);
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : dom) {
        OPoly de = od_monomial(m, e);
        if (de.terms.empty()) continue;
        std::vector<Rational> row(cod.size(), Rational(0));
        for (const auto& [te, tc] : de.terms) row[ix.at(te)] = tc;
        rows.push_back(std::move(row));
    }
    return orank(std::move(rows));
}

inline long obetti(const sullivan::SullivanModel& m, int k) {
    const auto deg = degrees_of(m.gens());
    long dim = static_cast<long>(obasis(deg, k).size());
    return dim - orank_d(m, k) - orank_d(m, k - 1);
}

} // namespace oracle
