#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "sullivan/generator_table.hpp"

namespace sullivan {

// Canonical graded-commutative monomial: factors sorted by generator id,
// exponents >= 1, odd generators with exponent exactly 1. The empty factor
// list is the unit.
struct Monomial {
    std::vector<std::pair<GenId, int>> factors;
    int degree = 0;

    bool is_unit() const { return factors.empty(); }

    int exponent(GenId g) const {
        for (const auto& [id, e] : factors)
            if (id == g) return e;
        return 0;
    }
    bool contains(GenId g) const { return exponent(g) > 0; }

    // Total number of generator factors counted with multiplicity.
    int length() const {
        int n = 0;
        for (const auto& [id, e] : factors) n += e;
        return n;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors == b.factors;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) {
        return !(a == b);
    }
};

// Canonical order: total degree first, then exponent vectors compared
// lexicographically by generator id (smaller exponent at the first
// differing id sorts earlier). Deterministic for all outputs.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        auto ia = a.factors.begin(), ib = b.factors.begin();
        while (ia != a.factors.end() || ib != b.factors.end()) {
            GenId ga = ia != a.factors.end() ? ia->first : ~GenId{0};
            GenId gb = ib != b.factors.end() ? ib->first : ~GenId{0};
            if (ga == gb) {
                if (ia->second != ib->second) return ia->second < ib->second;
                ++ia; ++ib;
            } else if (ga < gb) {
                // a has a positive exponent where b has zero
                return false;
            } else {
                return true;
            }
        }
        return false;
    }
};

inline Monomial unit_monomial() { return Monomial{}; }

inline Monomial monomial_of_generator(const GeneratorTable& t, GenId g) {
    return Monomial{{{g, 1}}, t.degree(g)};
}

// Builds a canonical monomial from sorted factors; returns nullopt when an
// odd generator appears with exponent >= 2 (the monomial is zero).
inline std::optional<Monomial> make_monomial(const GeneratorTable& t,
                                             std::vector<std::pair<GenId, int>> sorted) {
    Monomial m;
    for (auto& [id, e] : sorted) {
        if (e == 0) continue;
        if (e < 0) throw StructuralError("negative exponent in monomial");
        if (t.odd(id) && e > 1) return std::nullopt;
        m.degree += e * t.degree(id);
        m.factors.emplace_back(id, e);
    }
    return m;
}

// Graded-commutative product of canonical monomials. Returns the Koszul
// sign and the product, or nullopt when the product vanishes (a shared odd
// generator). The sign is (-1)^k where k counts pairs of odd factors
// (x in a, y in b) with id(x) > id(y) — the transpositions needed to merge.
inline std::optional<std::pair<int, Monomial>>
monomial_mul(const GeneratorTable& t, const Monomial& a, const Monomial& b) {
    Monomial out;
    out.degree = a.degree + b.degree;
    out.factors.reserve(a.factors.size() + b.factors.size());

    // Odd ids of a in ascending order, for counting crossings.
    std::vector<GenId> odd_a;
    for (const auto& [id, e] : a.factors)
        if (t.odd(id)) odd_a.push_back(id);

    long crossings = 0;
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
            out.factors.push_back(*ia++);
        } else if (ia == a.factors.end() || ib->first < ia->first) {
            const auto [id, e] = *ib++;
            if (t.odd(id)) {
                // count odd factors of a strictly above id
                auto it = std::upper_bound(odd_a.begin(), odd_a.end(), id);
                crossings += odd_a.end() - it;
            }
            out.factors.emplace_back(id, e);
        } else {
            if (t.odd(ia->first)) return std::nullopt; // odd squared
            out.factors.emplace_back(ia->first, ia->second + ib->second);
            ++ia; ++ib;
        }
    }
    return std::make_pair(crossings % 2 == 0 ? 1 : -1, std::move(out));
}

// Removes one power of g from m. Precondition: m contains g.
inline Monomial monomial_remove_one(const GeneratorTable& t, const Monomial& m,
                                    GenId g) {
    Monomial out;
    out.degree = m.degree - t.degree(g);
    for (const auto& [id, e] : m.factors) {
        int keep = (id == g) ? e - 1 : e;
        if (keep > 0) out.factors.emplace_back(id, keep);
    }
    return out;
}

// For odd g contained in m, writes m = sign * g * rest and returns
// (sign, rest). The sign counts the odd factors preceding g.
inline std::pair<int, Monomial> monomial_strip_front(const GeneratorTable& t,
                                                     const Monomial& m, GenId g) {
    int odd_before = 0;
    for (const auto& [id, e] : m.factors) {
        if (id >= g) break;
        if (t.odd(id)) odd_before += e;
    }
    Monomial rest = monomial_remove_one(t, m, g);
    return {odd_before % 2 == 0 ? 1 : -1, rest};
}

} // namespace sullivan
