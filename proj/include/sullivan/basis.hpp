#pragma once

#include <limits>
#include <vector>

#include "sullivan/monomial.hpp"

namespace sullivan {

// All monomials of total degree exactly n, sorted in the canonical order.
// Degree 0 yields exactly the unit.
inline std::vector<Monomial> degree_basis(const GeneratorTable& t, int n) {
    if (n < 0) throw ContractError("degree_basis: negative degree");
    std::vector<Monomial> out;
    std::vector<std::pair<GenId, int>> stack;
    auto rec = [&](auto&& self, GenId id, int remaining) -> void {
        if (id == t.size()) {
            if (remaining == 0) {
                Monomial m;
                m.factors = stack;
                m.degree = n;
                out.push_back(std::move(m));
            }
            return;
        }
        int d = t.degree(id);
        int max_e = t.odd(id) ? 1 : remaining / d;
        if (d > remaining) max_e = 0;
        self(self, id + 1, remaining); // exponent 0
        for (int e = 1; e <= max_e; ++e) {
            stack.emplace_back(id, e);
            self(self, id + 1, remaining - e * d);
            stack.pop_back();
        }
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

// Monomial counts per degree 0..N via the generating function
// prod_odd (1+t^d) * prod_even 1/(1-t^d), with saturating arithmetic.
inline std::vector<unsigned long long> basis_size_table(const GeneratorTable& t, int N) {
    constexpr unsigned long long kSat = std::numeric_limits<unsigned long long>::max();
    auto sat_add = [](unsigned long long a, unsigned long long b) {
        return (kSat - a < b) ? kSat : a + b;
    };
    std::vector<unsigned long long> ways(static_cast<std::size_t>(N) + 1, 0);
    ways[0] = 1;
    for (GenId id = 0; id < t.size(); ++id) {
        int d = t.degree(id);
        if (t.odd(id)) {
            for (int k = N; k >= d; --k)
                ways[k] = sat_add(ways[k], ways[k - d]);
        } else {
            for (int k = d; k <= N; ++k)
                ways[k] = sat_add(ways[k], ways[k - d]);
        }
    }
    return ways;
}

} // namespace sullivan
