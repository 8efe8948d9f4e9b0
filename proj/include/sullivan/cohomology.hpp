#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

// Default guard: refuse degree-wise computations whose cumulative monomial
// count exceeds this (overridable per call / --cap on the CLI).
inline constexpr unsigned long long kDefaultBasisCap = 64ull * 1000 * 1000;

class BasisCache {
public:
    explicit BasisCache(const SullivanModel& m) : model_(&m) {}

    const std::vector<Monomial>& basis(int n) {
        auto it = bases_.find(n);
        if (it == bases_.end())
            it = bases_.emplace(n, degree_basis(model_->gens(), n)).first;
        return it->second;
    }

    int index_of(int n, const Monomial& m) {
        auto& idx = index_[n];
        if (idx.empty()) {
            const auto& b = basis(n);
            for (std::size_t i = 0; i < b.size(); ++i)
                idx.emplace(b[i], static_cast<int>(i));
        }
        auto it = idx.find(m);
        if (it == idx.end())
            throw InternalError("monomial missing from degree basis");
        return it->second;
    }

    const SullivanModel& model() const { return *model_; }

private:
    const SullivanModel* model_;
    std::map<int, std::vector<Monomial>> bases_;
    std::map<int, std::map<Monomial, int, MonomialOrder>> index_;
};

// The differential in canonical bases at one degree: columns indexed by
// basis(n), rows by basis(n+1).
struct DegreeSlice {
    int degree = 0;
    std::vector<Monomial> basis;
    std::vector<Monomial> next_basis;
    std::vector<std::vector<std::pair<int, Rational>>> d_columns;
};

inline DegreeSlice build_degree_slice(BasisCache& cache, int n) {
    const SullivanModel& m = cache.model();
    DegreeSlice slice;
    slice.degree = n;
    slice.basis = cache.basis(n);
    slice.next_basis = cache.basis(n + 1);
    Derivation d = m.d();
    slice.d_columns.resize(slice.basis.size());
    for (std::size_t j = 0; j < slice.basis.size(); ++j) {
        Polynomial img = apply_derivation(d, slice.basis[j], Rational(1));
        for (const auto& [mono, c] : img.terms())
            slice.d_columns[j].emplace_back(cache.index_of(n + 1, mono), c);
    }
    return slice;
}

namespace detail {

// rank of d_n, by fraction-free elimination on rows (one per domain monomial)
inline long rank_d(BasisCache& cache, int n) {
    if (n < 0) return 0;
    DegreeSlice slice = build_degree_slice(cache, n);
    std::vector<IntRow> rows;
    rows.reserve(slice.d_columns.size());
    for (const auto& col : slice.d_columns)
        if (!col.empty()) rows.push_back(to_int_row(col));
    return sparse_rank(std::move(rows), static_cast<int>(slice.next_basis.size()));
}

inline void check_cap(const GeneratorTable& t, int max_degree,
                      unsigned long long cap) {
    auto sizes = basis_size_table(t, max_degree);
    unsigned long long sum = 0;
    for (int n = 0; n <= max_degree; ++n) {
        unsigned long long prev = sum;
        sum += sizes[n];
        if (sum < prev || sum > cap)
            throw ResourceCapError(n, sum < prev ? ~0ull : sum, cap);
    }
}

} // namespace detail

inline long betti(const SullivanModel& m, int n,
                  unsigned long long cap = kDefaultBasisCap) {
    if (n < 0) throw ContractError("betti: negative degree");
    detail::check_cap(m.gens(), n + 1, cap);
    BasisCache cache(m);
    long dim_n = static_cast<long>(cache.basis(n).size());
    return dim_n - detail::rank_d(cache, n) - detail::rank_d(cache, n - 1);
}

struct BettiTable {
    std::vector<long> b;  // dims for degrees 0..max_degree
    int max_degree = -1;
    long total = 0;
    bool complete = false; // max_degree >= formal dimension of an elliptic model

    long at(int n) const {
        return (n >= 0 && n <= max_degree) ? b[n] : 0;
    }
};

inline BettiTable betti_table(const SullivanModel& m, int max_degree,
                              EllipticEvidence ev = {},
                              unsigned long long cap = kDefaultBasisCap) {
    if (max_degree < 0) throw ContractError("betti_table: negative degree");
    detail::check_cap(m.gens(), max_degree + 1, cap);
    BasisCache cache(m);
    BettiTable out;
    out.max_degree = max_degree;
    out.b.resize(max_degree + 1, 0);
    long prev_rank = 0; // rank of d_{n-1}
    for (int n = 0; n <= max_degree; ++n) {
        long rank_n = detail::rank_d(cache, n);
        out.b[n] = static_cast<long>(cache.basis(n).size()) - rank_n - prev_rank;
        out.total += out.b[n];
        prev_rank = rank_n;
    }
    out.complete = ev.verified && max_degree >= formal_dimension(m, ev);
    return out;
}

// Chosen cohomology basis in one degree: the cocycle space reduced against
// the boundary space, in canonical monomial order.
struct CohomologySlice {
    int degree = 0;
    std::vector<Monomial> basis;          // cochain basis
    std::vector<Polynomial> reps;         // representative cocycles
    RrefBasis span{0};                    // boundaries, then representatives
    std::vector<int> rep_slots;

    int dim() const { return static_cast<int>(reps.size()); }
};

inline QVec to_dense(BasisCache& cache, int n, const Polynomial& p,
                     std::size_t width) {
    QVec v(width, Rational(0));
    for (const auto& [mono, c] : p.terms())
        v[cache.index_of(n, mono)] = c;
    return v;
}

inline CohomologySlice cohomology_slice(BasisCache& cache, int n) {
    const SullivanModel& m = cache.model();
    CohomologySlice out;
    out.degree = n;
    out.basis = cache.basis(n);
    std::size_t width = out.basis.size();
    out.span = RrefBasis(width);

    // boundary space: images of the previous degree
    if (n >= 1) {
        DegreeSlice prev = build_degree_slice(cache, n - 1);
        for (const auto& col : prev.d_columns) {
            if (col.empty()) continue;
            QVec v(width, Rational(0));
            for (const auto& [row, c] : col) v[row] = c;
            out.span.insert(v);
        }
    }

    // cocycles: kernel of d_n as equation rows over basis(n)
    DegreeSlice cur = build_degree_slice(cache, n);
    std::vector<QVec> eqs(cur.next_basis.size(), QVec(width, Rational(0)));
    for (std::size_t j = 0; j < cur.d_columns.size(); ++j)
        for (const auto& [row, c] : cur.d_columns[j]) eqs[row][j] = c;
    for (const auto& z : kernel_basis(std::move(eqs), width)) {
        auto [slot, enlarged] = out.span.insert(z);
        if (!enlarged) continue;
        Polynomial rep(m.table());
        for (std::size_t j = 0; j < width; ++j)
            if (sgn(z[j]) != 0) rep.add_term(out.basis[j], z[j]);
        out.reps.push_back(std::move(rep));
        out.rep_slots.push_back(slot);
    }
    return out;
}

// Coordinates of a cocycle's class in the slice's chosen basis.
inline QVec class_coords(BasisCache& cache, const CohomologySlice& slice,
                         const Polynomial& cocycle) {
    QVec v = to_dense(cache, slice.degree, cocycle, slice.basis.size());
    auto red = slice.span.reduce(std::move(v));
    for (const auto& x : red.residue)
        if (sgn(x) != 0)
            throw ContractError("class_coords: vector is not a cocycle modulo "
                                "boundaries in this degree");
    QVec coords(slice.reps.size());
    for (std::size_t i = 0; i < slice.rep_slots.size(); ++i)
        coords[i] = red.coords[slice.rep_slots[i]];
    return coords;
}

// Matrix of the map induced on cohomology by a derivation commuting with d,
// over a degree window 0..max_degree.
struct InducedMap {
    int theta_degree = 0;
    int max_degree = 0;
    std::map<int, long> dim_h;                     // per degree
    std::map<int, std::vector<QVec>> matrices;     // rows of M_n: H^n -> H^{n+t}
    std::map<int, long> rank;                      // of M_n
    long total_h = 0;
    long total_rank = 0;

    long dim_ker(int n) const {
        auto h = dim_h.count(n) ? dim_h.at(n) : 0;
        auto r = rank.count(n) ? rank.at(n) : 0;
        return h - r;
    }
    long dim_coker(int k) const {
        auto h = dim_h.count(k) ? dim_h.at(k) : 0;
        auto r = rank.count(k - theta_degree) ? rank.at(k - theta_degree) : 0;
        return h - r;
    }
    long total_ker() const { return total_h - total_rank; }
    long total_coker() const { return total_h - total_rank; }
};

inline InducedMap induced_map_on_h(const SullivanModel& m, const Derivation& theta,
                                   int max_degree,
                                   unsigned long long cap = kDefaultBasisCap) {
    // d theta - (-1)^{|theta|} theta d must vanish on generators
    Derivation d = m.d();
    int sign = theta.degree % 2 == 0 ? 1 : -1;
    for (GenId g = 0; g < m.generator_count(); ++g) {
        Polynomial lhs = apply_derivation(d, theta.value(g));
        Polynomial rhs = apply_derivation(theta, m.differential(g));
        if (sign < 0) rhs = -rhs;
        if (lhs - rhs != Polynomial())
            throw ContractError("derivation does not commute with d at generator '" +
                                m.gens().name(g) + "'");
    }
    detail::check_cap(m.gens(), max_degree + 1, cap);

    BasisCache cache(m);
    std::map<int, CohomologySlice> slices;
    for (int n = 0; n <= max_degree; ++n)
        slices.emplace(n, cohomology_slice(cache, n));

    InducedMap out;
    out.theta_degree = theta.degree;
    out.max_degree = max_degree;
    for (int n = 0; n <= max_degree; ++n) {
        const CohomologySlice& src = slices.at(n);
        out.dim_h[n] = src.dim();
        out.total_h += src.dim();
        int target = n + theta.degree;
        std::vector<QVec> cols;
        for (const auto& rep : src.reps) {
            Polynomial img = apply_derivation(theta, rep);
            if (target < 0 || target > max_degree) {
                if (!img.is_zero())
                    throw ContractError("induced map leaves the degree window");
                cols.push_back(QVec{});
                continue;
            }
            cols.push_back(class_coords(cache, slices.at(target), img));
        }
        long h_target = (target >= 0 && target <= max_degree)
                            ? slices.at(target).dim() : 0;
        std::vector<QVec> rows(h_target, QVec(src.dim(), Rational(0)));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i)
                rows[i][j] = cols[j][i];
        out.rank[n] = dense_rank(rows);
        out.total_rank += out.rank[n];
        out.matrices[n] = std::move(rows);
    }
    return out;
}

struct DualityReport {
    bool holds = false;
    int formal_dim = 0;
    std::vector<std::pair<int, int>> violations; // degrees n with b_n != b_{D-n}
};

// Dimension symmetry b_n = b_{D-n}; the cup pairing is not examined.
inline DualityReport poincare_duality_check(const SullivanModel& m,
                                            EllipticEvidence ev,
                                            unsigned long long cap = kDefaultBasisCap) {
    DualityReport rep;
    rep.formal_dim = formal_dimension(m, ev);
    BettiTable bt = betti_table(m, rep.formal_dim, ev, cap);
    rep.holds = true;
    for (int n = 0; n <= rep.formal_dim; ++n) {
        if (bt.at(n) != bt.at(rep.formal_dim - n)) {
            rep.holds = false;
            rep.violations.emplace_back(n, rep.formal_dim - n);
        }
    }
    return rep;
}

} // namespace sullivan
