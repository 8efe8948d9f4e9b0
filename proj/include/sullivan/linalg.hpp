#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

using QVec = std::vector<Rational>;

// Sparse integer row: (column, value) sorted by column.
using IntRow = std::vector<std::pair<int, BigInt>>;

// Clears denominators of a rational row (scaling a row does not change
// rank or kernel membership of the matrix it belongs to).
inline IntRow to_int_row(const std::vector<std::pair<int, Rational>>& row) {
    BigInt lcm = 1;
    for (const auto& [c, v] : row) {
        BigInt den = v.get_den();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row)
        out.emplace_back(c, BigInt(v.get_num() * (lcm / v.get_den())));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace detail {

inline const BigInt* row_entry(const IntRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return &it->second;
    return nullptr;
}

// r := (p * r - f * pivot_row) / prev, all divisions exact (Bareiss).
inline IntRow bareiss_combine(const IntRow& r, const IntRow& pivot_row,
                              const BigInt& p, const BigInt& f,
                              const BigInt& prev) {
    IntRow out;
    out.reserve(r.size() + pivot_row.size());
    auto ia = r.begin();
    auto ib = pivot_row.begin();
    auto push = [&](int col, BigInt num) {
        if (sgn(num) == 0) return;
        BigInt q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                    prev.get_mpz_t());
        if (sgn(rem) != 0)
            throw InternalError("fraction-free elimination: inexact division");
        out.emplace_back(col, std::move(q));
    };
    while (ia != r.end() || ib != pivot_row.end()) {
        if (ib == pivot_row.end() || (ia != r.end() && ia->first < ib->first)) {
            push(ia->first, p * ia->second);
            ++ia;
        } else if (ia == r.end() || ib->first < ia->first) {
            push(ib->first, -f * ib->second);
            ++ib;
        } else {
            push(ia->first, p * ia->second - f * ib->second);
            ++ia; ++ib;
        }
    }
    return out;
}

} // namespace detail

// Rank by fraction-free (Bareiss) elimination. Pivots are chosen on the
// sparsest column, then the shortest row, which limits fill-in.
inline long sparse_rank(std::vector<IntRow> rows, int ncols) {
    long rank = 0;
    BigInt prev = 1;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].empty()) active.push_back(i);

    while (!active.empty()) {
        // column occupancy among active rows
        std::vector<int> count(ncols, 0);
        for (auto i : active)
            for (const auto& [c, v] : rows[i]) ++count[c];
        int pivot_col = -1;
        for (int c = 0; c < ncols; ++c)
            if (count[c] > 0 && (pivot_col < 0 || count[c] < count[pivot_col]))
                pivot_col = c;
        if (pivot_col < 0) break;

        std::size_t pivot_row = 0;
        std::size_t best_len = ~std::size_t{0};
        for (auto i : active) {
            if (detail::row_entry(rows[i], pivot_col) && rows[i].size() < best_len) {
                best_len = rows[i].size();
                pivot_row = i;
            }
        }
        const BigInt p = *detail::row_entry(rows[pivot_row], pivot_col);
        ++rank;

        std::vector<std::size_t> next;
        next.reserve(active.size());
        for (auto i : active) {
            if (i == pivot_row) continue;
            const BigInt* f = detail::row_entry(rows[i], pivot_col);
            rows[i] = detail::bareiss_combine(rows[i], rows[pivot_row], p,
                                              f ? *f : BigInt(0), prev);
            if (!rows[i].empty()) next.push_back(i);
        }
        prev = p;
        active = std::move(next);
    }
    return rank;
}

// Dense reduced row echelon form over the rationals, in place.
// Returns the pivot column of each retained row, in order.
inline std::vector<int> rref(std::vector<QVec>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rational inv = rows[r][c];
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] /= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r);
    return pivots;
}

inline long dense_rank(std::vector<QVec> rows) {
    return static_cast<long>(rref(rows).size());
}

// Kernel basis of the linear map given by equation rows (each row is one
// equation over ncols unknowns). Basis vectors are indexed by the free
// columns in ascending order.
inline std::vector<QVec> kernel_basis(std::vector<QVec> rows, std::size_t ncols) {
    for (const auto& row : rows)
        if (row.size() != ncols)
            throw InternalError("kernel_basis: ragged rows");
    std::vector<int> pivots = rref(rows);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental row space with coordinate tracking: every inserted vector is
// reduced against the current echelon rows, and each echelon row remembers
// its expression over the inserted vectors. reduce() therefore reports,
// for any vector in the span, its coordinates over the inserted family.
class RrefBasis {
public:
    explicit RrefBasis(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    int inserted_count() const { return inserted_; }

    struct Reduction {
        QVec residue;
        QVec coords; // over inserted vectors 0..inserted-1
    };

    Reduction reduce(QVec v) const {
        QVec coords(inserted_, Rational(0));
        for (const auto& row : rows_) {
            const Rational& c = v[row.pivot];
            if (sgn(c) == 0) continue;
            Rational f = c; // row is normalized to pivot 1
            for (std::size_t j = 0; j < ambient_; ++j)
                if (sgn(row.v[j]) != 0) v[j] -= f * row.v[j];
            for (int j = 0; j < inserted_; ++j)
                if (sgn(row.coords[j]) != 0) coords[j] += f * row.coords[j];
        }
        return {std::move(v), std::move(coords)};
    }

    // Returns the slot index of the vector (counting every insertion) and
    // whether it enlarged the span.
    std::pair<int, bool> insert(const QVec& v) {
        if (v.size() != ambient_) throw InternalError("RrefBasis: wrong length");
        Reduction red = reduce(v);
        int slot = inserted_++;
        for (auto& row : rows_) row.coords.push_back(Rational(0));
        red.coords.push_back(Rational(0));

        int pivot = -1;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (sgn(red.residue[j]) != 0) { pivot = static_cast<int>(j); break; }
        if (pivot < 0) return {slot, false};

        // new row = (v - sum coords*previous) / lead, so its coordinate
        // vector is (e_slot - coords) / lead
        Rational lead = red.residue[pivot];
        Row row;
        row.pivot = pivot;
        row.v = std::move(red.residue);
        for (auto& x : row.v) x /= lead;
        row.coords.assign(inserted_, Rational(0));
        for (int j = 0; j < inserted_ - 1; ++j) row.coords[j] = -red.coords[j] / lead;
        row.coords[slot] = Rational(1) / lead;

        // keep earlier rows reduced against the new pivot
        for (auto& r : rows_) {
            Rational f = r.v[pivot];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                r.v[j] -= f * row.v[j];
            for (int j = 0; j < inserted_; ++j)
                r.coords[j] -= f * row.coords[j];
        }
        rows_.push_back(std::move(row));
        return {slot, true};
    }

private:
    struct Row {
        QVec v;
        QVec coords;
        int pivot = -1;
    };
    std::size_t ambient_;
    int inserted_ = 0;
    std::vector<Row> rows_;
};

// Inverse of a square rational matrix (rows of length n). Throws when
// the matrix is singular.
inline std::vector<QVec> inverse(std::vector<QVec> rows) {
    std::size_t n = rows.size();
    for (auto& row : rows) {
        if (row.size() != n) throw InternalError("inverse: not square");
        row.resize(2 * n, Rational(0));
    }
    for (std::size_t i = 0; i < n; ++i) rows[i][n + i] = 1;
    std::vector<int> pivots = rref(rows);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= pivots.size() || pivots[i] != static_cast<int>(i))
            throw InternalError("inverse: singular matrix");
    std::vector<QVec> inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = rows[i][n + j];
    return inv;
}

} // namespace sullivan
