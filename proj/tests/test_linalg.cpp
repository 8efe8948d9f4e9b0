#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sullivan/linalg.hpp"
#include "sullivan/random_model.hpp"

using namespace sullivan;

namespace {

std::vector<QVec> random_matrix(SplitMix64& rng, int rows, int cols) {
    std::vector<QVec> m(rows, QVec(cols, Rational(0)));
    for (auto& row : m)
        for (auto& x : row)
            if (rng.range(0, 2) == 0)
                x = Rational(rng.range(-4, 4), rng.range(1, 3));
    return m;
}

std::vector<IntRow> to_sparse(const std::vector<QVec>& m) {
    std::vector<IntRow> rows;
    for (const auto& row : m) {
        std::vector<std::pair<int, Rational>> entries;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (sgn(row[j]) != 0) entries.emplace_back(static_cast<int>(j), row[j]);
        if (!entries.empty()) rows.push_back(to_int_row(entries));
    }
    return rows;
}

} // namespace

TEST_CASE("fraction-free and dense elimination agree on random matrices") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = static_cast<int>(rng.range(1, 9));
        int cols = static_cast<int>(rng.range(1, 9));
        auto m = random_matrix(rng, rows, cols);
        CHECK(sparse_rank(to_sparse(m), cols) == dense_rank(m));
    }
}

TEST_CASE("rank handles structured matrices") {
    // identity, duplicated rows, zero matrix
    std::vector<QVec> id(5, QVec(5, Rational(0)));
    for (int i = 0; i < 5; ++i) id[i][i] = 1;
    CHECK(sparse_rank(to_sparse(id), 5) == 5);

    std::vector<QVec> dup(4, QVec(3, Rational(1)));
    CHECK(sparse_rank(to_sparse(dup), 3) == 1);
    CHECK(sparse_rank({}, 7) == 0);
}

TEST_CASE("kernel vectors annihilate the matrix") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = static_cast<int>(rng.range(1, 7));
        int cols = static_cast<int>(rng.range(1, 7));
        auto m = random_matrix(rng, rows, cols);
        auto kernel = kernel_basis(m, cols);
        CHECK(static_cast<long>(kernel.size()) == cols - dense_rank(m));
        for (const auto& k : kernel)
            for (const auto& row : m) {
                Rational s = 0;
                for (int j = 0; j < cols; ++j) s += row[j] * k[j];
                CHECK(sgn(s) == 0);
            }
    }
}

TEST_CASE("rref basis reports exact coordinates") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = static_cast<int>(rng.range(2, 6));
        RrefBasis basis(dim);
        std::vector<QVec> inserted;
        for (int k = 0; k < 2 * dim; ++k) {
            QVec v(dim);
            for (auto& x : v) x = Rational(rng.range(-3, 3));
            inserted.push_back(v);
            basis.insert(v);
        }
        // build a random combination and recover its coordinates
        QVec combo(dim, Rational(0));
        QVec coeffs(inserted.size());
        for (std::size_t i = 0; i < inserted.size(); ++i) {
            coeffs[i] = Rational(rng.range(-2, 2));
            for (int j = 0; j < dim; ++j) combo[j] += coeffs[i] * inserted[i][j];
        }
        auto red = basis.reduce(combo);
        for (const auto& x : red.residue) CHECK(sgn(x) == 0);
        // the reported coordinates rebuild the vector
        QVec rebuild(dim, Rational(0));
        for (std::size_t i = 0; i < inserted.size(); ++i)
            for (int j = 0; j < dim; ++j)
                rebuild[j] += red.coords[i] * inserted[i][j];
        CHECK(rebuild == combo);
    }
}

TEST_CASE("matrix inverse") {
    std::vector<QVec> a = {{Rational(0), Rational(1), Rational(0)},
                           {Rational(0), Rational(0), Rational(1)},
                           {Rational(1), Rational(-1), Rational(-1)}};
    auto b = inverse(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            CHECK(s == Rational(i == j ? 1 : 0));
        }
    std::vector<QVec> sing(2, QVec(2, Rational(1)));
    CHECK_THROWS_AS(inverse(sing), InternalError);
}
