#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sullivan/cohomology.hpp"
#include "sullivan/purity.hpp"
#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"

using namespace sullivan;

TEST_CASE("betti numbers of the smallest family member") {
    auto m2 = fixtures::mn_family(2);
    CHECK(betti(m2, 0) == 1);
    CHECK(betti(m2, 3) == 2);
    CHECK(betti(m2, 5) == 0);
    CHECK(betti(m2, 6) == 0);
    CHECK(betti(m2, 8) == 2);
    CHECK(betti(m2, 11) == 1);
    auto bt = betti_table(m2, 11, is_elliptic(m2).evidence());
    CHECK(bt.total == 6);
    CHECK(bt.complete);

    auto s3 = fixtures::corpus_model("s3.model");
    CHECK(betti(s3, 3) == 1);
    CHECK(betti(s3, 0) == 1);
}

TEST_CASE("degree slices satisfy rank-nullity and compose to zero") {
    auto m = fixtures::corpus_model("ex3.2.model");
    BasisCache cache(m);
    for (int n = 0; n <= 12; ++n) {
        DegreeSlice s = build_degree_slice(cache, n);
        std::vector<QVec> eqs(s.next_basis.size(), QVec(s.basis.size(), Rational(0)));
        for (std::size_t j = 0; j < s.d_columns.size(); ++j)
            for (const auto& [row, c] : s.d_columns[j]) eqs[row][j] = c;
        long rank = dense_rank(eqs);
        long nullity = static_cast<long>(kernel_basis(eqs, s.basis.size()).size());
        CHECK(rank + nullity == static_cast<long>(s.basis.size()));
        // d_{n+1} after d_n vanishes columnwise
        DegreeSlice next = build_degree_slice(cache, n + 1);
        Derivation d = m.d();
        for (const auto& mono : s.basis) {
            Polynomial dd = apply_derivation(
                d, apply_derivation(d, mono, Rational(1)));
            CHECK(dd.is_zero());
        }
    }
}

TEST_CASE("sparse path agrees with the dense oracle on the corpus") {
    for (const char* file : {"m2.model", "m3.model", "ex3.2.model",
                             "lemma.model", "ex3.5-n2.model"}) {
        auto m = fixtures::corpus_model(file);
        auto ev = is_elliptic(m).evidence();
        int fd = formal_dimension(m, ev);
        auto bt = betti_table(m, fd, ev);
        for (int n = 0; n <= fd; ++n)
            CHECK(bt.at(n) == oracle::obetti(m, n));
    }
}

TEST_CASE("euler characteristic telescopes for odd-only models") {
    for (const char* file : {"m2.model", "m3.model", "ex3.5-n2.model"}) {
        auto m = fixtures::corpus_model(file);
        auto ev = is_elliptic(m).evidence();
        int fd = formal_dimension(m, ev);
        auto bt = betti_table(m, fd, ev);
        auto sizes = basis_size_table(m.gens(), fd);
        long chain = 0, homology = 0;
        for (int n = 0; n <= fd; ++n) {
            long sgn_n = n % 2 == 0 ? 1 : -1;
            chain += sgn_n * static_cast<long>(sizes[n]);
            homology += sgn_n * bt.at(n);
        }
        CHECK(chain == homology);
    }
}

TEST_CASE("poincare duality dimension symmetry on elliptic corpus models") {
    for (const char* file : {"m2.model", "m3.model", "ex3.1.model",
                             "ex3.2.model", "ex3.4m.model", "ex3.4n.model",
                             "ex3.5-n2.model", "lemma.model", "s3.model"}) {
        auto m = fixtures::corpus_model(file);
        auto rep = poincare_duality_check(m, is_elliptic(m).evidence());
        CHECK(rep.holds);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("induced map of the zero derivation") {
    auto m2 = fixtures::mn_family(2);
    Derivation zero{m2.table(), -2, {}};
    auto im = induced_map_on_h(m2, zero, 11);
    CHECK(im.total_h == 6);
    CHECK(im.total_rank == 0);
    CHECK(im.total_ker() == 6);
    CHECK(im.total_coker() == 6);
}

TEST_CASE("induced map rejects non-commuting derivations") {
    auto m2 = fixtures::mn_family(2);
    // theta(u1) = 1 fails to commute at v12: theta(d v12) = u2 != 0
    std::vector<Polynomial> values(3);
    values[0] = Polynomial::unit(m2.table());
    Derivation theta = make_derivation(m2.table(), -3, values);
    CHECK_THROWS_WITH_AS(induced_map_on_h(m2, theta, 11),
                         doctest::Contains("v12"), ContractError);
}

TEST_CASE("class coordinates live in the chosen basis") {
    auto m2 = fixtures::mn_family(2);
    BasisCache cache(m2);
    auto slice = cohomology_slice(cache, 3);
    REQUIRE(slice.dim() == 2);
    auto t = m2.table();
    QVec c1 = class_coords(cache, slice, parse_polynomial(t, "u1 - 7*u2"));
    QVec c2 = class_coords(cache, slice, parse_polynomial(t, "u2"));
    // the two coordinate vectors must be independent
    std::vector<QVec> mat = {c1, c2};
    CHECK(dense_rank(mat) == 2);
    // a coboundary has zero coordinates in degree 6
    auto slice6 = cohomology_slice(cache, 6);
    CHECK(slice6.dim() == 0);
    QVec zero = class_coords(cache, slice6, parse_polynomial(t, "u1*u2"));
    CHECK(zero.empty());
    // non-cocycles are rejected
    CHECK_THROWS_AS(class_coords(cache, cohomology_slice(cache, 5),
                                 parse_polynomial(t, "v12")),
                    ContractError);
}

TEST_CASE("resource guard reports the blow-up degree") {
    auto m = parse_model("gen w : 2\n");
    CHECK_THROWS_AS(betti_table(m, 40, EllipticEvidence{}, 10), ResourceCapError);
    try {
        betti_table(m, 40, EllipticEvidence{}, 10);
    } catch (const ResourceCapError& e) {
        CHECK(e.degree <= 20);
        CHECK(e.requested > 10);
    }
    // generous cap passes
    CHECK_NOTHROW(betti_table(m, 10, EllipticEvidence{}, 1000));
}

TEST_CASE("machine-readable claims about completeness") {
    auto m2 = fixtures::mn_family(2);
    auto ev = is_elliptic(m2).evidence();
    CHECK(betti_table(m2, 11, ev).complete);
    CHECK(!betti_table(m2, 10, ev).complete);
    CHECK(!betti_table(m2, 11, EllipticEvidence{}).complete);
    // above the formal dimension everything vanishes
    auto bt = betti_table(m2, 16, ev);
    for (int n = 12; n <= 16; ++n) CHECK(bt.at(n) == 0);
}
