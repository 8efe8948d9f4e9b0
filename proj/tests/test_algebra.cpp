#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sullivan/basis.hpp"
#include "sullivan/parse.hpp"
#include "sullivan/polynomial.hpp"
#include "sullivan/random_model.hpp"

using namespace sullivan;

namespace {

TablePtr odd3() { return make_table({{"u1", 3}, {"u2", 3}, {"v12", 5}}); }

Polynomial P(const TablePtr& t, const std::string& s) {
    return parse_polynomial(t, s);
}

} // namespace

TEST_CASE("koszul signs on generators") {
    auto t = odd3();
    CHECK(P(t, "u2*u1") == P(t, "-u1*u2"));
    CHECK(P(t, "u1*u1").is_zero());
    auto w = make_table({{"w", 2}});
    CHECK(P(w, "w*w^2") == P(w, "w^3"));
}

TEST_CASE("graded commutativity is exact") {
    auto t = make_table({{"a", 2}, {"u", 3}, {"v", 5}, {"w", 4}});
    for (const char* xs : {"a", "u", "v", "w", "a*u", "u*v", "a*w"}) {
        for (const char* ys : {"a", "u", "v", "w", "u*v", "a^2"}) {
            Polynomial x = P(t, xs), y = P(t, ys);
            int dx, dy;
            REQUIRE(x.is_homogeneous(&dx));
            REQUIRE(y.is_homogeneous(&dy));
            Polynomial lhs = x * y;
            Polynomial rhs = y * x;
            if (dx % 2 != 0 && dy % 2 != 0) rhs = -rhs;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("basis enumeration matches hand counts") {
    auto t = odd3();
    auto b8 = degree_basis(*t, 8);
    REQUIRE(b8.size() == 2); // u1*v12 and u2*v12
    CHECK(b8[0].factors == std::vector<std::pair<GenId, int>>{{1, 1}, {2, 1}});
    CHECK(b8[1].factors == std::vector<std::pair<GenId, int>>{{0, 1}, {2, 1}});

    CHECK(degree_basis(*t, 0).size() == 1);
    CHECK(degree_basis(*t, 0)[0].is_unit());

    std::size_t total = 0;
    for (int n = 0; n <= 11; ++n) total += degree_basis(*t, n).size();
    CHECK(total == 8); // 2^3 for an exterior algebra on three generators
}

TEST_CASE("basis sizes satisfy the generating-function identity") {
    SplitMix64 rng(20240817);
    for (int trial = 0; trial < 12; ++trial) {
        auto table = std::make_shared<GeneratorTable>();
        int m = 1 + static_cast<int>(rng.range(1, 5));
        for (int i = 0; i < m; ++i)
            table->add("g" + std::to_string(i), static_cast<int>(rng.range(1, 9)));
        auto sizes = basis_size_table(*table, 40);
        for (int n = 0; n <= 40; ++n)
            CHECK(degree_basis(*table, n).size() == sizes[n]);
    }
}

TEST_CASE("normalize applies signs, combines and drops") {
    auto t = make_table({{"u1", 1}, {"u2", 1}, {"u3", 1}, {"w", 2}});
    // anticommuting pair cancels
    Polynomial a = normalize(t, {{Rational(1), {{1, 1}, {0, 1}}},
                                 {Rational(1), {{0, 1}, {1, 1}}}});
    CHECK(a.is_zero());
    // (1/2) w*w = (1/2) w^2
    Polynomial b = normalize(t, {{Rational(1, 2), {{3, 1}, {3, 1}}}});
    CHECK(b == P(t, "1/2*w^2"));
    // already-normal three-term sum
    Polynomial c = normalize(t, {{Rational(1), {{0, 1}, {2, 1}}},
                                 {Rational(-1), {{0, 1}, {1, 1}}},
                                 {Rational(1), {{1, 1}, {2, 1}}}});
    CHECK(c == P(t, "u1*u3 - u1*u2 + u2*u3"));
    // odd exponent >= 2 vanishes silently
    CHECK(normalize(t, {{Rational(5), {{0, 2}}}}).is_zero());
}

TEST_CASE("normalize is idempotent") {
    auto t = make_table({{"a", 2}, {"u", 3}, {"v", 5}});
    Polynomial p = P(t, "a^3 - 2*a*u*v + 7/3*a^2");
    std::vector<RawTerm> raw;
    for (const auto& [mono, c] : p.terms())
        raw.push_back(RawTerm{c, mono.factors});
    CHECK(normalize(t, raw) == p);
}

TEST_CASE("product is associative and distributive (randomized)") {
    auto t = make_table({{"a", 2}, {"u1", 3}, {"u2", 3}, {"v", 5}, {"w", 4}});
    SplitMix64 rng(7);
    auto random_poly = [&]() {
        Polynomial p(t);
        int terms = static_cast<int>(rng.range(0, 3));
        for (int k = 0; k < terms; ++k) {
            std::vector<std::pair<GenId, int>> factors;
            for (GenId g = 0; g < t->size(); ++g) {
                int e = static_cast<int>(rng.range(0, t->odd(g) ? 1 : 2));
                if (e > 0) factors.emplace_back(g, e);
            }
            auto mono = make_monomial(*t, std::move(factors));
            if (mono) p.add_term(*mono, Rational(rng.range(-3, 3)));
        }
        return p;
    };
    int checked = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        Polynomial x = random_poly(), y = random_poly(), z = random_poly();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        ++checked;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("mismatched tables are rejected") {
    auto t1 = odd3();
    auto t2 = make_table({{"x", 2}});
    CHECK_THROWS_AS(P(t1, "u1") * P(t2, "x"), StructuralError);
    // structurally equal tables are compatible
    auto t3 = odd3();
    CHECK(P(t1, "u1") * P(t3, "u2") == P(t1, "u1*u2"));
}

TEST_CASE("degree-0 generators are rejected") {
    GeneratorTable t;
    CHECK_THROWS_AS(t.add("x", 0), StructuralError);
    CHECK_THROWS_AS(t.add("y", -2), StructuralError);
    CHECK_THROWS_AS(t.add("bad name", 2), StructuralError);
    t.add("x", 2);
    CHECK_THROWS_AS(t.add("x", 4), StructuralError);
}

TEST_CASE("polynomial printing is canonical and parseable") {
    auto t = make_table({{"u1", 3}, {"u2", 3}, {"u3", 3}, {"u4", 7},
                         {"u5", 23}, {"u6", 27}, {"w", 18}, {"v", 35}});
    Polynomial p = P(t, "w^2 - u1*u2*u4*u5 - u1*u2*u3*u6");
    CHECK(p.str() == "w^2 - u1*u2*u4*u5 - u1*u2*u3*u6");
    CHECK(P(t, p.str()) == p);
    CHECK(Polynomial(t).str() == "0");
    CHECK(P(t, "3/6*w").str() == "1/2*w");
}
