#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/monomial.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

// Exact-rational linear combination of canonical monomials. No zero
// coefficients are stored; the zero polynomial is the empty map. A
// default-constructed Polynomial is the zero value compatible with any
// generator table.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Polynomial() = default;
    explicit Polynomial(TablePtr table) : table_(std::move(table)) {}

    static Polynomial zero(TablePtr table) { return Polynomial(std::move(table)); }

    static Polynomial unit(TablePtr table, Rational c = Rational(1)) {
        Polynomial p(std::move(table));
        p.add_term(unit_monomial(), std::move(c));
        return p;
    }

    static Polynomial generator(TablePtr table, GenId g) {
        Polynomial p(table);
        p.add_term(monomial_of_generator(*table, g), Rational(1));
        return p;
    }

    static Polynomial from_monomial(TablePtr table, Monomial m, Rational c = Rational(1)) {
        Polynomial p(std::move(table));
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Monomial m, Rational c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // True when every term has the same total degree; reports it via deg.
    // The zero polynomial is homogeneous of every degree (deg = -1).
    bool is_homogeneous(int* deg = nullptr) const {
        if (terms_.empty()) {
            if (deg) *deg = -1;
            return true;
        }
        int d = terms_.begin()->first.degree;
        for (const auto& [m, c] : terms_)
            if (m.degree != d) return false;
        if (deg) *deg = d;
        return true;
    }

    bool contains_generator(GenId g) const {
        for (const auto& [m, c] : terms_)
            if (m.contains(g)) return true;
        return false;
    }

    // Keeps only the terms for which pred(monomial) holds.
    Polynomial filter(const std::function<bool(const Monomial&)>& pred) const {
        Polynomial out(table_);
        for (const auto& [m, c] : terms_)
            if (pred(m)) out.terms_.emplace(m, c);
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) {
        return !(a == b);
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_compatible(o);
        if (!table_) table_ = o.table_;
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_compatible(o);
        if (!table_) table_ = o.table_;
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& c) {
        if (sgn(c) == 0) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, v] : a.terms_) v = -v;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const Rational& c) { a *= c; return a; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { a *= c; return a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        TablePtr table = a.table_ ? a.table_ : b.table_;
        Polynomial out(table);
        if (a.is_zero() || b.is_zero()) return out;
        const GeneratorTable& t = *table;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                if (auto prod = monomial_mul(t, ma, mb)) {
                    Rational c = ca * cb;
                    if (prod->first < 0) c = -c;
                    out.add_term(std::move(prod->second), std::move(c));
                }
        return out;
    }

    std::string str() const;

private:
    void require_compatible(const Polynomial& o) const {
        if (!compatible(table_, o.table_))
            throw StructuralError("polynomials over different generator tables");
    }

    TablePtr table_;
    TermMap terms_;
};

// One addend of an unnormalized expression: a coefficient and generator
// powers in arbitrary written order (possibly repeated).
struct RawTerm {
    Rational coefficient;
    std::vector<std::pair<GenId, int>> factors;
};

// Sorts factors applying Koszul signs, combines like terms, drops zeros.
// A repeated odd generator makes the term vanish (not an error).
inline Polynomial normalize(TablePtr table, const std::vector<RawTerm>& raw) {
    Polynomial out(table);
    const GeneratorTable& t = *table;
    for (const auto& term : raw) {
        if (sgn(term.coefficient) == 0) continue;
        bool dead = false;
        long inversions = 0;
        std::vector<GenId> odd_seen; // ascending ids of odd factors so far
        std::vector<std::pair<GenId, int>> combined;
        for (const auto& [id, e] : term.factors) {
            if (e == 0) continue;
            if (e < 0) throw StructuralError("negative exponent");
            if (t.odd(id)) {
                if (e > 1) { dead = true; break; }
                auto it = std::lower_bound(odd_seen.begin(), odd_seen.end(), id);
                if (it != odd_seen.end() && *it == id) { dead = true; break; }
                inversions += odd_seen.end() - it;
                odd_seen.insert(it, id);
            }
            combined.emplace_back(id, e);
        }
        if (dead) continue;
        std::sort(combined.begin(), combined.end());
        // merge adjacent equal ids (even generators only at this point)
        std::vector<std::pair<GenId, int>> merged;
        for (const auto& [id, e] : combined) {
            if (!merged.empty() && merged.back().first == id)
                merged.back().second += e;
            else
                merged.emplace_back(id, e);
        }
        auto mono = make_monomial(t, std::move(merged));
        if (!mono) continue;
        out.add_term(std::move(*mono), inversions % 2 == 0 ? term.coefficient
                                                           : -term.coefficient);
    }
    return out;
}

// Algebra-morphism application: each generator is replaced by its image
// and the monomial rebuilt by multiplication (images must be over `target`).
inline Polynomial substitute(const Polynomial& p, TablePtr target,
                             const std::vector<Polynomial>& images) {
    Polynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial acc = Polynomial::unit(target, c);
        for (const auto& [id, e] : m.factors) {
            if (id >= images.size())
                throw StructuralError("substitute: no image for generator id " +
                                      std::to_string(id));
            for (int k = 0; k < e; ++k) acc = acc * images[id];
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        bool unit_coeff = (a == 1);
        if (!unit_coeff || m.is_unit()) os << a.get_str();
        bool need_star = !unit_coeff && !m.is_unit();
        bool first_factor = true;
        for (const auto& [id, e] : m.factors) {
            if (need_star || !first_factor) os << "*";
            need_star = true;
            first_factor = false;
            os << table_->name(id);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace sullivan
