#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sullivan/basis.hpp"
#include "sullivan/polynomial.hpp"

namespace sullivan {

// Degree-homogeneous derivation of a free graded-commutative algebra,
// given by its values on generators (Koszul sign convention:
// theta(xy) = theta(x) y + (-1)^{|theta||x|} x theta(y)).
struct Derivation {
    TablePtr table;
    int degree = 0;
    std::vector<Polynomial> values; // indexed by GenId; zero when absent

    const Polynomial& value(GenId g) const {
        static const Polynomial kZero;
        return g < values.size() ? values[g] : kZero;
    }
};

inline Derivation make_derivation(TablePtr table, int degree,
                                  std::vector<Polynomial> values) {
    const GeneratorTable& t = *table;
    if (values.size() > t.size())
        throw StructuralError("derivation has more values than generators");
    for (GenId g = 0; g < values.size(); ++g) {
        int d;
        if (!values[g].is_homogeneous(&d))
            throw StructuralError("derivation value on '" + t.name(g) +
                                  "' is not homogeneous");
        if (d >= 0 && d != t.degree(g) + degree)
            throw StructuralError("derivation value on '" + t.name(g) +
                                  "' has degree " + std::to_string(d) +
                                  ", expected " + std::to_string(t.degree(g) + degree));
        if (!compatible(table, values[g].table()))
            throw StructuralError("derivation value over a different table");
    }
    return Derivation{std::move(table), degree, std::move(values)};
}

// Leibniz extension of a derivation to a monomial, then linearly.
inline Polynomial apply_derivation(const Derivation& th, const Monomial& m,
                                   const Rational& coeff) {
    const GeneratorTable& t = *th.table;
    Polynomial out(th.table);
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const auto [g, e] = m.factors[i];
        const Polynomial& image = th.value(g);
        if (!image.is_zero()) {
            // m = prefix * g^e * suffix; the factor acted on contributes
            // e * (-1)^{|theta| * |prefix|} prefix * theta(g) * g^{e-1} * suffix.
            Monomial prefix, tail;
            prefix.factors.assign(m.factors.begin(), m.factors.begin() + i);
            for (const auto& [id, ee] : prefix.factors) prefix.degree += ee * t.degree(id);
            tail.factors.assign(m.factors.begin() + i, m.factors.end());
            tail.factors[0].second -= 1;
            if (tail.factors[0].second == 0) tail.factors.erase(tail.factors.begin());
            tail.degree = m.degree - prefix.degree - t.degree(g);

            int sign = (th.degree % 2 != 0 && prefix_degree % 2 != 0) ? -1 : 1;
            Rational c = coeff * e;
            if (sign < 0) c = -c;
            Polynomial term = Polynomial::from_monomial(th.table, prefix, c);
            term = term * image;
            term = term * Polynomial::from_monomial(th.table, tail);
            out += term;
        }
        prefix_degree += e * t.degree(g);
    }
    return out;
}

inline Polynomial apply_derivation(const Derivation& th, const Polynomial& p) {
    if (!compatible(th.table, p.table()))
        throw StructuralError("derivation applied across generator tables");
    Polynomial out(th.table);
    for (const auto& [m, c] : p.terms()) out += apply_derivation(th, m, c);
    return out;
}

// Free graded-commutative algebra with a differential given on generators.
class SullivanModel {
public:
    SullivanModel() = default;
    explicit SullivanModel(TablePtr table, std::string name = "")
        : name_(std::move(name)), table_(std::move(table)),
          d_(table_->size()) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const TablePtr& table() const { return table_; }
    const GeneratorTable& gens() const { return *table_; }
    std::size_t generator_count() const { return table_->size(); }

    const Polynomial& differential(GenId g) const { return d_.at(g); }

    void set_differential(GenId g, Polynomial value) {
        if (!compatible(table_, value.table()))
            throw StructuralError("differential value over a different table");
        int d;
        if (!value.is_homogeneous(&d))
            throw StructuralError("differential of '" + table_->name(g) +
                                  "' is not homogeneous");
        if (d >= 0 && d != table_->degree(g) + 1)
            throw StructuralError("differential of '" + table_->name(g) +
                                  "' has degree " + std::to_string(d) + " != " +
                                  std::to_string(table_->degree(g) + 1));
        d_.at(g) = std::move(value);
    }

    Derivation d() const { return Derivation{table_, 1, d_}; }

    Polynomial d_of(const Polynomial& p) const { return apply_derivation(d(), p); }

private:
    std::string name_;
    TablePtr table_;
    std::vector<Polynomial> d_;
};

struct StructureReport {
    bool d_squared_zero = false;
    bool minimal = false;    // image of d lies in length >= 2 monomials
    bool nilpotent = false;  // an ordering with dw_i in Lambda(w_1..w_{i-1}) exists
    std::optional<std::vector<GenId>> witness_order;
    std::vector<std::string> d_squared_failures; // generator names with d^2 != 0
};

inline StructureReport check_differential(const SullivanModel& m) {
    StructureReport rep;
    const GeneratorTable& t = m.gens();
    Derivation d = m.d();

    rep.d_squared_zero = true;
    for (GenId g = 0; g < t.size(); ++g) {
        if (!apply_derivation(d, m.differential(g)).is_zero()) {
            rep.d_squared_zero = false;
            rep.d_squared_failures.push_back(t.name(g));
        }
    }

    rep.minimal = true;
    for (GenId g = 0; g < t.size(); ++g)
        for (const auto& [mono, c] : m.differential(g).terms())
            if (mono.length() < 2) rep.minimal = false;

    // Nilpotence: topological sort of the dependency graph with an edge
    // h -> g whenever h appears in dg (h must come first).
    std::size_t n = t.size();
    std::vector<std::vector<GenId>> out_edges(n);
    std::vector<int> indegree(n, 0);
    for (GenId g = 0; g < n; ++g) {
        std::vector<bool> seen(n, false);
        for (const auto& [mono, c] : m.differential(g).terms())
            for (const auto& [h, e] : mono.factors)
                if (!seen[h]) {
                    seen[h] = true;
                    out_edges[h].push_back(g);
                    ++indegree[g];
                }
    }
    std::vector<GenId> order;
    std::vector<GenId> ready;
    for (GenId g = 0; g < n; ++g)
        if (indegree[g] == 0) ready.push_back(g);
    // smallest id first keeps the witness deterministic
    while (!ready.empty()) {
        auto it = std::min_element(ready.begin(), ready.end());
        GenId g = *it;
        ready.erase(it);
        order.push_back(g);
        for (GenId h : out_edges[g])
            if (--indegree[h] == 0) ready.push_back(h);
    }
    rep.nilpotent = order.size() == n;
    if (rep.nilpotent) rep.witness_order = std::move(order);
    return rep;
}

// Proof obligation token for operations whose contract requires a model
// already known to be elliptic.
struct EllipticEvidence {
    bool verified = false;
};

// Top nonzero cohomology degree of an elliptic model:
// sum of odd generator degrees minus sum of (even degree - 1).
inline int formal_dimension(const SullivanModel& m, EllipticEvidence ev) {
    if (!ev.verified)
        throw ContractError("formal_dimension requires ellipticity evidence");
    int dim = 0;
    for (const auto& g : m.gens().generators())
        dim += g.odd() ? g.degree : -(g.degree - 1);
    return dim;
}

// Tensor product: concatenated tables, d = d (x) 1 + 1 (x) d on generators.
// Name collisions get a primed suffix, deterministically.
inline SullivanModel tensor(const SullivanModel& a, const SullivanModel& b) {
    auto table = std::make_shared<GeneratorTable>();
    for (const auto& g : a.gens().generators()) table->add(g.name, g.degree);
    std::vector<GenId> b_map(b.generator_count());
    for (GenId g = 0; g < b.generator_count(); ++g) {
        std::string name = b.gens().name(g);
        while (table->has(name)) name += "'";
        b_map[g] = table->add(name, b.gens().degree(g));
    }
    TablePtr frozen = table;
    SullivanModel out(frozen, a.name().empty() || b.name().empty()
                                  ? a.name() + b.name()
                                  : a.name() + "_x_" + b.name());
    for (GenId g = 0; g < a.generator_count(); ++g) {
        Polynomial v(frozen);
        for (const auto& [mono, c] : a.differential(g).terms())
            v.add_term(mono, c); // ids unchanged
        out.set_differential(g, std::move(v));
    }
    for (GenId g = 0; g < b.generator_count(); ++g) {
        Polynomial v(frozen);
        for (const auto& [mono, c] : b.differential(g).terms()) {
            Monomial m2;
            m2.degree = mono.degree;
            for (const auto& [id, e] : mono.factors)
                m2.factors.emplace_back(b_map[id], e);
            v.add_term(std::move(m2), c);
        }
        out.set_differential(b_map[g], std::move(v));
    }
    return out;
}

// Degree-preserving algebra morphism determined by generator images.
struct ModelMorphism {
    SullivanModel source;
    SullivanModel target;
    std::vector<Polynomial> values; // image in target, per source GenId

    Polynomial apply(const Polynomial& p) const {
        return substitute(p, target.table(), values);
    }
};

inline ModelMorphism make_morphism(SullivanModel source, SullivanModel target,
                                   std::vector<Polynomial> values) {
    if (values.size() != source.generator_count())
        throw StructuralError("morphism needs one image per source generator");
    for (GenId g = 0; g < values.size(); ++g) {
        int d;
        if (!values[g].is_homogeneous(&d) ||
            (d >= 0 && d != source.gens().degree(g)))
            throw StructuralError("morphism image of '" + source.gens().name(g) +
                                  "' is not homogeneous of the generator degree");
    }
    return ModelMorphism{std::move(source), std::move(target), std::move(values)};
}

inline bool is_chain_map(const ModelMorphism& phi,
                         std::string* failing_generator = nullptr) {
    for (GenId g = 0; g < phi.source.generator_count(); ++g) {
        Polynomial lhs = phi.apply(phi.source.differential(g));
        Polynomial rhs = phi.target.d_of(phi.values[g]);
        if (lhs != rhs) {
            if (failing_generator) *failing_generator = phi.source.gens().name(g);
            return false;
        }
    }
    return true;
}

} // namespace sullivan
