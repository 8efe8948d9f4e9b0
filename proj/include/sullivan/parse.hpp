#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

namespace detail {

struct LineScanner {
    std::string_view s;
    int line;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    int col() const { return static_cast<int>(pos) + 1; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line, col(), msg);
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                    s[pos] == '_' || s[pos] == '\''))
                ++pos;
        }
        if (start == pos) fail("expected identifier");
        return std::string(s.substr(start, pos - start));
    }
    bool looks_like_number() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    std::string number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos) fail("expected number");
        return std::string(s.substr(start, pos - start));
    }
    int small_int() {
        std::string n = number();
        try {
            return std::stoi(n);
        } catch (...) {
            fail("number out of range: " + n);
        }
    }
};

// poly := '0' | term (('+'|'-') term)*
// term := [int ['/' int] '*'] factor ('*' factor)* | int ['/' int]
// factor := ident ['^' int]
inline Polynomial parse_poly(LineScanner& sc, const TablePtr& table) {
    const GeneratorTable& t = *table;
    std::vector<RawTerm> raw;
    bool negative = sc.eat('-');
    if (!negative) sc.eat('+');
    while (true) {
        RawTerm term;
        term.coefficient = Rational(1);
        bool have_coeff = false;
        if (sc.looks_like_number()) {
            std::string num = sc.number();
            std::string den = "1";
            if (sc.eat('/')) den = sc.number();
            term.coefficient = parse_rational(num + "/" + den);
            have_coeff = true;
        }
        bool expect_factor = !have_coeff;
        if (have_coeff) expect_factor = sc.eat('*');
        if (expect_factor) {
            while (true) {
                std::string name = sc.ident();
                if (!t.has(name)) sc.fail("unknown identifier '" + name + "'");
                int e = 1;
                if (sc.eat('^')) e = sc.small_int();
                if (e <= 0) sc.fail("exponent must be positive");
                term.factors.emplace_back(t.id_of(name), e);
                if (!sc.eat('*')) break;
            }
        }
        if (negative) term.coefficient = -term.coefficient;
        raw.push_back(std::move(term));
        if (sc.done()) break;
        if (sc.eat('-')) negative = true;
        else if (sc.eat('+')) negative = false;
        else sc.fail("expected '+', '-' or end of line");
    }
    return normalize(table, raw);
}

inline std::vector<std::pair<std::string, int>> split_lines(const std::string& text) {
    std::vector<std::pair<std::string, int>> lines;
    std::string cur;
    int line_no = 1;
    for (char c : text) {
        if (c == '\n') {
            lines.emplace_back(cur, line_no);
            cur.clear();
            ++line_no;
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.emplace_back(cur, line_no);
    // strip comments
    for (auto& [s, n] : lines) {
        auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
    }
    return lines;
}

} // namespace detail

struct ParsedFile {
    SullivanModel model;
    std::vector<GenId> base_ids; // from 'base' lines, in file order
};

// Model text format (line oriented, '#' comments):
//   model <name>
//   gen <ident> : <degree>
//   d <ident> = <poly>
//   base <ident>            (extension files only)
// Forward references in differentials are allowed.
inline ParsedFile parse_model_file(const std::string& text) {
    using detail::LineScanner;
    auto lines = detail::split_lines(text);

    auto table = std::make_shared<GeneratorTable>();
    std::string model_name;
    // first pass: declarations
    for (const auto& [s, n] : lines) {
        LineScanner sc{s, n};
        if (sc.done()) continue;
        std::string head = sc.ident();
        if (head == "gen") {
            std::string name = sc.ident();
            sc.expect(':');
            int deg = sc.small_int();
            try {
                table->add(name, deg);
            } catch (const StructuralError& e) {
                sc.fail(e.what());
            }
            if (!sc.done()) sc.fail("trailing text after generator declaration");
        } else if (head == "model") {
            model_name = sc.ident();
            if (!sc.done()) sc.fail("trailing text after model name");
        } else if (head != "d" && head != "base") {
            sc.fail("unknown directive '" + head + "'");
        }
    }

    TablePtr frozen = table;
    ParsedFile out{SullivanModel(frozen, model_name), {}};
    std::vector<bool> has_d(frozen->size(), false), is_base(frozen->size(), false);

    // second pass: differentials and base markers
    for (const auto& [s, n] : lines) {
        LineScanner sc{s, n};
        if (sc.done()) continue;
        std::string head = sc.ident();
        if (head == "d") {
            std::string name = sc.ident();
            if (!frozen->has(name)) sc.fail("unknown generator '" + name + "'");
            GenId g = frozen->id_of(name);
            if (has_d[g]) sc.fail("duplicate differential for '" + name + "'");
            has_d[g] = true;
            sc.expect('=');
            if (sc.done()) sc.fail("missing polynomial");
            Polynomial p = detail::parse_poly(sc, frozen);
            try {
                out.model.set_differential(g, std::move(p));
            } catch (const StructuralError& e) {
                sc.fail(e.what());
            }
        } else if (head == "base") {
            std::string name = sc.ident();
            if (!frozen->has(name)) sc.fail("unknown generator '" + name + "'");
            GenId g = frozen->id_of(name);
            if (is_base[g]) sc.fail("duplicate base marker for '" + name + "'");
            is_base[g] = true;
            out.base_ids.push_back(g);
            if (!sc.done()) sc.fail("trailing text after base marker");
        }
    }
    return out;
}

inline SullivanModel parse_model(const std::string& text) {
    ParsedFile f = parse_model_file(text);
    if (!f.base_ids.empty())
        throw StructuralError("'base' lines are only valid in extension files");
    return std::move(f.model);
}

inline Polynomial parse_polynomial(const TablePtr& table, const std::string& text) {
    detail::LineScanner sc{text, 1};
    if (sc.done()) throw ParseError(1, 1, "empty polynomial");
    return detail::parse_poly(sc, table);
}

inline std::string print_model_with_base(const SullivanModel& m,
                                         const std::vector<GenId>& base_ids) {
    std::ostringstream os;
    if (!m.name().empty()) os << "model " << m.name() << "\n";
    for (const auto& g : m.gens().generators())
        os << "gen " << g.name << " : " << g.degree << "\n";
    for (GenId b : base_ids) os << "base " << m.gens().name(b) << "\n";
    for (GenId g = 0; g < m.generator_count(); ++g)
        if (!m.differential(g).is_zero())
            os << "d " << m.gens().name(g) << " = " << m.differential(g).str() << "\n";
    return os.str();
}

inline std::string print_model(const SullivanModel& m) {
    return print_model_with_base(m, {});
}

} // namespace sullivan
