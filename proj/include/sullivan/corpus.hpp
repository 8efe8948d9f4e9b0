#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sullivan/rank.hpp"

namespace sullivan {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// '*' matches any run, '?' a single character.
inline bool glob_match(std::string_view pattern, std::string_view text) {
    if (pattern.empty()) return text.empty();
    if (pattern[0] == '*') {
        for (std::size_t i = 0; i <= text.size(); ++i)
            if (glob_match(pattern.substr(1), text.substr(i))) return true;
        return false;
    }
    if (text.empty()) return false;
    if (pattern[0] != '?' && pattern[0] != text[0]) return false;
    return glob_match(pattern.substr(1), text.substr(1));
}

struct CorpusEntry {
    std::string name;
    std::string model_path;
    std::vector<std::string> cert_paths;
    std::optional<std::string> wang_base;
    long budget = kDefaultSearchBudget;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, std::string>> expectations;
};

// Manifest: one entry block per corpus model.
//   entry <name>
//     model <path>
//     cert <path>
//     wang <generator>
//     budget <n>
//     note <free text>
//     expect <key> = <value>
//   end
inline std::vector<CorpusEntry> parse_manifest(const std::string& text) {
    std::vector<CorpusEntry> entries;
    std::optional<CorpusEntry> cur;
    int line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto rest_of = [&]() {
            std::string rest;
            std::getline(ls, rest);
            std::size_t b = rest.find_first_not_of(" \t");
            std::size_t e = rest.find_last_not_of(" \t");
            return b == std::string::npos ? std::string()
                                          : rest.substr(b, e - b + 1);
        };
        if (head == "entry") {
            if (cur) throw ParseError(line_no, 1, "nested entry");
            cur.emplace();
            ls >> cur->name;
            if (cur->name.empty()) throw ParseError(line_no, 1, "entry needs a name");
        } else if (head == "end") {
            if (!cur) throw ParseError(line_no, 1, "'end' outside entry");
            entries.push_back(std::move(*cur));
            cur.reset();
        } else if (!cur) {
            throw ParseError(line_no, 1, "directive outside entry: " + head);
        } else if (head == "model") {
            ls >> cur->model_path;
        } else if (head == "cert") {
            std::string p;
            ls >> p;
            cur->cert_paths.push_back(p);
        } else if (head == "wang") {
            std::string g;
            ls >> g;
            cur->wang_base = g;
        } else if (head == "budget") {
            ls >> cur->budget;
        } else if (head == "note") {
            cur->notes.push_back(rest_of());
        } else if (head == "expect") {
            std::string key, eq;
            ls >> key >> eq;
            if (eq != "=") throw ParseError(line_no, 1, "expect needs 'key = value'");
            cur->expectations.emplace_back(key, rest_of());
        } else {
            throw ParseError(line_no, 1, "unknown directive: " + head);
        }
    }
    if (cur) throw ParseError(line_no, 1, "unterminated entry");
    return entries;
}

namespace detail {

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string dirname(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

} // namespace detail

// The standard pipeline over one model: structure checks, ellipticity,
// Betti table, two-stage analysis, Gottlieb, Wang, certificates, bounds.
// Produces the same key = value map the CLI's --machine mode prints.
inline std::map<std::string, std::string>
run_entry_pipeline(const CorpusEntry& entry, const std::string& base_dir,
                   unsigned long long cap = kDefaultBasisCap) {
    std::map<std::string, std::string> kv;
    auto path = [&](const std::string& p) {
        return p.empty() || p[0] == '/' ? p : base_dir + "/" + p;
    };

    SullivanModel m = parse_model(slurp(path(entry.model_path)));
    StructureReport sr = check_differential(m);
    kv["d2zero"] = detail::bool_str(sr.d_squared_zero);
    kv["minimal"] = detail::bool_str(sr.minimal);
    kv["nilpotent"] = detail::bool_str(sr.nilpotent);

    EllipticityReport er = is_elliptic(m);
    kv["elliptic"] = detail::bool_str(er.elliptic);
    kv["quotient_dim"] =
        er.quotient_dim ? std::to_string(*er.quotient_dim) : "inf";
    for (const auto& [var, power] : er.witnesses) kv["witness[" + var + "]"] = power;

    if (er.elliptic) {
        int fd = formal_dimension(m, er.evidence());
        kv["formal_dim"] = std::to_string(fd);
        BettiTable bt = betti_table(m, fd, er.evidence(), cap);
        for (int n = 0; n <= bt.max_degree; ++n)
            if (bt.b[n] != 0) kv["betti[" + std::to_string(n) + "]"] =
                std::to_string(bt.b[n]);
        kv["total"] = std::to_string(bt.total);
        kv["complete"] = detail::bool_str(bt.complete);
        DualityReport pd = poincare_duality_check(m, er.evidence(), cap);
        kv["pd"] = detail::bool_str(pd.holds);
    }

    try {
        TwoStageDecomposition ts = two_stage_split(m);
        kv["two_stage"] = "true";
        kv["dimU_even"] = std::to_string(ts.q);
        kv["dimV"] = std::to_string(ts.r);
        MaximalityAnalysis mx = maximality(m, ts);
        kv["maximal"] = detail::bool_str(mx.maximal_input);
        kv["repaired.dimV"] = std::to_string(mx.repaired_decomp.r);
        HypothesisReport hyp = hypothesis_check(m, ts);
        kv["chi_pi"] = std::to_string(hyp.chi_pi);
        kv["hyp.pure"] = detail::bool_str(hyp.pure);
        kv["hyp.odd_only"] = detail::bool_str(hyp.odd_only);
        kv["hyp.quadratic"] = detail::bool_str(hyp.quadratic_differential);
        kv["hyp.A"] = detail::bool_str(hyp.condition_a);
        kv["hyp.B"] = detail::bool_str(hyp.condition_b);
        kv["hyp.stable_separated"] = detail::bool_str(hyp.stable_separated);
        if (hyp.quadratic_differential) {
            QuadraticBlockMatrix qb = quadratic_block_matrix(m, ts);
            kv["skew_rank"] = std::to_string(qb.rank);
            kv["left_inverse"] = detail::bool_str(qb.left_inverse_exists);
        }
    } catch (const NotTwoStageError&) {
        kv["two_stage"] = "false";
        int n_even = 0, n_odd = 0;
        for (const auto& g : m.gens().generators())
            (g.odd() ? n_odd : n_even)++;
        kv["chi_pi"] = std::to_string(n_even - n_odd);
    }

    GottliebReport gl = gottlieb(m);
    for (const auto& [n, dim] : gl.dims)
        if (dim != 0) kv["gottlieb[" + std::to_string(n) + "]"] = std::to_string(dim);
    kv["gottlieb.total"] = std::to_string(gl.total);

    if (entry.wang_base) {
        WangData w = wang(m, m.gens().id_of(*entry.wang_base), cap);
        kv["wang.ker"] = std::to_string(w.dim_ker);
        kv["wang.coker"] = std::to_string(w.dim_coker);
        kv["wang.exact"] = detail::bool_str(w.exactness_holds);
    }

    std::vector<Certificate> certs;
    for (std::size_t i = 0; i < entry.cert_paths.size(); ++i) {
        ExtensionSpec spec = parse_extension(slurp(path(entry.cert_paths[i])));
        Certificate cert = verify_extension(spec, &m);
        std::string prefix = entry.cert_paths.size() == 1
                                 ? "cert"
                                 : "cert" + std::to_string(i + 1);
        kv[prefix + ".valid"] = detail::bool_str(cert.valid);
        kv[prefix + ".n"] = std::to_string(cert.n);
        certs.push_back(std::move(cert));
    }

    if (er.elliptic) {
        RankBounds rb = rank_bounds(m, certs, entry.budget, cap);
        kv["rk0.lower"] = std::to_string(rb.lower);
        kv["rk0.upper"] = rb.upper ? std::to_string(*rb.upper) : "unknown";
        kv["rk0.exact"] = detail::bool_str(rb.exact);
        kv["trc.lhs"] = std::to_string(rb.trc_lhs);
        kv["trc.rhs"] = "2^" + std::to_string(rb.trc_rhs_exponent);
        kv["trc.holds"] = detail::bool_str(rb.trc_holds);
    }
    return kv;
}

struct EntryResult {
    std::string name;
    bool pass = true;
    std::string error;
    // key, expected, actual, ok
    std::vector<std::tuple<std::string, std::string, std::string, bool>> rows;
    double wall_ms = 0;
    std::vector<std::string> notes;
};

struct RunReport {
    std::vector<EntryResult> entries;
    bool all_pass = true;
};

inline RunReport run_corpus(const std::string& manifest_path,
                            const std::string& filter = "*",
                            unsigned long long cap = kDefaultBasisCap) {
    std::string base_dir = detail::dirname(manifest_path);
    std::vector<CorpusEntry> entries = parse_manifest(slurp(manifest_path));
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) {
                  return a.name < b.name;
              });
    RunReport report;
    for (const auto& entry : entries) {
        if (!glob_match(filter, entry.name)) continue;
        EntryResult res;
        res.name = entry.name;
        res.notes = entry.notes;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto kv = run_entry_pipeline(entry, base_dir, cap);
            for (const auto& [key, expected] : entry.expectations) {
                auto it = kv.find(key);
                std::string actual = it == kv.end() ? "<absent>" : it->second;
                bool ok = actual == expected;
                res.rows.emplace_back(key, expected, actual, ok);
                if (!ok) res.pass = false;
            }
        } catch (const Error& e) {
            res.pass = false;
            res.error = e.what();
        }
        res.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0).count();
        if (!res.pass) report.all_pass = false;
        report.entries.push_back(std::move(res));
    }
    return report;
}

} // namespace sullivan
