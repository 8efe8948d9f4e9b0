#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "support/fixtures.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        res.out.append(buf.data(), n);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

bool has_line(const std::string& text, const std::string& line) {
    std::string needle = line + "\n";
    return text.find(needle) != std::string::npos ||
           text.rfind(line) == text.size() - line.size();
}

} // namespace

TEST_CASE("betti verb emits the machine report") {
    auto r = run("--machine betti " + fixtures::corpus_path("m2.model"));
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "betti[0] = 1"));
    CHECK(has_line(r.out, "betti[3] = 2"));
    CHECK(has_line(r.out, "betti[8] = 2"));
    CHECK(has_line(r.out, "betti[11] = 1"));
    CHECK(has_line(r.out, "total = 6"));
    CHECK(has_line(r.out, "complete = true"));
}

TEST_CASE("elliptic verb reports witnesses") {
    auto r = run("--machine elliptic " + fixtures::corpus_path("lemma.model"));
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "elliptic = true"));
    CHECK(has_line(r.out, "quotient_dim = 2"));
    CHECK(has_line(r.out, "witness[w] = w^2"));
}

TEST_CASE("split, matrix, hypotheses, gottlieb, wang verbs") {
    auto m2 = fixtures::corpus_path("m2.model");
    auto r1 = run("--machine split " + m2);
    CHECK(has_line(r1.out, "two_stage = true"));
    CHECK(has_line(r1.out, "dimU_even = 0"));
    CHECK(has_line(r1.out, "dimV = 1"));

    auto r2 = run("--machine matrix " + m2);
    CHECK(has_line(r2.out, "skew_rank = 2"));
    CHECK(has_line(r2.out, "left_inverse = true"));

    auto r3 = run("--machine hypotheses " + m2);
    CHECK(has_line(r3.out, "hyp.stable_separated = true"));
    CHECK(has_line(r3.out, "chi_pi = -3"));

    auto r4 = run("--machine gottlieb " + m2);
    CHECK(has_line(r4.out, "gottlieb[5] = 1"));
    CHECK(has_line(r4.out, "gottlieb.total = 1"));

    auto r5 = run("--machine wang " + m2 + " --base u1");
    CHECK(has_line(r5.out, "wang.ker = 3"));
    CHECK(has_line(r5.out, "wang.coker = 3"));
    CHECK(has_line(r5.out, "wang.exact = true"));
}

TEST_CASE("bounds verb accepts certificates") {
    auto r = run("--machine bounds " + fixtures::corpus_path("ex3.1.model") +
                 " --cert " + fixtures::corpus_path("ex3.1.cert"));
    CHECK(r.status == 0);
    CHECK(has_line(r.out, "rk0.lower = 1"));
    CHECK(has_line(r.out, "rk0.upper = 6"));
    CHECK(has_line(r.out, "rk0.exact = false"));
    CHECK(has_line(r.out, "trc.lhs = 128"));
    CHECK(has_line(r.out, "trc.rhs = 2^1"));
    CHECK(has_line(r.out, "trc.holds = true"));
}

TEST_CASE("certify verb verdicts and exit codes") {
    auto good = run("--machine certify " + fixtures::corpus_path("ex3.2.cert") +
                    " --model " + fixtures::corpus_path("ex3.2.model"));
    CHECK(good.status == 0);
    CHECK(has_line(good.out, "cert.valid = true"));
    CHECK(has_line(good.out, "cert.n = 3"));

    // verifying against the wrong fibre fails with exit 1
    auto bad = run("--machine certify " + fixtures::corpus_path("ex3.2.cert") +
                   " --model " + fixtures::corpus_path("ex3.4n.model"));
    CHECK(bad.status == 1);
    CHECK(has_line(bad.out, "cert.valid = false"));
}

TEST_CASE("corpus verb runs the manifest") {
    auto all = run("corpus " + fixtures::corpus_path("corpus.txt"));
    CHECK(all.status == 0);
    CHECK(all.out.find("FAIL") == std::string::npos);

    auto one = run("corpus " + fixtures::corpus_path("corpus.txt") +
                   " --filter m2");
    CHECK(one.status == 0);
    CHECK(one.out.find("PASS m2") != std::string::npos);
    CHECK(one.out.find("m3") == std::string::npos);

    // no matches: empty report, success
    auto none = run("corpus " + fixtures::corpus_path("corpus.txt") +
                    " --filter nonexistent");
    CHECK(none.status == 0);
    CHECK(none.out.find("PASS") == std::string::npos);
}

TEST_CASE("error exit codes") {
    auto parse_err = run("check /dev/null");
    CHECK(parse_err.status == 0); // empty model is fine

    auto missing = run("check /no/such/file.model");
    CHECK(missing.status == 2);

    auto cap = run("--cap 10 betti " + fixtures::corpus_path("ex3.1.model"));
    CHECK(cap.status == 3);

    // contract violation: the wang base must be a cocycle
    auto bad_base = run("wang " + fixtures::corpus_path("m2.model") +
                        " --base v12");
    CHECK(bad_base.status == 2);

    {
        std::FILE* f = std::fopen("/tmp/sullivan_poly_ring.model", "w");
        REQUIRE(f);
        std::fputs("gen w : 2\n", f);
        std::fclose(f);
    }
    auto not_elliptic = run("bounds /tmp/sullivan_poly_ring.model");
    CHECK(not_elliptic.status == 2);
}

TEST_CASE("corpus runs are bit-identical across invocations") {
    auto a = run("--machine corpus " + fixtures::corpus_path("corpus.txt"));
    auto b = run("--machine corpus " + fixtures::corpus_path("corpus.txt"));
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("random verb is reproducible") {
    auto a = run("random --seed 5 --p 3 --r 2");
    auto b = run("random --seed 5 --p 3 --r 2");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto c = run("random --seed 6 --p 3 --r 2");
    CHECK(a.out != c.out);
}

TEST_CASE("pure and maximalize verbs print models") {
    auto r = run("pure " + fixtures::corpus_path("ex3.1.model"));
    CHECK(r.status == 0);
    CHECK(r.out.find("d v = w^2") != std::string::npos);

    auto mx = run("maximalize " + fixtures::corpus_path("nonmax.model"));
    CHECK(mx.status == 0);
    CHECK(mx.out.find("maximal = false") != std::string::npos);
    CHECK(mx.out.find("repaired.dimV = 2") != std::string::npos);
    CHECK(mx.out.find("d v1 = u2*u3") != std::string::npos);
}
