#pragma once

#include <cstdint>

#include "sullivan/structure.hpp"

namespace sullivan {

// Deterministic PRNG (splitmix64), independent of the platform libc.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

struct RandomModelParams {
    int p = 3;            // dim U (odd generators of one odd degree)
    int r = 3;            // dim V, at most p(p-1)/2
    int deg_lo = 3;       // odd degree range sampled for U
    int deg_hi = 7;
    int extra_cocycles = 0;       // extra odd cocycle generators appended to V
    bool require_full_rank = true; // resample until the stacked skew rank is p
};

// Odd-only quadratic two-stage model: dv_k = sum a^k_{ij} u_i u_j with the
// a^k read off r linearly independent skew matrices; with full stacked rank
// the decomposition displays V with maximal dimension.
inline SullivanModel random_two_stage(std::uint64_t seed,
                                      const RandomModelParams& params) {
    if (params.p < 1) throw ContractError("random_two_stage: p must be >= 1");
    long max_r = static_cast<long>(params.p) * (params.p - 1) / 2;
    if (params.r < 0 || params.r > max_r)
        throw ContractError("random_two_stage: r must lie in [0, p(p-1)/2]");
    if (params.deg_lo < 1 || params.deg_hi < params.deg_lo)
        throw ContractError("random_two_stage: bad degree range");
    // a single skew matrix has even rank, so the stack of r of them can
    // reach rank p only when 2*floor(p/2)*r >= p
    if (params.require_full_rank &&
        2L * (params.p / 2) * params.r < params.p)
        throw ContractError(
            "random_two_stage: stacked rank p unreachable with these p, r");

    SplitMix64 rng(seed);
    long lo = (params.deg_lo % 2 == 0) ? params.deg_lo + 1 : params.deg_lo;
    long hi = (params.deg_hi % 2 == 0) ? params.deg_hi - 1 : params.deg_hi;
    if (lo > hi) throw ContractError("random_two_stage: no odd degree in range");
    int delta = static_cast<int>(lo + 2 * rng.range(0, (hi - lo) / 2));

    int pairs = static_cast<int>(max_r);
    std::vector<std::vector<Rational>> coeffs; // r rows over the i<j pairs
    for (int attempt = 0;; ++attempt) {
        if (attempt > 4096)
            throw InternalError("random_two_stage: rejection sampling stalled");
        coeffs.assign(params.r, std::vector<Rational>(pairs, Rational(0)));
        for (auto& row : coeffs)
            for (auto& c : row) c = Rational(rng.range(-2, 2));
        // rows linearly independent
        if (dense_rank(coeffs) != params.r) continue;
        if (params.require_full_rank && params.p > 0) {
            // stacked rank of the skew matrices
            std::vector<QVec> stacked;
            for (const auto& row : coeffs) {
                std::vector<QVec> mk(params.p, QVec(params.p, Rational(0)));
                int ix = 0;
                for (int i = 0; i < params.p; ++i)
                    for (int j = i + 1; j < params.p; ++j, ++ix) {
                        mk[i][j] = row[ix];
                        mk[j][i] = -row[ix];
                    }
                for (auto& rrow : mk) stacked.push_back(std::move(rrow));
            }
            if (dense_rank(stacked) != params.p) continue;
        }
        break;
    }

    auto table = std::make_shared<GeneratorTable>();
    std::vector<GenId> u_ids, v_ids;
    for (int i = 0; i < params.p; ++i)
        u_ids.push_back(table->add("u" + std::to_string(i + 1), delta));
    for (int k = 0; k < params.r; ++k)
        v_ids.push_back(table->add("v" + std::to_string(k + 1), 2 * delta - 1));
    for (int z = 0; z < params.extra_cocycles; ++z)
        table->add("z" + std::to_string(z + 1), delta);

    TablePtr frozen = table;
    SullivanModel m(frozen, "random");
    for (int k = 0; k < params.r; ++k) {
        Polynomial dv(frozen);
        int ix = 0;
        for (int i = 0; i < params.p; ++i)
            for (int j = i + 1; j < params.p; ++j, ++ix) {
                if (sgn(coeffs[k][ix]) == 0) continue;
                Monomial mono;
                mono.factors = {{u_ids[i], 1}, {u_ids[j], 1}};
                mono.degree = 2 * delta;
                dv.add_term(std::move(mono), coeffs[k][ix]);
            }
        m.set_differential(v_ids[k], std::move(dv));
    }
    return m;
}

} // namespace sullivan
