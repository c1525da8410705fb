#pragma once

// Brute-force discrepancy for tiny sets, used as the test oracle for the
// exact algorithms. It shares no code with them: plain rational arithmetic,
// no rescaling, no ranks, no sweep.
//
// Every box endpoint is drawn from the point coordinates together with 0 and
// 1, and each endpoint is independently taken as "exactly here" or "just past
// here" (the limit of a sequence of half-open boxes). The count of a limit box
// uses the corresponding strict/non-strict comparison per endpoint; the
// volume is the limit volume. The supremum over half-open boxes is attained
// among these configurations.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/discrepancy/result.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/points.hpp"

namespace qmclab {

inline constexpr std::size_t oracle_max_points = 8;
inline constexpr std::size_t oracle_max_dim = 3;

inline BigRational brute_force_oracle(const PointSet& ps, DiscKind kind) {
    const std::size_t n = ps.count();
    const std::size_t d = ps.dim;
    detail::require(n >= 1, "oracle needs at least one point");
    detail::require(n <= oracle_max_points && d >= 1 && d <= oracle_max_dim,
                    "oracle limited to N <= 8 and d <= 3");

    std::vector<std::vector<BigRational>> cand(d);
    for (std::size_t j = 0; j < d; ++j) {
        cand[j] = {BigRational(0), BigRational(1)};
        for (const auto& p : ps.points) cand[j].push_back(p.coords[j]);
        std::sort(cand[j].begin(), cand[j].end());
        cand[j].erase(std::unique(cand[j].begin(), cand[j].end()), cand[j].end());
    }
    const BigRational Nq(static_cast<unsigned long>(n));
    BigRational best = 0;

    auto consider = [&](std::size_t count, const BigRational& volume) {
        BigRational v = BigRational(static_cast<unsigned long>(count)) / Nq - volume;
        if (sgn(v) < 0) v = -v;
        if (v > best) best = v;
    };

    if (kind == DiscKind::star) {
        // upper corner b, per-coordinate flag: 0 -> x < b, 1 -> x <= b
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            BigRational volume = 1;
            for (std::size_t j = 0; j < d; ++j) volume *= cand[j][idx[j]];
            for (unsigned mask = 0; mask < (1u << d); ++mask) {
                std::size_t count = 0;
                for (const auto& p : ps.points) {
                    bool inside = true;
                    for (std::size_t j = 0; j < d && inside; ++j) {
                        const auto& b = cand[j][idx[j]];
                        inside = (mask >> j & 1u) ? p.coords[j] <= b : p.coords[j] < b;
                    }
                    count += inside;
                }
                consider(count, volume);
            }
            std::size_t j = 0;
            while (j < d && ++idx[j] == cand[j].size()) idx[j++] = 0;
            if (j == d) break;
        }
        return best;
    }

    // extreme: per coordinate a pair a <= b and two flags; lower flag 0 -> x >= a,
    // 1 -> x > a; upper flag 0 -> x < b, 1 -> x <= b
    std::vector<std::size_t> lo(d, 0), hi(d, 0);
    while (true) {
        bool valid = true;
        for (std::size_t j = 0; j < d; ++j) valid = valid && cand[j][lo[j]] <= cand[j][hi[j]];
        if (valid) {
            BigRational volume = 1;
            for (std::size_t j = 0; j < d; ++j) volume *= cand[j][hi[j]] - cand[j][lo[j]];
            for (unsigned mask = 0; mask < (1u << (2 * d)); ++mask) {
                std::size_t count = 0;
                for (const auto& p : ps.points) {
                    bool inside = true;
                    for (std::size_t j = 0; j < d && inside; ++j) {
                        const auto& x = p.coords[j];
                        const auto& a = cand[j][lo[j]];
                        const auto& b = cand[j][hi[j]];
                        const bool lower_ok = (mask >> (2 * j) & 1u) ? x > a : x >= a;
                        const bool upper_ok = (mask >> (2 * j + 1) & 1u) ? x <= b : x < b;
                        inside = lower_ok && upper_ok;
                    }
                    count += inside;
                }
                consider(count, volume);
            }
        }
        std::size_t j = 0;
        while (j < 2 * d) {
            auto& slot = j < d ? lo[j] : hi[j - d];
            const auto size = cand[j < d ? j : j - d].size();
            if (++slot < size) break;
            slot = 0;
            ++j;
        }
        if (j == 2 * d) break;
    }
    return best;
}

} // namespace qmclab
