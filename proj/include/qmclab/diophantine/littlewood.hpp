#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qmclab/algebra/fixed_point.hpp"
#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// A real number given by a rational representative and a bound on the
/// representation error (zero for exact rationals, 2^-W for W-bit carriers).
struct ApproxReal {
    BigRational value;
    BigRational error;
    std::optional<unsigned> width;
    std::string label;

    static ApproxReal exact(const BigRational& x) {
        detail::require(sgn(x) >= 0, "expected a nonnegative real");
        return {x, BigRational(0), std::nullopt, to_string(x)};
    }

    static ApproxReal fixed(const FixedPointReal& x) {
        return {x.value(), make_rational(BigInt(1), pow2(x.width())), x.width(), x.label()};
    }
};

struct LittlewoodResult {
    BigRational min_value;     // min over 1 <= n <= n_max of n ||n a|| ||n b|| on the representatives
    std::uint64_t argmin = 0;  // smallest n attaining it
    BigRational error_bound;   // |computed - ideal| for every n <= n_max
    std::uint64_t n_max = 0;
};

/// Scans n ||n alpha|| ||n beta|| for 1 <= n <= n_max, with ||x|| = min({x}, 1 - {x}).
inline LittlewoodResult littlewood_scan(const ApproxReal& alpha, const ApproxReal& beta, std::uint64_t n_max) {
    detail::require(n_max >= 1, "n_max must be >= 1");
    for (const auto* a : {&alpha, &beta})
        if (a->width && std::bit_width(n_max) > *a->width)
            throw PrecisionBudgetExceeded("n_max " + std::to_string(n_max) + " exceeds the budget of a " +
                                          std::to_string(*a->width) + "-bit carrier");
    const BigInt A = alpha.value.get_num() % alpha.value.get_den();
    const BigInt B = beta.value.get_num() % beta.value.get_den();
    const BigInt& Da = alpha.value.get_den();
    const BigInt& Db = beta.value.get_den();
    BigInt ra = 0, rb = 0;  // n A mod Da, n B mod Db
    BigInt best;
    LittlewoodResult out;
    out.n_max = n_max;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        ra += A;
        if (ra >= Da) ra -= Da;
        rb += B;
        if (rb >= Db) rb -= Db;
        const BigInt na = std::min<BigInt>(ra, Da - ra);
        const BigInt nb = std::min<BigInt>(rb, Db - rb);
        BigInt v = big_from_u64(n) * na * nb;
        if (n == 1 || v < best) {
            best = std::move(v);
            out.argmin = n;
            if (best == 0) break;
        }
    }
    out.min_value = make_rational(best, Da * Db);
    const BigRational nm(big_from_u64(n_max));
    const BigRational ex = nm * alpha.error;
    const BigRational ey = nm * beta.error;
    out.error_bound = nm * (ex / 2 + ey / 2 + ex * ey);
    return out;
}

} // namespace qmclab
