#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qmclab/algebra/fixed_point.hpp"
#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// Partial quotients [a_0; a_1, a_2, ...]. Rational expansions keep every
/// quotient after a_0 in `terms` (canonical: last quotient >= 2 unless the
/// value is an integer). Surd expansions of sqrt(D) split the tail into a
/// preperiod and a minimal nonempty period.
struct ContinuedFraction {
    enum class Kind { rational, surd };
    Kind kind = Kind::rational;
    BigInt leading;
    std::vector<BigInt> terms;      // rational tail
    BigInt D;                       // surd radicand
    std::vector<BigInt> preperiod;  // surd, after the leading term
    std::vector<BigInt> period;

    /// Largest quotient after the leading term (0 if there is none).
    BigInt max_quotient() const {
        BigInt m = 0;
        for (const auto* v : {&terms, &preperiod, &period})
            for (const auto& a : *v)
                if (a > m) m = a;
        return m;
    }

    /// Sum of the quotients after the leading term (rational expansions).
    BigInt quotient_sum() const {
        BigInt s = 0;
        for (const auto& a : terms) s += a;
        return s;
    }

    /// "[0; 2, 2]" for rationals, "[2; (1, 4)]" for surds.
    std::string to_string() const {
        auto join = [](const std::vector<BigInt>& v) {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
            return out;
        };
        std::string out = "[" + leading.get_str();
        if (kind == Kind::rational) {
            if (!terms.empty()) out += "; " + join(terms);
        } else {
            out += ";";
            if (!preperiod.empty()) out += " " + join(preperiod) + ",";
            out += " (" + join(period) + ")";
        }
        return out + "]";
    }
};

/// Value of [a_0; a_1, ..., a_k].
inline BigRational fold_convergent(const BigInt& leading, const std::vector<BigInt>& terms) {
    BigInt p = leading, q = 1, p_prev = 1, q_prev = 0;
    for (const auto& a : terms) {
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    return make_rational(p, q);
}

/// Euclidean expansion of a/N.
inline ContinuedFraction cf_rational(const BigInt& a, const BigInt& N) {
    detail::require(N > 0, "continued fraction of a/N needs N > 0");
    detail::require(a >= 0, "continued fraction of a/N needs a >= 0");
    ContinuedFraction cf;
    cf.kind = ContinuedFraction::Kind::rational;
    BigInt num = a, den = N, q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.leading = q;
    num = den;
    den = r;
    while (den != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        cf.terms.push_back(q);
        num = den;
        den = r;
    }
    return cf;
}

inline ContinuedFraction cf_rational(std::uint64_t a, std::uint64_t N) {
    return cf_rational(big_from_u64(a), big_from_u64(N));
}

namespace detail {

// (max quotient, quotient sum, quotient count) of a/N, 0 < a < N, leading 0 excluded.
struct QuotientStats {
    std::uint64_t max = 0;
    std::uint64_t sum = 0;
    std::uint64_t count = 0;
};

inline QuotientStats quotient_stats(std::uint64_t a, std::uint64_t N) {
    QuotientStats s;
    std::uint64_t num = N, den = a;
    while (den != 0) {
        const std::uint64_t q = num / den;
        const std::uint64_t r = num % den;
        s.max = std::max(s.max, q);
        s.sum += q;
        ++s.count;
        num = den;
        den = r;
    }
    return s;
}

} // namespace detail

/// Periodic expansion of sqrt(D) by the integer recurrence
/// m' = d a - m, d' = (D - m'^2) / d, a' = floor((a_0 + m') / d'),
/// stopped at the first repeated (m, d) state.
inline ContinuedFraction cf_surd(const BigInt& D) {
    detail::require(D >= 2, "surd radicand must be >= 2");
    BigInt a0;
    mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
    detail::require(a0 * a0 != D, "radicand " + D.get_str() + " is a perfect square");
    ContinuedFraction cf;
    cf.kind = ContinuedFraction::Kind::surd;
    cf.D = D;
    cf.leading = a0;
    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::vector<BigInt> tail;
    BigInt m = 0, d = 1, a = a0;
    while (true) {
        m = d * a - m;
        d = (D - m * m) / d;
        auto [it, fresh] = seen.emplace(std::make_pair(m, d), tail.size());
        if (!fresh) {
            cf.preperiod.assign(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(it->second));
            cf.period.assign(tail.begin() + static_cast<std::ptrdiff_t>(it->second), tail.end());
            return cf;
        }
        a = (a0 + m) / d;
        tail.push_back(a);
    }
}

inline ContinuedFraction cf_surd(std::uint64_t D) { return cf_surd(big_from_u64(D)); }

/// The first `count` quotients after the leading term of a surd expansion.
inline std::vector<BigInt> surd_terms(const ContinuedFraction& cf, std::size_t count) {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i < cf.preperiod.size()) out.push_back(cf.preperiod[i]);
        else out.push_back(cf.period[(i - cf.preperiod.size()) % cf.period.size()]);
    }
    return out;
}

/// A_K: the largest quotient (leading term excluded) of 2^K sqrt 2 = sqrt(2^(2K+1)).
/// K = 0 is sqrt 2 itself.
inline BigInt largest_pq_2k_sqrt2(unsigned K) { return cf_surd(pow2(2 * K + 1)).max_quotient(); }

/// A_0, ..., A_L together with the running maximum B_K = max_{j <= K} A_j.
struct BStatistic {
    std::vector<BigInt> A;
    std::vector<BigInt> B;
};

inline BStatistic b_statistic(unsigned L) {
    BStatistic out;
    for (unsigned K = 0; K <= L; ++K) {
        out.A.push_back(largest_pq_2k_sqrt2(K));
        out.B.push_back(K == 0 ? out.A.back() : std::max(out.B.back(), out.A.back()));
    }
    return out;
}

/// Largest of the first `depth` quotients (leading term excluded) of a
/// fixed-point value. A quotient is only trusted while the convergent
/// denominator q satisfies 2 q^2 <= 2^W; if that fails before `depth`
/// quotients are known, the width is too small and PrecisionBudgetExceeded
/// is thrown. A dyadic value whose expansion ends early is not an error.
inline BigInt max_pq_of_real(const FixedPointReal& alpha, std::size_t depth) {
    detail::require(depth >= 1, "depth must be positive");
    const BigInt limit = pow2(alpha.width());
    BigInt num = limit, den = alpha.bits();
    BigInt q_prev = 0, q = 1;  // denominators of the convergents
    BigInt best = 0;
    for (std::size_t k = 0; k < depth; ++k) {
        if (den == 0) return best;
        BigInt a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        BigInt q_next = a * q + q_prev;
        if (2 * q_next * q_next > limit)
            throw PrecisionBudgetExceeded("W=" + std::to_string(alpha.width()) + " resolves only " + std::to_string(k) +
                                          " partial quotients; " + std::to_string(depth) + " requested");
        if (a > best) best = a;
        q_prev = std::move(q);
        q = std::move(q_next);
        num = std::move(den);
        den = std::move(r);
    }
    return best;
}

} // namespace qmclab
