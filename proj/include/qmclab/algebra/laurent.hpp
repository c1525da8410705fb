#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qmclab/algebra/polynomial.hpp"
#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// Truncated formal Laurent series g = sum_{k >= omega} a_k x^{-k} over Z_q.
///
/// Coefficients are known for indices omega .. known_through() inclusive and
/// unknown beyond. Leading zeros are stripped at construction, so a_omega != 0
/// unless the series is zero within its window, in which case coeffs() is
/// empty and only known_through() carries information.
class LaurentSeries {
public:
    /// Series with a_k = coeffs[k - omega] for k = omega .. omega + coeffs.size() - 1.
    LaurentSeries(std::uint32_t q, std::int64_t omega, std::vector<std::uint32_t> coeffs)
        : q_(q), omega_(omega), coeffs_(std::move(coeffs)),
          known_through_(omega + static_cast<std::int64_t>(coeffs_.size()) - 1) {
        validate_prime_modulus(q);
        for (auto v : coeffs_) detail::require(v < q_, "Laurent coefficient out of range");
        normalize();
    }

    /// As above, but with an explicit last known index (coefficients between the
    /// supplied ones and known_through are zero).
    LaurentSeries(std::uint32_t q, std::int64_t omega, std::vector<std::uint32_t> coeffs,
                  std::int64_t known_through)
        : q_(q), omega_(omega), coeffs_(std::move(coeffs)), known_through_(known_through) {
        validate_prime_modulus(q);
        for (auto v : coeffs_) detail::require(v < q_, "Laurent coefficient out of range");
        detail::require(known_through_ >= omega_ + static_cast<std::int64_t>(coeffs_.size()) - 1,
                        "Laurent series window shorter than its coefficient list");
        normalize();
    }

    static LaurentSeries zero(std::uint32_t q, std::int64_t known_through) {
        return LaurentSeries(q, known_through + 1, {}, known_through);
    }

    /// Expansion of the rational function g/f, known through index `known_through`.
    static LaurentSeries from_rational(const Poly& g, const Poly& f, std::int64_t known_through) {
        detail::require(!f.is_zero(), "rational function with zero denominator");
        detail::require(g.modulus() == f.modulus(), "mixed moduli in rational function");
        detail::require(known_through >= 0, "expansion depth must be nonnegative");
        const std::uint32_t q = f.modulus();
        if (g.is_zero()) return zero(q, known_through);
        // (g x^K) div f holds a_k at degree K - k for every k <= K.
        const auto shift = static_cast<std::size_t>(known_through);
        const Poly quotient = divmod(g * Poly::monomial(q, shift), f).first;
        const std::int64_t first = known_through - quotient.degree();
        std::vector<std::uint32_t> c;
        c.reserve(static_cast<std::size_t>(quotient.degree() + 1));
        for (int deg = quotient.degree(); deg >= 0; --deg) c.push_back(quotient[deg]);
        return LaurentSeries(q, first, std::move(c), known_through);
    }

    std::uint32_t modulus() const { return q_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t omega() const { return omega_; }
    std::int64_t known_through() const { return known_through_; }
    /// Number of coefficients retained after the leading one.
    std::int64_t trunc() const { return known_through_ - omega_; }
    /// Discrete exponential valuation nu(g) = -omega; lowest() for zero.
    std::int64_t valuation() const {
        return is_zero() ? std::numeric_limits<std::int64_t>::lowest() : -omega_;
    }

    /// a_k; throws when k lies beyond the known window.
    std::uint32_t coeff(std::int64_t k) const {
        if (k > known_through_)
            throw TruncationInsufficient("coefficient a_" + std::to_string(k) +
                                         " beyond truncation index " + std::to_string(known_through_));
        if (is_zero() || k < omega_ || k >= omega_ + static_cast<std::int64_t>(coeffs_.size())) return 0;
        return coeffs_[static_cast<std::size_t>(k - omega_)];
    }

    const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            omega_ = known_through_ + 1;
            return;
        }
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        omega_ += static_cast<std::int64_t>(lead);
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::uint32_t q_;
    std::int64_t omega_;
    std::vector<std::uint32_t> coeffs_;
    std::int64_t known_through_;
};

/// f * p. The known window shifts with the leading exponent: coefficients
/// that would depend on unknown terms of f are not produced.
inline LaurentSeries laurent_mul_poly(const LaurentSeries& f, const Poly& p) {
    detail::require(f.modulus() == p.modulus(), "mixed moduli in Laurent product");
    const std::uint32_t q = f.modulus();
    if (p.is_zero()) return LaurentSeries::zero(q, std::numeric_limits<std::int64_t>::max() / 4);
    const int e = p.degree();
    const std::int64_t known = f.known_through() - e;
    if (f.is_zero()) return LaurentSeries::zero(q, known);
    const std::int64_t first = f.omega() - e;
    const auto& a = f.coeffs();
    std::vector<std::uint64_t> acc(a.size() + static_cast<std::size_t>(e), 0);
    // a_k x^{-k} * p_i x^i lands on index k - i; offset from `first` is (k - omega) + (e - i)
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        for (int i = 0; i <= e; ++i)
            acc[j + static_cast<std::size_t>(e - i)] = (acc[j + static_cast<std::size_t>(e - i)] +
                                                         std::uint64_t{a[j]} * p[static_cast<std::size_t>(i)]) % q;
    }
    std::vector<std::uint32_t> c(acc.begin(), acc.end());
    const std::int64_t last_possible = first + static_cast<std::int64_t>(c.size()) - 1;
    if (last_possible > known) c.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, known - first + 1)));
    if (first > known) return LaurentSeries::zero(q, known);
    return LaurentSeries(q, first, std::move(c), known);
}

/// Exact value of sum_{k = max(1, omega)}^{L} a_k q^{-k}, in [0, 1).
inline BigRational laurent_frac_eval(const LaurentSeries& f, std::int64_t L) {
    detail::require(L >= 0, "negative evaluation precision");
    if (L > f.known_through())
        throw TruncationInsufficient("requested " + std::to_string(L) + " digits but series is known through index " +
                                     std::to_string(f.known_through()));
    BigInt num = 0;
    const std::int64_t q = f.modulus();
    for (std::int64_t k = 1; k <= L; ++k) {
        num *= static_cast<unsigned long>(q);
        num += f.coeff(k);
    }
    return make_rational(num, pow_big(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(L)));
}

} // namespace qmclab
