#pragma once

#include <cstdint>
#include <string>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// Nonnegative real x carried as integer_part + bits / 2^W with
/// bits = floor(frac(x) * 2^W). The truncation error is below 2^-W.
class FixedPointReal {
public:
    FixedPointReal(unsigned width, BigInt integer_part, BigInt bits, std::string label = {})
        : width_(width), integer_(std::move(integer_part)), bits_(std::move(bits)), label_(std::move(label)) {
        detail::require(width_ >= 1, "fixed-point width must be positive");
        detail::require(integer_ >= 0, "fixed-point carrier holds nonnegative reals only");
        detail::require(bits_ >= 0 && bits_ < pow2(width_), "fractional bits out of range");
    }

    /// From the full scaled integer floor(x * 2^W).
    static FixedPointReal from_scaled(unsigned width, const BigInt& scaled, std::string label = {}) {
        detail::require(scaled >= 0, "fixed-point carrier holds nonnegative reals only");
        BigInt ip = scaled >> width;
        BigInt bits = scaled - (ip << width);
        return FixedPointReal(width, std::move(ip), std::move(bits), std::move(label));
    }

    /// floor(x * 2^W) / 2^W for a nonnegative rational x; exact when x is dyadic
    /// with denominator dividing 2^W.
    static FixedPointReal from_rational(const BigRational& x, unsigned width) {
        detail::require(sgn(x) >= 0, "fixed-point carrier holds nonnegative reals only");
        return from_scaled(width, floor_big(x * BigRational(pow2(width))), to_string(x));
    }

    /// floor((a + b*sqrt(D)) / c * 2^W) / 2^W with b >= 0, c > 0, D >= 0.
    static FixedPointReal from_quadratic(const BigInt& a, const BigInt& b, std::uint64_t D, const BigInt& c,
                                         unsigned width, std::string label = {}) {
        detail::require(b >= 0 && c > 0, "quadratic carrier needs b >= 0 and c > 0");
        // floor((A + t) / c) = floor((A + floor t) / c) for integer A and c > 0
        BigInt radicand = BigInt(b) * b * big_from_u64(D);
        radicand <<= 2 * width;
        BigInt t;
        mpz_sqrt(t.get_mpz_t(), radicand.get_mpz_t());
        BigInt num = (BigInt(a) << width) + t;
        BigInt scaled;
        mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
        return from_scaled(width, scaled, std::move(label));
    }

    unsigned width() const { return width_; }
    const BigInt& integer_part() const { return integer_; }
    const BigInt& bits() const { return bits_; }
    const std::string& label() const { return label_; }
    BigInt scaled() const { return (integer_ << width_) + bits_; }

    BigRational fractional() const { return make_rational(bits_, pow2(width_)); }
    BigRational value() const { return BigRational(integer_) + fractional(); }

    /// Same value re-expressed at a narrower width (truncation).
    FixedPointReal truncated(unsigned narrower) const {
        detail::require(narrower <= width_, "can only truncate to a narrower width");
        return FixedPointReal(narrower, integer_, bits_ >> (width_ - narrower), label_);
    }

    friend bool operator==(const FixedPointReal& a, const FixedPointReal& b) {
        return a.width_ == b.width_ && a.integer_ == b.integer_ && a.bits_ == b.bits_;
    }

private:
    unsigned width_;
    BigInt integer_;
    BigInt bits_;
    std::string label_;
};

/// sqrt(D) with bits = floor(sqrt(D) * 2^W) via the integer square root of D * 4^W.
inline FixedPointReal fixedpoint_sqrt(std::uint64_t D, unsigned width) {
    return FixedPointReal::from_quadratic(0, 1, D, 1, width, "sqrt(" + std::to_string(D) + ")");
}

/// Default width for a Kronecker sequence read up to n_max: leaves at least
/// 64 correct fractional bits after the n-fold error amplification.
inline unsigned default_width(std::uint64_t n_max) {
    unsigned lg = 0;
    while (lg < 64 && (std::uint64_t{1} << lg) < n_max) ++lg;
    return 2 * lg + 64;
}

} // namespace qmclab
