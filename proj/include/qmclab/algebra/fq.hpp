#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qmclab/errors.hpp"

namespace qmclab {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline void validate_prime_modulus(std::uint32_t q) {
    detail::require(is_prime(q), "modulus " + std::to_string(q) + " is not prime");
}

/// Element of the prime field Z_q.
class Fq {
public:
    Fq(std::uint32_t q, std::uint64_t value) : q_(q) {
        validate_prime_modulus(q);
        value_ = static_cast<std::uint32_t>(value % q);
    }

    std::uint32_t modulus() const { return q_; }
    std::uint32_t value() const { return value_; }

    friend Fq operator+(Fq a, Fq b) { return {a.same(b), std::uint64_t{a.value_} + b.value_, 0}; }
    friend Fq operator-(Fq a, Fq b) { return {a.same(b), std::uint64_t{a.value_} + a.q_ - b.value_, 0}; }
    friend Fq operator*(Fq a, Fq b) { return {a.same(b), std::uint64_t{a.value_} * b.value_, 0}; }
    Fq operator-() const { return {q_, std::uint64_t{q_} - value_, 0}; }

    /// Multiplicative inverse by Fermat; zero has none.
    Fq inverse() const {
        detail::require(value_ != 0, "zero has no inverse in Z_q");
        std::uint64_t result = 1, base = value_, e = q_ - 2;
        while (e) {
            if (e & 1) result = result * base % q_;
            base = base * base % q_;
            e >>= 1;
        }
        return {q_, result, 0};
    }

    friend Fq operator/(Fq a, Fq b) { return a * b.inverse(); }
    friend bool operator==(const Fq&, const Fq&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.value_; }

private:
    // unchecked constructor for results of arithmetic on validated operands
    Fq(std::uint32_t q, std::uint64_t value, int) : q_(q), value_(static_cast<std::uint32_t>(value % q)) {}

    std::uint32_t same(const Fq& other) const {
        detail::require(q_ == other.q_, "mixed moduli in Z_q arithmetic");
        return q_;
    }

    std::uint32_t q_;
    std::uint32_t value_ = 0;
};

/// Base-q digits of n, least significant first; empty for n = 0.
inline std::vector<std::uint32_t> digits_of(std::uint64_t n, std::uint64_t base) {
    std::vector<std::uint32_t> out;
    while (n) {
        out.push_back(static_cast<std::uint32_t>(n % base));
        n /= base;
    }
    return out;
}

} // namespace qmclab
