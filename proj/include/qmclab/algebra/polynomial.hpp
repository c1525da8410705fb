#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmclab/algebra/fq.hpp"
#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// Polynomial over Z_q, coefficients stored lowest degree first and kept
/// trimmed (no trailing zeros). The zero polynomial has degree -1.
class Poly {
public:
    explicit Poly(std::uint32_t q) : q_(q) { validate_prime_modulus(q); }

    Poly(std::uint32_t q, std::vector<std::uint32_t> coeffs) : q_(q), c_(std::move(coeffs)) {
        validate_prime_modulus(q);
        for (auto v : c_) detail::require(v < q_, "polynomial coefficient out of range");
        trim();
    }

    static Poly monomial(std::uint32_t q, std::size_t degree, std::uint32_t coeff = 1) {
        std::vector<std::uint32_t> c(degree + 1, 0);
        c[degree] = coeff % q;
        return Poly(q, std::move(c));
    }

    /// n(x) = n_0 + n_1 x + ... from the base-q expansion of n.
    static Poly from_integer(std::uint32_t q, std::uint64_t n) { return Poly(q, digits_of(n, q)); }

    std::uint32_t modulus() const { return q_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check(b);
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + b[i]) % a.q_;
        return Poly(a.q_, std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check(b);
        std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + a.q_ - b[i]) % a.q_;
        return Poly(a.q_, std::move(r));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.q_);
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                acc[i + j] = (acc[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % a.q_;
        return Poly(a.q_, std::vector<std::uint32_t>(acc.begin(), acc.end()));
    }

    /// Euclidean division; returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        a.check(b);
        detail::require(!b.is_zero(), "polynomial division by zero");
        const std::uint64_t q = a.q_;
        const std::uint64_t inv = Fq(a.q_, b.leading()).inverse().value();
        std::vector<std::uint64_t> rem(a.c_.begin(), a.c_.end());
        const int db = b.degree();
        const int da = a.degree();
        std::vector<std::uint32_t> quot(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, 0);
        for (int k = da; k >= db; --k) {
            const std::uint64_t coef = rem[k] % q * inv % q;
            if (coef == 0) continue;
            quot[k - db] = static_cast<std::uint32_t>(coef);
            for (int j = 0; j <= db; ++j)
                rem[k - db + j] = (rem[k - db + j] + (q - coef) * b.c_[j]) % q;
        }
        rem.resize(std::max(0, db));
        return {Poly(a.q_, std::move(quot)), Poly(a.q_, std::vector<std::uint32_t>(rem.begin(), rem.end()))};
    }

    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        // monic normalization
        const std::uint64_t inv = Fq(a.q_, a.leading()).inverse().value();
        std::vector<std::uint32_t> c = a.c_;
        for (auto& v : c) v = static_cast<std::uint32_t>(v * inv % a.q_);
        return Poly(a.q_, std::move(c));
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Algebraic notation, highest degree first: "2x^3+x+1", "0" for zero.
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const auto v = c_[k];
            if (v == 0) continue;
            if (!out.empty()) out += '+';
            if (k == 0 || v != 1) out += std::to_string(v);
            if (k >= 1) out += 'x';
            if (k >= 2) out += '^' + std::to_string(k);
        }
        return out;
    }

    /// Inverse of to_string; accepts terms like "x", "3x^2", "2", joined by '+'.
    static Poly parse(std::uint32_t q, std::string_view text) {
        validate_prime_modulus(q);
        std::vector<std::uint64_t> acc;
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        detail::require(!s.empty(), "empty polynomial");
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t end = s.find('+', pos);
            if (end == std::string::npos) end = s.size();
            const std::string term = s.substr(pos, end - pos);
            detail::require(!term.empty(), "malformed polynomial '" + std::string(text) + "'");
            std::uint64_t coef = 1;
            std::size_t degree = 0;
            const auto xpos = term.find('x');
            const std::string cpart = term.substr(0, xpos);
            if (!cpart.empty()) {
                detail::require(detail::all_digits(cpart), "bad coefficient in '" + term + "'");
                coef = std::stoull(cpart);
            }
            if (xpos != std::string::npos) {
                degree = 1;
                const std::string rest = term.substr(xpos + 1);
                if (!rest.empty()) {
                    detail::require(rest.size() > 1 && rest[0] == '^' && detail::all_digits(rest.substr(1)),
                                    "bad exponent in '" + term + "'");
                    degree = std::stoull(rest.substr(1));
                }
            } else {
                detail::require(!cpart.empty(), "bad term '" + term + "'");
            }
            if (acc.size() <= degree) acc.resize(degree + 1, 0);
            acc[degree] = (acc[degree] + coef) % q;
            pos = end + 1;
        }
        return Poly(q, std::vector<std::uint32_t>(acc.begin(), acc.end()));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const Poly& other) const {
        detail::require(q_ == other.q_, "mixed moduli in polynomial arithmetic");
    }

    std::uint32_t q_;
    std::vector<std::uint32_t> c_;
};

} // namespace qmclab
