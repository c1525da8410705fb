#pragma once

// Arbitrary-precision integers and rationals on top of GMP's C++ bindings.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "qmclab/errors.hpp"

namespace qmclab {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt big_from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline BigInt big_from_i64(std::int64_t v) {
    if (v >= 0) return big_from_u64(static_cast<std::uint64_t>(v));
    // avoid overflow on INT64_MIN
    BigInt r = big_from_u64(static_cast<std::uint64_t>(-(v + 1)));
    r += 1;
    return -r;
}

inline BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigInt pow2(std::uint64_t exp) {
    BigInt r = 1;
    r <<= static_cast<mp_bitcnt_t>(exp);
    return r;
}

/// Canonical rational num/den; rejects a zero denominator.
inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    detail::require(den != 0, "rational with zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline BigRational make_rational(std::int64_t num, std::int64_t den) {
    return make_rational(big_from_i64(num), big_from_i64(den));
}

inline BigInt floor_big(const BigRational& x) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

inline BigRational frac_part(const BigRational& x) {
    return x - BigRational(floor_big(x));
}

/// Always "p/q", integers included ("3/1", "0/1").
inline std::string to_string(const BigRational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Fixed-point decimal with `digits` fractional digits, rounded half-up.
inline std::string to_decimal(const BigRational& x, unsigned digits) {
    const bool negative = sgn(x) < 0;
    const BigRational ax = negative ? BigRational(-x) : x;
    const BigInt scale = pow_big(10, digits);
    const BigInt scaled = floor_big(ax * BigRational(scale) + BigRational(1, 2));
    const BigInt ip = scaled / scale;
    const BigInt fp = scaled % scale;
    std::string out = negative && scaled != 0 ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string f = fp.get_str();
        out += '.';
        out += std::string(digits - f.size(), '0');
        out += f;
    }
    return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline BigInt parse_integer(std::string_view s) {
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    require(all_digits(body), "not an integer: '" + std::string(s) + "'");
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s), 10);
}

} // namespace detail

/// Parses "p/q", "p", or a plain decimal "0.125" exactly.
inline BigRational parse_rational(std::string_view s) {
    detail::require(!s.empty(), "empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        return make_rational(detail::parse_integer(s.substr(0, slash)),
                             detail::parse_integer(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        const bool negative = !ip.empty() && ip.front() == '-';
        if (negative || (!ip.empty() && ip.front() == '+')) ip.remove_prefix(1);
        detail::require((ip.empty() || detail::all_digits(ip)) && (fp.empty() || detail::all_digits(fp)) &&
                            !(ip.empty() && fp.empty()),
                        "not a decimal: '" + std::string(s) + "'");
        BigInt num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        BigRational r = make_rational(num, pow_big(10, fp.size()));
        return negative ? BigRational(-r) : r;
    }
    return BigRational(detail::parse_integer(s));
}

inline double to_double(const BigRational& x) { return x.get_d(); }

} // namespace qmclab
