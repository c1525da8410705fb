#pragma once

// Points rescaled onto per-coordinate integer grids: coordinate j of point i
// is num[i*d + j] / scale[j], with scale[j] the lcm of the denominators. All
// exact discrepancy paths then compare integers over one common denominator.
// The integer type is the narrowest of int64, __int128 or BigInt that cannot
// overflow for the given set.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/points.hpp"

namespace qmclab::detail {

using i128 = __int128;

inline BigInt to_big(const BigInt& v) { return v; }
inline BigInt to_big(std::int64_t v) { return big_from_i64(v); }
inline BigInt to_big(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt r = big_from_u64(static_cast<std::uint64_t>(u >> 64));
    r <<= 64;
    r += big_from_u64(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-r) : r;
}

template <class Int>
Int from_big(const BigInt& v);

template <>
inline BigInt from_big<BigInt>(const BigInt& v) {
    return v;
}

template <>
inline std::int64_t from_big<std::int64_t>(const BigInt& v) {
    return v.get_si();
}

template <>
inline i128 from_big<i128>(const BigInt& v) {
    BigInt a = abs(v);
    BigInt hi = a >> 64;
    BigInt lo = a - (hi << 64);
    std::uint64_t words[2] = {0, 0};
    mpz_export(&words[0], nullptr, -1, 8, 0, 0, lo.get_mpz_t());
    mpz_export(&words[1], nullptr, -1, 8, 0, 0, hi.get_mpz_t());
    const auto u = (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
    return sgn(v) < 0 ? -static_cast<i128>(u) : static_cast<i128>(u);
}

template <class Int>
Int from_count(std::size_t n) {
    if constexpr (std::is_same_v<Int, BigInt>) return big_from_u64(n);
    else return static_cast<Int>(n);
}

template <class Int>
struct ScaledSet {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<Int> num;
    std::vector<Int> scale;

    const Int& at(std::size_t i, std::size_t j) const { return num[i * d + j]; }
};

struct BigScaled {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<BigInt> num;
    std::vector<BigInt> scale;
};

inline BigScaled scale_points(const PointSet& ps) {
    BigScaled s;
    s.n = ps.count();
    s.d = ps.dim;
    s.scale.assign(s.d, BigInt(1));
    for (const auto& p : ps.points) {
        require(p.coords.size() == s.d, "points of mixed dimension");
        for (std::size_t j = 0; j < s.d; ++j) {
            require(sgn(p.coords[j]) >= 0 && p.coords[j] < 1, "coordinate outside [0, 1)");
            mpz_lcm(s.scale[j].get_mpz_t(), s.scale[j].get_mpz_t(), p.coords[j].get_den_mpz_t());
        }
    }
    s.num.reserve(s.n * s.d);
    for (const auto& p : ps.points)
        for (std::size_t j = 0; j < s.d; ++j) s.num.push_back(p.coords[j].get_num() * (s.scale[j] / p.coords[j].get_den()));
    return s;
}

template <class Int>
ScaledSet<Int> narrow(const BigScaled& s) {
    ScaledSet<Int> out;
    out.n = s.n;
    out.d = s.d;
    out.num.reserve(s.num.size());
    for (const auto& v : s.num) out.num.push_back(from_big<Int>(v));
    for (const auto& v : s.scale) out.scale.push_back(from_big<Int>(v));
    return out;
}

/// Bits needed for N * prod(scale) times a small factor `extra_bits`.
inline std::size_t magnitude_bits(const BigScaled& s, std::size_t extra_bits) {
    std::size_t bits = mpz_sizeinbase(big_from_u64(s.n + 1).get_mpz_t(), 2) + extra_bits;
    for (const auto& m : s.scale) bits += mpz_sizeinbase(m.get_mpz_t(), 2);
    return bits;
}

/// Calls fn(ScaledSet<Int>) with the narrowest safe integer type.
template <class Fn>
decltype(auto) with_scaled(const PointSet& ps, std::size_t extra_bits, Fn&& fn) {
    const BigScaled big = scale_points(ps);
    const std::size_t bits = magnitude_bits(big, extra_bits);
    if (bits <= 62) return fn(narrow<std::int64_t>(big));
    if (bits <= 125) return fn(narrow<i128>(big));
    return fn(narrow<BigInt>(big));
}

template <class Int>
BigRational ratio(const Int& num, const Int& den) {
    return make_rational(to_big(num), to_big(den));
}

} // namespace qmclab::detail
