#pragma once

// Point functions for every sequence family. All of them are pure functions of
// the index n (origin n = 0).

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmclab/algebra/fixed_point.hpp"
#include "qmclab/algebra/gen_matrix.hpp"
#include "qmclab/algebra/laurent.hpp"
#include "qmclab/algebra/polynomial.hpp"
#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/points.hpp"

namespace qmclab {

/// psi_b(n): digits of n in base b mirrored about the radix point.
inline BigRational radical_inverse(std::uint64_t n, std::uint64_t base) {
    detail::require(base >= 2, "radical inverse base must be >= 2");
    BigInt num = 0;
    BigInt den = 1;
    while (n) {
        num = num * static_cast<unsigned long>(base) + static_cast<unsigned long>(n % base);
        den *= static_cast<unsigned long>(base);
        n /= base;
    }
    return make_rational(num, den);
}

namespace detail {

inline void check_kronecker_budget(std::uint64_t n, unsigned width, unsigned guard_bits) {
    // n * 2^-W must stay below 2^-guard_bits
    const unsigned needed = n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n));
    if (needed + guard_bits > width)
        throw PrecisionBudgetExceeded("index " + std::to_string(n) + " needs more than " + std::to_string(width) +
                                      " fractional bits (guard " + std::to_string(guard_bits) + ")");
}

} // namespace detail

/// ({n alpha_1}, ..., {n alpha_d}) from the W-bit carriers by integer
/// multiply-and-mask. Each coordinate is within n * 2^-W of the ideal value.
inline UnitPoint kronecker_point(std::uint64_t n, std::span<const FixedPointReal> alphas, unsigned guard_bits = 0) {
    detail::require(!alphas.empty(), "Kronecker point needs at least one alpha");
    const unsigned w = alphas.front().width();
    detail::check_kronecker_budget(n, w, guard_bits);
    const BigInt modulus = pow2(w);
    UnitPoint p{{}, Representation::fixed(w)};
    p.coords.reserve(alphas.size());
    for (const auto& a : alphas) {
        detail::require(a.width() == w, "Kronecker alphas must share one width");
        BigInt bits = big_from_u64(n) * a.bits();
        mpz_fdiv_r_2exp(bits.get_mpz_t(), bits.get_mpz_t(), w);
        p.coords.push_back(make_rational(bits, modulus));
    }
    return p;
}

namespace detail {

inline BigRational digits_to_fraction(std::span<const std::uint32_t> y, std::uint32_t q) {
    BigInt num = 0;
    for (auto v : y) num = num * q + v;
    return make_rational(num, pow_big(q, y.size()));
}

} // namespace detail

/// Digital sequence point: coordinate j is sum_{k=1}^{L} y_k q^-k with
/// y = C_j * digits(n) over Z_q.
inline UnitPoint digital_point(std::uint64_t n, std::uint32_t q, std::span<const GenMatrix> matrices, unsigned L) {
    detail::require(L >= 1, "digital precision must be positive");
    const auto digits = digits_of(n, q);
    UnitPoint p{{}, Representation::exact()};
    p.coords.reserve(matrices.size());
    for (const auto& C : matrices) {
        detail::require(C.modulus() == q, "matrix modulus differs from sequence base");
        const auto y = mat_vec_mod_q(C, digits, L);
        p.coords.push_back(detail::digits_to_fraction(y, q));
    }
    return p;
}

/// Digital Kronecker point: coordinate j is {n(x) f_j(x)} at x = q to L digits.
inline UnitPoint digital_kronecker_point(std::uint64_t n, std::uint32_t q, std::span<const LaurentSeries> series,
                                         unsigned L) {
    const Poly nx = Poly::from_integer(q, n);
    UnitPoint p{{}, Representation::exact()};
    p.coords.reserve(series.size());
    for (const auto& f : series) {
        detail::require(f.modulus() == q, "series modulus differs from sequence base");
        p.coords.push_back(laurent_frac_eval(laurent_mul_poly(f, nx), L));
    }
    return p;
}

inline UnitPoint lattice_point(std::uint64_t n, std::uint64_t N, std::span<const std::uint64_t> gens) {
    detail::require(N >= 1, "lattice size must be positive");
    UnitPoint p{{}, Representation::exact()};
    p.coords.reserve(gens.size());
    for (auto a : gens) {
        detail::require(a < N, "lattice generator outside [0, N)");
        const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(n) * a) % N);
        p.coords.push_back(make_rational(big_from_u64(r), big_from_u64(N)));
    }
    return p;
}

/// All N points ({n a_1 / N}, ..., {n a_d / N}), n = 0..N-1.
inline PointSet lattice_point_set(std::uint64_t N, std::vector<std::uint64_t> gens) {
    auto spec = SequenceSpec::lattice(N, gens);
    PointSet ps;
    ps.spec = spec;
    ps.dim = gens.size();
    ps.points.reserve(N);
    for (std::uint64_t n = 0; n < N; ++n) ps.points.push_back(lattice_point(n, N, gens));
    return ps;
}

/// Rational-function net point {n(x) g_i(x) / f(x)} at x = q, truncated to
/// t = deg f digits (denominator divides q^t).
inline UnitPoint rational_net_point(std::uint64_t n, std::uint32_t q, const Poly& f, std::span<const Poly> gs) {
    const int t = f.degree();
    detail::require(t >= 1, "denominator must have degree >= 1");
    detail::require(pow_big(q, static_cast<std::uint64_t>(t)) > big_from_u64(n), "index " + std::to_string(n) + " outside the net (n < q^deg f)");
    const Poly nx = Poly::from_integer(q, n);
    UnitPoint p{{}, Representation::exact()};
    p.coords.reserve(gs.size());
    for (const auto& g : gs) {
        detail::require(g.degree() < t, "numerator degree must be below deg f");
        detail::require(gcd(g, f).degree() == 0, "numerator not coprime to the denominator");
        // {n g / f} = (n g mod f) / f, then its first t digits
        const Poly r = (nx * g) % f;
        const auto s = LaurentSeries::from_rational(r, f, t);
        p.coords.push_back(laurent_frac_eval(s, t));
    }
    return p;
}

/// {(p/r)^n} = (p^n mod r^n) / r^n, exact.
inline BigRational power_ratio_point(std::uint64_t n, std::uint64_t p, std::uint64_t r) {
    detail::require(r >= 1, "power ratio denominator must be positive");
    const BigInt num = pow_big(p, n);
    const BigInt den = pow_big(r, n);
    BigInt rem;
    mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return make_rational(rem, den);
}

/// k-th smallest n with even binary digit sum.
inline std::uint64_t digitsum_filtered_index(std::uint64_t k) {
    const std::uint64_t n = 2 * k;
    return (std::popcount(n) % 2 == 0) ? n : n + 1;
}

/// (n/N, psi_{b_1}(n), ..., psi_{b_s}(n)) for n < N.
inline UnitPoint hammersley_point(std::uint64_t n, std::uint64_t N, std::span<const std::uint64_t> bases) {
    detail::require(n < N, "Hammersley index outside [0, N)");
    UnitPoint p{{make_rational(big_from_u64(n), big_from_u64(N))}, Representation::exact()};
    for (auto b : bases) p.coords.push_back(radical_inverse(n, b));
    return p;
}

} // namespace qmclab
