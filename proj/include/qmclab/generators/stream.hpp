#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>

#include "qmclab/generators/families.hpp"
#include "qmclab/generators/points.hpp"
#include "qmclab/generators/sequence_spec.hpp"
#include "qmclab/parallel.hpp"

namespace qmclab {

namespace detail {

inline UnitPoint coerce_to_width(const UnitPoint& p, unsigned width) {
    UnitPoint out{{}, Representation::fixed(width, true)};
    out.coords.reserve(p.coords.size());
    const BigRational scale(pow2(width));
    for (const auto& c : p.coords) out.coords.push_back(make_rational(floor_big(c * scale), pow2(width)));
    return out;
}

// Joins two component points; exact sides are truncated to the partner's width,
// and two fixed-point sides meet at the narrower width.
inline UnitPoint concat_points(const UnitPoint& a, const UnitPoint& b) {
    UnitPoint left = a;
    UnitPoint right = b;
    if (!(a.repr.is_exact() && b.repr.is_exact())) {
        unsigned w = 0;
        if (!a.repr.is_exact()) w = a.repr.width;
        if (!b.repr.is_exact()) w = w == 0 ? b.repr.width : std::min(w, b.repr.width);
        const bool was_coerced = a.repr.coerced || b.repr.coerced;
        if (a.repr.is_exact() || a.repr.width != w) left = coerce_to_width(a, w);
        if (b.repr.is_exact() || b.repr.width != w) right = coerce_to_width(b, w);
        const bool coerced = was_coerced || left.repr.coerced || right.repr.coerced;
        UnitPoint out{std::move(left.coords), Representation::fixed(w, coerced)};
        out.coords.insert(out.coords.end(), right.coords.begin(), right.coords.end());
        return out;
    }
    left.coords.insert(left.coords.end(), right.coords.begin(), right.coords.end());
    return left;
}

} // namespace detail

/// The n-th point of the sequence described by `spec`.
inline UnitPoint point_at(const SequenceSpec& spec, std::uint64_t n) {
    return std::visit(
        [n](const auto& s) -> UnitPoint {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                return kronecker_point(n, s.alphas);
            } else if constexpr (std::is_same_v<T, HaltonSpec>) {
                UnitPoint p{{}, Representation::exact()};
                for (auto b : s.bases) p.coords.push_back(radical_inverse(n, b));
                return p;
            } else if constexpr (std::is_same_v<T, DigitalSpec>) {
                return digital_point(n, s.q, s.matrices, s.precision);
            } else if constexpr (std::is_same_v<T, DigitalKroneckerSpec>) {
                return digital_kronecker_point(n, s.q, s.series, s.precision);
            } else if constexpr (std::is_same_v<T, LatticeSpec>) {
                detail::require(n < s.N, "lattice index outside [0, N)");
                return lattice_point(n, s.N, s.gens);
            } else if constexpr (std::is_same_v<T, RationalNetSpec>) {
                return rational_net_point(n, s.q, s.f, s.gs);
            } else if constexpr (std::is_same_v<T, HammersleySpec>) {
                return hammersley_point(n, s.N, s.bases);
            } else if constexpr (std::is_same_v<T, PowerRatioSpec>) {
                return UnitPoint{{power_ratio_point(n, s.p, s.r)}, Representation::exact()};
            } else if constexpr (std::is_same_v<T, DigitSumFilteredSpec>) {
                return point_at(*s.inner, digitsum_filtered_index(n));
            } else {
                return detail::concat_points(point_at(*s.left, n), point_at(*s.right, n));
            }
        },
        spec.variant());
}

/// Representation every point of `spec` carries.
inline Representation representation_of(const SequenceSpec& spec) {
    return std::visit(
        [](const auto& s) -> Representation {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                return Representation::fixed(s.alphas.front().width());
            } else if constexpr (std::is_same_v<T, DigitSumFilteredSpec>) {
                return representation_of(*s.inner);
            } else if constexpr (std::is_same_v<T, HybridSpec>) {
                const auto a = representation_of(*s.left);
                const auto b = representation_of(*s.right);
                if (a.is_exact() && b.is_exact()) return a;
                unsigned w = a.is_exact() ? b.width : (b.is_exact() ? a.width : std::min(a.width, b.width));
                const bool coerced = a.coerced || b.coerced || a.is_exact() || b.is_exact() || a.width != b.width;
                return Representation::fixed(w, coerced);
            } else {
                return Representation::exact();
            }
        },
        spec.variant());
}

/// Largest digit precision L among the digital components, 0 if none.
inline unsigned digit_precision_of(const SequenceSpec& spec) {
    return std::visit(
        [](const auto& s) -> unsigned {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DigitalSpec> || std::is_same_v<T, DigitalKroneckerSpec>) return s.precision;
            else if constexpr (std::is_same_v<T, DigitSumFilteredSpec>) return digit_precision_of(*s.inner);
            else if constexpr (std::is_same_v<T, HybridSpec>)
                return std::max(digit_precision_of(*s.left), digit_precision_of(*s.right));
            else return 0;
        },
        spec.variant());
}

/// Points start .. start+count-1. Index ranges evaluate independently, so
/// concatenated streams equal one long stream.
inline PointSet stream(const SpecPtr& spec, std::uint64_t start, std::uint64_t count, unsigned workers = 1) {
    detail::require(spec != nullptr, "stream needs a sequence spec");
    if (auto size = spec->finite_size())
        detail::require(start + count <= *size,
                        "finite family has " + std::to_string(*size) + " points; requested up to index " +
                            std::to_string(start + count - 1));
    PointSet ps;
    ps.spec = spec;
    ps.start = start;
    ps.dim = spec->dimension();
    ps.repr = representation_of(*spec);
    ps.precision = digit_precision_of(*spec);
    ps.points.resize(count);
    parallel_for(count, workers, [&](std::size_t i) { ps.points[i] = point_at(*spec, start + i); });
    return ps;
}

} // namespace qmclab
