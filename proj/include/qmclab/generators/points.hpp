#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/generators/sequence_spec.hpp"

namespace qmclab {

/// How the coordinates of a point were obtained.
struct Representation {
    enum class Kind { exact, fixedpoint };
    Kind kind = Kind::exact;
    unsigned width = 0;      // W, fixed-point only
    bool coerced = false;    // exact coordinates were truncated to W bits

    static Representation exact() { return {}; }
    static Representation fixed(unsigned w, bool coerced = false) { return {Kind::fixedpoint, w, coerced}; }

    bool is_exact() const { return kind == Kind::exact; }

    std::string tag() const {
        if (is_exact()) return "exact";
        return coerced ? "fixedpoint-coerced" : "fixedpoint";
    }

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Point of [0,1)^d. Every coordinate is stored as an exact rational; for
/// fixed-point points it is bits / 2^W.
struct UnitPoint {
    std::vector<BigRational> coords;
    Representation repr;

    std::size_t dimension() const { return coords.size(); }
    friend bool operator==(const UnitPoint&, const UnitPoint&) = default;
};

struct PointSet {
    std::vector<UnitPoint> points;
    SpecPtr spec;            // null when read back from a file
    std::uint64_t start = 0;
    std::size_t dim = 0;
    Representation repr;
    unsigned precision = 0;  // digit precision L of digital families, 0 if n/a

    std::size_t count() const { return points.size(); }

    /// The first n points as a new set (same origin and start).
    PointSet prefix(std::size_t n) const {
        detail::require(n <= points.size(), "prefix longer than the point set");
        PointSet out{std::vector<UnitPoint>(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n)), spec,
                     start, dim, repr, precision};
        return out;
    }

    static PointSet from_coords(std::vector<std::vector<BigRational>> rows) {
        PointSet ps;
        ps.dim = rows.empty() ? 0 : rows.front().size();
        for (auto& r : rows) {
            detail::require(r.size() == ps.dim, "points of mixed dimension");
            for (const auto& c : r) detail::require(sgn(c) >= 0 && c < 1, "coordinate outside [0, 1)");
            ps.points.push_back(UnitPoint{std::move(r), Representation::exact()});
        }
        return ps;
    }
};

} // namespace qmclab
