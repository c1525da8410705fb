#pragma once

// Point files: one header line
//   # spec=<text>\trepr=<tag>[\tW=<bits>][\tL=<digits>]\tstart=<n>\tcount=<c>\td=<dim>
// followed by one point per line, coordinates tab-separated as "p/q" or as
// decimals with a fixed number of digits.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/generators/points.hpp"
#include "qmclab/generators/spec_text.hpp"

namespace qmclab {

inline void write_points(std::ostream& os, const PointSet& ps, std::optional<unsigned> decimal_digits = {}) {
    os << "# spec=" << (ps.spec ? format_spec(*ps.spec) : "unknown") << "\trepr=" << ps.repr.tag();
    if (!ps.repr.is_exact()) os << "\tW=" << ps.repr.width;
    if (ps.precision) os << "\tL=" << ps.precision;
    os << "\tstart=" << ps.start << "\tcount=" << ps.count() << "\td=" << ps.dim << '\n';
    for (const auto& p : ps.points) {
        for (std::size_t j = 0; j < p.coords.size(); ++j) {
            if (j) os << '\t';
            os << (decimal_digits ? to_decimal(p.coords[j], *decimal_digits) : to_string(p.coords[j]));
        }
        os << '\n';
    }
}

/// Reads a point file. Decimal coordinates are taken as the exact rationals
/// they spell. The sequence text is not re-parsed; the header only restores the
/// representation tag and precision fields.
inline PointSet read_points(std::istream& is) {
    PointSet ps;
    std::string line;
    bool have_dim = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream fields(line.substr(1));
            std::string field;
            while (std::getline(fields, field, '\t')) {
                field = text::trim(field);
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const auto key = field.substr(0, eq);
                const auto value = field.substr(eq + 1);
                if (key == "repr") {
                    if (value != "exact") ps.repr = Representation::fixed(ps.repr.width, value == "fixedpoint-coerced");
                } else if (key == "W") {
                    ps.repr.width = static_cast<unsigned>(text::parse_u64(value));
                } else if (key == "L") {
                    ps.precision = static_cast<unsigned>(text::parse_u64(value));
                } else if (key == "start") {
                    ps.start = text::parse_u64(value);
                }
            }
            continue;
        }
        UnitPoint p{{}, ps.repr};
        std::istringstream coords(line);
        std::string c;
        while (std::getline(coords, c, '\t')) {
            c = text::trim(c);
            if (c.empty()) continue;
            auto v = parse_rational(c);
            detail::require(sgn(v) >= 0 && v < 1, "coordinate '" + c + "' outside [0, 1)");
            p.coords.push_back(std::move(v));
        }
        if (!have_dim) {
            ps.dim = p.coords.size();
            have_dim = true;
        }
        detail::require(p.coords.size() == ps.dim, "point file mixes dimensions");
        ps.points.push_back(std::move(p));
    }
    for (auto& p : ps.points) p.repr = ps.repr;
    return ps;
}

} // namespace qmclab
