#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "qmclab/discrepancy/bracket.hpp"
#include "qmclab/discrepancy/exact.hpp"
#include "qmclab/discrepancy/oracle.hpp"
#include "qmclab/discrepancy/result.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

enum class DiscAlgo { automatic, one_d, two_d, grid, bracket };

inline DiscAlgo parse_algo(const std::string& s) {
    if (s == "auto") return DiscAlgo::automatic;
    if (s == "1d") return DiscAlgo::one_d;
    if (s == "2d") return DiscAlgo::two_d;
    if (s == "grid") return DiscAlgo::grid;
    if (s == "bracket") return DiscAlgo::bracket;
    throw ValidationError("unknown algorithm '" + s + "' (auto|1d|2d|grid|bracket)");
}

inline std::string to_string(DiscAlgo a) {
    switch (a) {
    case DiscAlgo::automatic: return "auto";
    case DiscAlgo::one_d: return "1d";
    case DiscAlgo::two_d: return "2d";
    case DiscAlgo::grid: return "grid";
    case DiscAlgo::bracket: return "bracket";
    }
    return "?";
}

inline DiscKind parse_kind(const std::string& s) {
    if (s == "star") return DiscKind::star;
    if (s == "extreme") return DiscKind::extreme;
    throw ValidationError("unknown discrepancy kind '" + s + "' (star|extreme)");
}

struct DiscOptions {
    DiscKind kind = DiscKind::star;
    DiscAlgo algo = DiscAlgo::automatic;
    unsigned k = 0;                       // bracket resolution; 0 picks a default
    std::uint64_t budget = default_work_budget;
    unsigned workers = 1;
};

/// Bracket resolution used when none is requested: the largest power of two
/// with (k+1)^d inside the budget and below 2^22 corners, capped at 2^16.
inline unsigned default_resolution(std::size_t d, std::uint64_t budget) {
    budget = std::min<std::uint64_t>(budget, std::uint64_t{1} << 22);
    unsigned k = 2;
    while (k < (1u << 16)) {
        const unsigned next = k * 2;
        std::uint64_t corners = 1;
        bool fits = true;
        for (std::size_t j = 0; j < d && fits; ++j) {
            if (corners > budget / (next + 1)) fits = false;
            else corners *= next + 1;
        }
        if (!fits) break;
        k = next;
    }
    return k;
}

/// Dispatches to the requested algorithm. With `automatic`, exact paths are
/// tried first (1D formulas, 2D sweep, critical grid) and a budget failure
/// falls back to the bracket. Extreme discrepancy has no bracketed form.
inline DiscrepancyResult compute_discrepancy(const PointSet& ps, const DiscOptions& opt = {}) {
    detail::require_nonempty(ps, 0);
    const std::size_t d = ps.dim;
    auto bracket = [&] { return star_disc_bracket(ps, opt.k ? opt.k : default_resolution(d, opt.budget), opt.budget); };

    if (opt.kind == DiscKind::extreme) {
        switch (opt.algo) {
        case DiscAlgo::bracket: throw ValidationError("bracketed extreme discrepancy is not supported");
        case DiscAlgo::one_d: return extreme_disc_1d(ps);
        case DiscAlgo::two_d:
            detail::require(d == 2, "the 2d algorithm needs 2-dimensional points");
            return extreme_disc_exact(ps, opt.budget, opt.workers);
        default: return extreme_disc_exact(ps, opt.budget, opt.workers);
        }
    }
    switch (opt.algo) {
    case DiscAlgo::one_d: return star_disc_1d(ps);
    case DiscAlgo::two_d: return star_disc_2d_sweep(ps, opt.budget);
    case DiscAlgo::grid: return star_disc_exact(ps, opt.budget, opt.workers);
    case DiscAlgo::bracket: return bracket();
    case DiscAlgo::automatic: break;
    }
    if (d == 1) return star_disc_1d(ps);
    try {
        return d == 2 ? star_disc_2d_sweep(ps, opt.budget) : star_disc_exact(ps, opt.budget, opt.workers);
    } catch (const BudgetExceeded&) {
        return bracket();
    }
}

} // namespace qmclab
