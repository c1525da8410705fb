#pragma once

// Exact star and extreme discrepancy. Boxes are half-open, [0, b) for the
// star form. At every candidate corner b both the open count A_<(b) (strict
// in every coordinate) and the closed count A_<=(b) are taken; the supremum
// is max over corners of max(lambda(b) - A_<(b)/N, A_<=(b)/N - lambda(b)).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qmclab/discrepancy/result.hpp"
#include "qmclab/discrepancy/scaled.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/points.hpp"
#include "qmclab/parallel.hpp"

namespace qmclab {

/// Default limit on corner-point incidence tests for the grid algorithms.
inline constexpr std::uint64_t default_work_budget = 100'000'000;

namespace detail {

inline DiscrepancyResult make_exact(const PointSet& ps, DiscKind kind, BigRational v) {
    DiscrepancyResult r;
    r.kind = kind;
    r.mode = ps.repr.is_exact() ? CertMode::exact : CertMode::exact_represented;
    r.N = ps.count();
    r.d = ps.dim;
    r.lo = v;
    r.hi = std::move(v);
    return r;
}

inline void require_nonempty(const PointSet& ps, std::size_t dim) {
    require(ps.count() > 0, "discrepancy of an empty point set");
    if (dim) require(ps.dim == dim, "expected " + std::to_string(dim) + "-dimensional points");
}

// Distinct sorted values of coordinate j and each point's rank among them.
template <class Int>
struct AxisRanks {
    std::vector<Int> values;
    std::vector<std::uint32_t> rank;
};

template <class Int>
AxisRanks<Int> axis_ranks(const ScaledSet<Int>& s, std::size_t j) {
    AxisRanks<Int> a;
    a.values.reserve(s.n);
    for (std::size_t i = 0; i < s.n; ++i) a.values.push_back(s.at(i, j));
    std::sort(a.values.begin(), a.values.end());
    a.values.erase(std::unique(a.values.begin(), a.values.end()), a.values.end());
    a.rank.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i)
        a.rank[i] = static_cast<std::uint32_t>(std::lower_bound(a.values.begin(), a.values.end(), s.at(i, j)) -
                                               a.values.begin());
    return a;
}

template <class Int>
std::vector<Int> sorted_axis(const ScaledSet<Int>& s) {
    std::vector<Int> c(s.num.begin(), s.num.end());
    std::sort(c.begin(), c.end());
    return c;
}

// 2N * D* as a numerator over 2NM: M + max_i |2N c_(i) - (2i-1) M|.
template <class Int>
BigRational star_1d_sorted(const std::vector<Int>& c, const Int& M) {
    const Int n2 = from_count<Int>(2 * c.size());
    Int best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int t = n2 * c[i] - from_count<Int>(2 * i + 1) * M;
        if (t < 0) t = -t;
        if (best < t) best = t;
    }
    Int num = M + best;
    Int den = n2 * M;
    return ratio(num, den);
}

} // namespace detail

/// D*_N of a 1D set: 1/(2N) + max_i |x_(i) - (2i-1)/(2N)|.
inline DiscrepancyResult star_disc_1d(const PointSet& ps) {
    detail::require_nonempty(ps, 1);
    auto v = detail::with_scaled(ps, 3, [](const auto& s) {
        return detail::star_1d_sorted(detail::sorted_axis(s), s.scale[0]);
    });
    return detail::make_exact(ps, DiscKind::star, std::move(v));
}

/// D_N of a 1D set: 1/N + max_i (i/N - x_(i)) - min_i (i/N - x_(i)).
inline DiscrepancyResult extreme_disc_1d(const PointSet& ps) {
    detail::require_nonempty(ps, 1);
    auto v = detail::with_scaled(ps, 3, [](const auto& s) {
        using Int = std::decay_t<decltype(s.scale[0])>;
        const auto c = detail::sorted_axis(s);
        const Int& M = s.scale[0];
        const Int N = detail::from_count<Int>(s.n);
        Int hi = M - N * c[0];
        Int lo = hi;
        for (std::size_t i = 1; i < c.size(); ++i) {
            Int t = detail::from_count<Int>(i + 1) * M - N * c[i];
            if (hi < t) hi = t;
            if (t < lo) lo = t;
        }
        Int num = M + hi - lo;
        Int den = N * M;
        return detail::ratio(num, den);
    });
    return detail::make_exact(ps, DiscKind::extreme, std::move(v));
}

/// D*_N of every prefix: element N-1 is the star discrepancy of the first N
/// points. Maintains the sorted prefix incrementally (O(n^2) overall).
inline std::vector<BigRational> star_disc_1d_prefixes(const PointSet& ps) {
    detail::require_nonempty(ps, 1);
    return detail::with_scaled(ps, 3, [](const auto& s) {
        using Int = std::decay_t<decltype(s.scale[0])>;
        std::vector<BigRational> out;
        out.reserve(s.n);
        std::vector<Int> sorted;
        sorted.reserve(s.n);
        for (std::size_t i = 0; i < s.n; ++i) {
            const Int& c = s.num[i];
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), c), c);
            out.push_back(detail::star_1d_sorted(sorted, s.scale[0]));
        }
        return out;
    });
}

/// Exact D*_N of a 2D set by sweeping the first coordinate and scanning
/// second-coordinate order statistics: O(N^2) corner evaluations.
inline DiscrepancyResult star_disc_2d_sweep(const PointSet& ps, std::uint64_t budget = default_work_budget) {
    detail::require_nonempty(ps, 2);
    const auto n = static_cast<std::uint64_t>(ps.count());
    if ((n + 1) * (n + 1) > budget)
        throw BudgetExceeded("2D sweep over " + std::to_string(n) + " points exceeds the work budget of " +
                             std::to_string(budget) + " corners");
    auto v = detail::with_scaled(ps, 2, [](const auto& s) {
        using Int = std::decay_t<decltype(s.scale[0])>;
        const auto xs = detail::axis_ranks(s, 0);
        const auto ys = detail::axis_ranks(s, 1);
        const Int& M1 = s.scale[0];
        const Int& M2 = s.scale[1];
        const Int N = detail::from_count<Int>(s.n);
        const Int MM = M1 * M2;
        std::vector<Int> yv = ys.values;
        yv.push_back(M2);
        const std::size_t ny = ys.values.size();

        std::vector<std::size_t> order(s.n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs.rank[a] < xs.rank[b]; });

        std::vector<std::size_t> cnt(ny, 0);
        std::size_t ptr = 0;
        Int best = 0;
        std::vector<Int> xv = xs.values;
        xv.push_back(M1);
        for (std::size_t ui = 0; ui < xv.size(); ++ui) {
            const Int Nu = N * xv[ui];
            // open corner: points with x < u
            std::size_t running = 0;
            for (std::size_t r = 0; r <= ny; ++r) {
                Int val = Nu * yv[r] - detail::from_count<Int>(running) * MM;
                if (best < val) best = val;
                if (r < ny) running += cnt[r];
            }
            while (ptr < s.n && xs.rank[order[ptr]] == ui) ++cnt[ys.rank[order[ptr++]]];
            // closed corner: points with x <= u
            running = 0;
            for (std::size_t r = 0; r <= ny; ++r) {
                if (r < ny) running += cnt[r];
                Int val = detail::from_count<Int>(running) * MM - Nu * yv[r];
                if (best < val) best = val;
            }
        }
        Int den = N * MM;
        return detail::ratio(best, den);
    });
    return detail::make_exact(ps, DiscKind::star, std::move(v));
}

namespace detail {

// Number of corners of the product grid, saturating.
inline std::uint64_t grid_size(const std::vector<std::uint64_t>& axis_sizes) {
    std::uint64_t total = 1;
    for (auto a : axis_sizes) {
        if (a != 0 && total > UINT64_MAX / a) return UINT64_MAX;
        total *= a;
    }
    return total;
}

inline void check_budget(std::uint64_t corners, std::uint64_t n, std::uint64_t budget, const char* what) {
    if (corners == UINT64_MAX || (n != 0 && corners > budget / n))
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(corners) + " corners x " + std::to_string(n) +
                             " points exceeds the work budget of " + std::to_string(budget));
}

} // namespace detail

/// Exact D*_N in any dimension by enumerating the critical grid
/// prod_j ({x_{n,j}} U {1}). Work is |grid| * N incidence tests; the first
/// axis is partitioned across `workers`.
inline DiscrepancyResult star_disc_exact(const PointSet& ps, std::uint64_t budget = default_work_budget,
                                         unsigned workers = 1) {
    detail::require_nonempty(ps, 0);
    auto v = detail::with_scaled(ps, 2, [&](const auto& s) {
        using Int = std::decay_t<decltype(s.scale[0])>;
        const std::size_t d = s.d;
        std::vector<detail::AxisRanks<Int>> axes;
        std::vector<std::uint64_t> sizes;
        for (std::size_t j = 0; j < d; ++j) {
            axes.push_back(detail::axis_ranks(s, j));
            axes.back().values.push_back(s.scale[j]);
            sizes.push_back(axes.back().values.size());
        }
        detail::check_budget(detail::grid_size(sizes), s.n, budget, "critical grid");
        const Int N = detail::from_count<Int>(s.n);
        Int MM = 1;
        for (const auto& m : s.scale) MM = MM * m;

        std::vector<Int> partial(sizes[0], Int(0));
        parallel_for(sizes[0], workers, [&](std::size_t first) {
            std::vector<std::size_t> idx(d, 0);
            idx[0] = first;
            Int best = 0;
            while (true) {
                Int vol = N;
                for (std::size_t j = 0; j < d; ++j) vol = vol * axes[j].values[idx[j]];
                std::size_t open = 0, closed = 0;
                for (std::size_t i = 0; i < s.n; ++i) {
                    bool lt = true, le = true;
                    for (std::size_t j = 0; j < d && le; ++j) {
                        const auto r = axes[j].rank[i];
                        lt = lt && r < idx[j];
                        le = r <= idx[j];
                    }
                    open += lt && le;
                    closed += le;
                }
                Int a = vol - detail::from_count<Int>(open) * MM;
                Int b = detail::from_count<Int>(closed) * MM - vol;
                if (best < a) best = a;
                if (best < b) best = b;
                // advance the mixed-radix counter over axes 1..d-1
                std::size_t j = 1;
                while (j < d && ++idx[j] == sizes[j]) idx[j++] = 0;
                if (j >= d) break;
            }
            partial[first] = best;
        });
        Int best = 0;
        for (const auto& p : partial)
            if (best < p) best = p;
        Int den = N * MM;
        return detail::ratio(best, den);
    });
    return detail::make_exact(ps, DiscKind::star, std::move(v));
}

/// Exact extreme discrepancy D_N over all boxes [a, b), by enumerating
/// lower corners in {0} U coords and upper corners in coords U {1}. Limited
/// to d <= 2; work grows like N^(2d+1).
inline DiscrepancyResult extreme_disc_exact(const PointSet& ps, std::uint64_t budget = default_work_budget,
                                            unsigned workers = 1) {
    detail::require_nonempty(ps, 0);
    detail::require(ps.dim <= 2, "exact extreme discrepancy is limited to d <= 2");
    if (ps.dim == 1) return extreme_disc_1d(ps);
    auto v = detail::with_scaled(ps, 2, [&](const auto& s) {
        using Int = std::decay_t<decltype(s.scale[0])>;
        const std::size_t d = s.d;
        // Per axis: list of (lower index, upper index) pairs. Lower index -1
        // stands for the value 0 when no coordinate equals 0.
        struct Axis {
            detail::AxisRanks<Int> ranks;
            std::vector<std::pair<long, long>> pairs;
        };
        std::vector<Axis> axes(d);
        std::vector<std::uint64_t> sizes;
        for (std::size_t j = 0; j < d; ++j) {
            auto& ax = axes[j];
            ax.ranks = detail::axis_ranks(s, j);
            const long m = static_cast<long>(ax.ranks.values.size());
            const long first_lower = ax.ranks.values.front() == Int(0) ? 0 : -1;
            for (long lo = first_lower; lo < m; ++lo)
                for (long hi = std::max(lo, 0L); hi <= m; ++hi) ax.pairs.emplace_back(lo, hi);
            sizes.push_back(ax.pairs.size());
        }
        detail::check_budget(detail::grid_size(sizes), s.n, budget, "extreme corner pairs");
        const Int N = detail::from_count<Int>(s.n);
        Int MM = 1;
        for (const auto& m : s.scale) MM = MM * m;
        auto value_at = [&](std::size_t j, long idx) -> Int {
            if (idx < 0) return Int(0);
            if (idx == static_cast<long>(axes[j].ranks.values.size())) return s.scale[j];
            return axes[j].ranks.values[static_cast<std::size_t>(idx)];
        };

        std::vector<Int> partial(sizes[0], Int(0));
        parallel_for(sizes[0], workers, [&](std::size_t first) {
            std::vector<std::size_t> idx(d, 0);
            idx[0] = first;
            Int best = 0;
            while (true) {
                Int vol = N;
                for (std::size_t j = 0; j < d; ++j) {
                    const auto [lo, hi] = axes[j].pairs[idx[j]];
                    Int side = value_at(j, hi) - value_at(j, lo);
                    vol = vol * side;
                }
                std::size_t open = 0, closed = 0;
                for (std::size_t i = 0; i < s.n; ++i) {
                    bool in_open = true, in_closed = true;
                    for (std::size_t j = 0; j < d; ++j) {
                        const long r = axes[j].ranks.rank[i];
                        const auto [lo, hi] = axes[j].pairs[idx[j]];
                        in_open = in_open && r > lo && r < hi;
                        in_closed = in_closed && r >= lo && r <= hi;
                    }
                    open += in_open;
                    closed += in_closed;
                }
                Int a = vol - detail::from_count<Int>(open) * MM;
                Int b = detail::from_count<Int>(closed) * MM - vol;
                if (best < a) best = a;
                if (best < b) best = b;
                std::size_t j = 1;
                while (j < d && ++idx[j] == sizes[j]) idx[j++] = 0;
                if (j >= d) break;
            }
            partial[first] = best;
        });
        Int best = 0;
        for (const auto& p : partial)
            if (best < p) best = p;
        Int den = N * MM;
        return detail::ratio(best, den);
    });
    return detail::make_exact(ps, DiscKind::extreme, std::move(v));
}

} // namespace qmclab
