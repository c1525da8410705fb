#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "qmclab/diophantine/continued_fraction.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/parallel.hpp"

namespace qmclab {

/// One row of a scan over N: the extremal statistic and the smallest a
/// attaining it.
struct ScanRow {
    std::uint64_t N = 0;
    std::uint64_t statistic = 0;
    std::uint64_t witness = 0;
};

struct ScanReport {
    std::string statistic_name;   // "A_min" or "S_min"
    std::vector<ScanRow> rows;

    void write_csv(std::ostream& os) const {
        os << "N," << statistic_name << ",witness\n";
        for (const auto& r : rows) os << r.N << ',' << r.statistic << ',' << r.witness << '\n';
    }
};

enum class ScanStatistic { max_quotient, quotient_sum };

namespace detail {

inline ScanRow scan_one(std::uint64_t N, ScanStatistic stat) {
    require(N >= 2, "scans need N >= 2");
    ScanRow best{N, UINT64_MAX, 0};
    for (std::uint64_t a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1) continue;
        const auto s = quotient_stats(a, N);
        const std::uint64_t v = stat == ScanStatistic::max_quotient ? s.max : s.sum;
        if (v < best.statistic) {
            best.statistic = v;
            best.witness = a;
        }
    }
    return best;
}

inline ScanReport scan_range(std::uint64_t from, std::uint64_t to, ScanStatistic stat, unsigned workers) {
    require(from >= 2 && from <= to, "scan range must satisfy 2 <= from <= to");
    ScanReport rep;
    rep.statistic_name = stat == ScanStatistic::max_quotient ? "A_min" : "S_min";
    rep.rows.resize(to - from + 1);
    parallel_for(rep.rows.size(), workers, [&](std::size_t i) { rep.rows[i] = scan_one(from + i, stat); });
    return rep;
}

} // namespace detail

/// min over a coprime to N of the largest partial quotient of a/N.
inline ScanRow zaremba_scan(std::uint64_t N) { return detail::scan_one(N, ScanStatistic::max_quotient); }

/// min over a coprime to N of the sum of the partial quotients of a/N.
inline ScanRow moser_scan(std::uint64_t N) { return detail::scan_one(N, ScanStatistic::quotient_sum); }

inline ScanReport zaremba_range(std::uint64_t from, std::uint64_t to, unsigned workers = 1) {
    return detail::scan_range(from, to, ScanStatistic::max_quotient, workers);
}

inline ScanReport moser_range(std::uint64_t from, std::uint64_t to, unsigned workers = 1) {
    return detail::scan_range(from, to, ScanStatistic::quotient_sum, workers);
}

/// Recomputes the statistic of a reported witness from its expansion.
inline bool verify_witness(const ScanRow& row, ScanStatistic stat) {
    if (row.witness == 0 || row.witness >= row.N || std::gcd(row.witness, row.N) != 1) return false;
    const auto cf = cf_rational(row.witness, row.N);
    if (fold_convergent(cf.leading, cf.terms) != make_rational(big_from_u64(row.witness), big_from_u64(row.N)))
        return false;
    const BigInt v = stat == ScanStatistic::max_quotient ? cf.max_quotient() : cf.quotient_sum();
    return v == big_from_u64(row.statistic);
}

} // namespace qmclab
