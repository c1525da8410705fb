#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmclab/discrepancy/exact.hpp"
#include "qmclab/discrepancy/result.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/points.hpp"

namespace qmclab {

/// Encloses D*_N in [m, m + d/k], where m is the maximum of the local
/// discrepancy (open and closed counts) over the corner lattice
/// {0, 1/k, ..., 1}^d. Works for any representation; cost (k+1)^d + N*d.
inline DiscrepancyResult star_disc_bracket(const PointSet& ps, unsigned k,
                                           std::uint64_t budget = default_work_budget) {
    detail::require_nonempty(ps, 0);
    detail::require(k >= 2, "bracket resolution must be >= 2");
    const std::size_t d = ps.dim;
    const std::size_t n = ps.count();
    std::vector<std::uint64_t> sizes(d, std::uint64_t{k} + 1);
    const std::uint64_t corners = detail::grid_size(sizes);
    if (corners == UINT64_MAX || corners > budget)
        throw BudgetExceeded("bracket grid of " + std::to_string(corners) + " corners exceeds the work budget");
    std::size_t bits = 2;
    for (std::uint64_t v = n; v; v >>= 1) ++bits;
    for (std::size_t j = 0; j < d; ++j)
        for (unsigned v = k; v; v >>= 1) ++bits;
    if (bits > 120) throw BudgetExceeded("bracket resolution too fine for exact corner arithmetic");

    // open[idx] counts points entering A_< at lattice index idx, closed[] likewise for A_<=
    std::vector<std::uint64_t> open(corners, 0), closed(corners, 0);
    std::vector<std::uint64_t> stride(d, 1);
    for (std::size_t j = 1; j < d; ++j) stride[j] = stride[j - 1] * (k + 1);
    const BigRational kk(k);
    for (const auto& p : ps.points) {
        std::uint64_t io = 0, ic = 0;
        for (std::size_t j = 0; j < d; ++j) {
            // x < i/k  <=>  i >= floor(xk) + 1 ;  x <= i/k  <=>  i >= ceil(xk)
            const BigRational xk = p.coords[j] * kk;
            const BigInt fl = floor_big(xk);
            const std::uint64_t f = fl.get_ui();
            const std::uint64_t c = BigRational(fl) == xk ? f : f + 1;
            io += (f + 1) * stride[j];
            ic += c * stride[j];
        }
        ++open[io];
        ++closed[ic];
    }
    // d-dimensional prefix sums
    for (std::size_t j = 0; j < d; ++j)
        for (std::uint64_t idx = 0; idx < corners; ++idx)
            if ((idx / stride[j]) % (k + 1) != 0) {
                open[idx] += open[idx - stride[j]];
                closed[idx] += closed[idx - stride[j]];
            }

    using detail::i128;
    i128 kd = 1;
    for (std::size_t j = 0; j < d; ++j) kd *= k;
    const i128 N = static_cast<i128>(n);
    i128 best = 0;
    for (std::uint64_t idx = 0; idx < corners; ++idx) {
        i128 vol = N;
        for (std::size_t j = 0; j < d; ++j) vol *= static_cast<i128>((idx / stride[j]) % (k + 1));
        const i128 a = vol - static_cast<i128>(open[idx]) * kd;
        const i128 b = static_cast<i128>(closed[idx]) * kd - vol;
        if (best < a) best = a;
        if (best < b) best = b;
    }
    DiscrepancyResult r;
    r.kind = DiscKind::star;
    r.mode = CertMode::bracketed;
    r.N = n;
    r.d = d;
    r.resolution = k;
    r.lo = detail::ratio(best, N * kd);
    BigRational hi = r.lo + BigRational(static_cast<unsigned long>(d), k);
    r.hi = hi > 1 ? BigRational(1) : hi;
    return r;
}

} // namespace qmclab
