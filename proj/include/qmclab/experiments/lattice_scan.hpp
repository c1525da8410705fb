#pragma once

// Distribution of D*_N over generating vectors of rank-1 lattices
// { (n g_1 / N, ..., n g_d / N) : 0 <= n < N }.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qmclab/discrepancy/exact.hpp"
#include "qmclab/generators/families.hpp"
#include "qmclab/generators/spec_text.hpp"
#include "qmclab/parallel.hpp"

namespace qmclab {

struct LatticeScanMode {
    enum class Kind { exhaustive, sample };
    Kind kind = Kind::exhaustive;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;

    static LatticeScanMode exhaustive() { return {}; }
    static LatticeScanMode sample(std::uint64_t count, std::uint64_t seed) { return {Kind::sample, count, seed}; }

    /// "exhaustive" or "sample:COUNT:SEED".
    static LatticeScanMode parse(std::string_view s) {
        if (s == "exhaustive") return exhaustive();
        if (text::starts_with(s, "sample:")) {
            const auto rest = s.substr(7);
            const auto colon = rest.find(':');
            detail::require(colon != std::string_view::npos, "sample mode needs sample:COUNT:SEED");
            return sample(text::parse_u64(rest.substr(0, colon)), text::parse_u64(rest.substr(colon + 1)));
        }
        throw ValidationError("unknown scan mode '" + std::string(s) + "' (exhaustive or sample:COUNT:SEED)");
    }

    std::string to_string() const {
        return kind == Kind::exhaustive ? "exhaustive"
                                        : "sample:" + std::to_string(count) + ":" + std::to_string(seed);
    }
};

struct LatticeEntry {
    std::vector<std::uint64_t> gens;
    BigRational value;
};

struct LatticeScanSummary {
    std::uint64_t N = 0;
    std::size_t d = 0;
    LatticeScanMode mode;
    std::vector<LatticeEntry> entries;  // in enumeration / draw order
    std::vector<std::pair<unsigned, BigRational>> quantiles;
    LatticeEntry min, max;               // first entry attaining the extreme
};

inline constexpr unsigned lattice_quantiles[] = {1, 10, 50, 90, 99};

namespace detail {

/// Uniform integer in [0, n) by rejection, identical on every platform.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return v % n;
}

inline BigRational lattice_star(std::uint64_t N, const std::vector<std::uint64_t>& gens, std::uint64_t budget) {
    const PointSet ps = lattice_point_set(N, gens);
    if (gens.size() == 1) return star_disc_1d(ps).value();
    if (gens.size() == 2) return star_disc_2d_sweep(ps, budget).value();
    return star_disc_exact(ps, budget).value();
}

} // namespace detail

/// Exact D*_N for every vector of the scan (2D sweep for d = 2, the critical
/// grid for d = 3), summarized by nearest-rank quantiles at 1, 10, 50, 90,
/// 99 percent and the first minimal / maximal vectors. Exhaustive scans cover
/// all of [0, N)^d and need N^d <= max_vectors.
inline LatticeScanSummary lattice_scan(std::uint64_t N, std::size_t d, const LatticeScanMode& mode,
                                       unsigned workers = 1, std::uint64_t budget = default_work_budget,
                                       std::uint64_t max_vectors = 1'000'000) {
    detail::require(N >= 1, "N must be >= 1");
    detail::require(d >= 1 && d <= 3, "lattice scans support d = 1, 2, 3");
    LatticeScanSummary out;
    out.N = N;
    out.d = d;
    out.mode = mode;
    std::vector<std::vector<std::uint64_t>> vectors;
    if (mode.kind == LatticeScanMode::Kind::exhaustive) {
        std::uint64_t total = 1;
        for (std::size_t j = 0; j < d; ++j) {
            if (total > max_vectors / N) throw BudgetExceeded("N^d exceeds the exhaustive scan budget");
            total *= N;
        }
        vectors.reserve(total);
        std::vector<std::uint64_t> g(d, 0);
        for (std::uint64_t i = 0; i < total; ++i) {
            vectors.push_back(g);
            for (std::size_t j = d; j-- > 0;) {
                if (++g[j] < N) break;
                g[j] = 0;
            }
        }
    } else {
        detail::require(mode.count >= 1, "sample count must be >= 1");
        if (mode.count > max_vectors) throw BudgetExceeded("sample count exceeds the scan budget");
        std::mt19937_64 rng(mode.seed);
        vectors.resize(mode.count, std::vector<std::uint64_t>(d));
        for (auto& g : vectors)
            for (auto& x : g) x = detail::bounded(rng, N);
    }
    out.entries.resize(vectors.size());
    parallel_for(vectors.size(), workers, [&](std::size_t i) {
        out.entries[i] = {vectors[i], detail::lattice_star(N, vectors[i], budget)};
    });

    std::vector<BigRational> sorted;
    sorted.reserve(out.entries.size());
    for (const auto& e : out.entries) sorted.push_back(e.value);
    std::sort(sorted.begin(), sorted.end());
    for (unsigned q : lattice_quantiles) {
        const std::size_t n = sorted.size();
        std::size_t rank = (q * n + 99) / 100;  // ceil(q n / 100)
        rank = std::clamp<std::size_t>(rank, 1, n);
        out.quantiles.emplace_back(q, sorted[rank - 1]);
    }
    out.min = out.max = out.entries.front();
    for (const auto& e : out.entries) {
        if (e.value < out.min.value) out.min = e;
        if (e.value > out.max.value) out.max = e;
    }
    return out;
}

inline nlohmann::ordered_json to_json(const LatticeScanSummary& s, std::optional<unsigned> decimal_digits = {}) {
    auto fmt = [&](const BigRational& x) { return decimal_digits ? to_decimal(x, *decimal_digits) : to_string(x); };
    nlohmann::ordered_json j;
    j["N"] = s.N;
    j["d"] = s.d;
    j["mode"] = s.mode.to_string();
    j["vectors"] = s.entries.size();
    auto q = nlohmann::ordered_json::object();
    for (const auto& [pct, v] : s.quantiles) q[std::to_string(pct) + "%"] = fmt(v);
    j["quantiles"] = q;
    j["min"] = {{"value", fmt(s.min.value)}, {"gens", s.min.gens}};
    j["max"] = {{"value", fmt(s.max.value)}, {"gens", s.max.gens}};
    return j;
}

} // namespace qmclab
