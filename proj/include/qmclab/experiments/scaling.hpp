#pragma once

// Scaling studies: D_N over a schedule of N, normalized as N D_N / (ln N)^p,
// and least-squares fits of ln(N D_N) against ln ln N.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmclab/discrepancy/compute.hpp"
#include "qmclab/experiments/plan.hpp"
#include "qmclab/generators/stream.hpp"
#include "qmclab/parallel.hpp"

namespace qmclab {

struct ScalingRow {
    std::uint64_t N = 0;
    std::optional<DiscrepancyResult> result;  // empty when the row failed
    std::string error;                        // budget failure message
    std::optional<double> normalized;         // N D / (ln N)^p; empty for ln N = 0 with p > 0

    bool ok() const { return result.has_value(); }
};

/// Fixed-format decimal for doubles so tables are byte-stable.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::optional<double> normalize(std::uint64_t N, const BigRational& D, const BigRational& p) {
    const double ln = std::log(static_cast<double>(N));
    const double pd = to_double(p);
    if (ln == 0.0 && pd > 0) return std::nullopt;
    return static_cast<double>(N) * to_double(D) / std::pow(ln, pd);
}

struct ScalingTable {
    std::string plan_name;
    std::vector<ScalingRow> rows;

    /// N,mode,value,lo,hi,half_width,normalized
    void write_csv(std::ostream& os, std::optional<unsigned> decimal_digits = {}) const {
        auto fmt = [&](const BigRational& x) { return decimal_digits ? to_decimal(x, *decimal_digits) : to_string(x); };
        os << "N,mode,value,lo,hi,half_width,normalized\n";
        for (const auto& r : rows) {
            os << r.N << ',';
            if (!r.ok()) {
                os << "budget-exceeded,,,,,\n";
                continue;
            }
            const auto& d = *r.result;
            os << to_string(d.mode) << ',' << fmt(d.value()) << ',' << fmt(d.lo) << ',' << fmt(d.hi) << ','
               << fmt(d.half_width()) << ',' << (r.normalized ? format_double(*r.normalized) : "") << '\n';
        }
    }
};

/// Evaluates every row of the plan. Rows run concurrently on plan.workers
/// threads and are reported in schedule order. Budget failures are recorded
/// per row. Untemplated specs are generated once up to the largest N.
inline ScalingTable run_scaling(const ExperimentPlan& plan) {
    plan.validate();
    ScalingTable table;
    table.plan_name = plan.name;
    table.rows.resize(plan.schedule.size());
    DiscOptions opt;
    opt.kind = plan.kind;
    opt.algo = plan.algo;
    opt.k = plan.k;
    opt.budget = plan.budget;

    std::optional<PointSet> shared;
    if (!plan.is_templated()) {
        const std::uint64_t n_max = plan.schedule.back();
        const auto spec = parse_spec(plan.spec_text, n_max);
        if (auto size = spec->finite_size())
            detail::require(n_max <= *size, "schedule exceeds the size of a finite point set");
        shared = stream(spec, 0, n_max, plan.workers);
    }
    parallel_for(plan.schedule.size(), plan.workers, [&](std::size_t i) {
        ScalingRow& row = table.rows[i];
        row.N = plan.schedule[i];
        try {
            const PointSet ps = shared ? shared->prefix(row.N) : [&] {
                const auto spec = plan_spec(plan, row.N);
                return stream(spec, 0, row.N);
            }();
            row.result = compute_discrepancy(ps, opt);
            row.normalized = normalize(row.N, row.result->value(), plan.p);
        } catch (const BudgetExceeded& e) {
            row.error = e.what();
        }
    });
    return table;
}

struct FitSample {
    double N = 0;
    double D = 0;
    double weight = 0;  // half-width of a bracketed value, 0 for exact rows
};

struct FitResult {
    double slope = 0;      // estimated exponent
    double intercept = 0;
    double residual_norm = 0;
    std::size_t samples = 0;
};

/// Ordinary least squares of ln(N D) on ln ln N over the samples with N >= 16
/// and D > 0. Weights are carried for reporting but do not enter the fit.
inline FitResult fit_exponent(const std::vector<FitSample>& samples) {
    std::vector<long double> xs, ys;
    for (const auto& s : samples) {
        if (s.N < 16 || !(s.D > 0)) continue;
        const long double N = s.N;
        xs.push_back(std::log(std::log(N)));
        ys.push_back(std::log(N * static_cast<long double>(s.D)));
    }
    detail::require(xs.size() >= 3, "fit needs at least 3 rows with N >= 16 and D > 0");
    const long double n = static_cast<long double>(xs.size());
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    long double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    detail::require(sxx > 1e-24L, "degenerate fit: all N are equal");
    FitResult out;
    const long double slope = sxy / sxx;
    const long double intercept = my - slope * mx;
    long double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double r = ys[i] - (intercept + slope * xs[i]);
        rss += r * r;
    }
    out.slope = static_cast<double>(slope);
    out.intercept = static_cast<double>(intercept);
    out.residual_norm = static_cast<double>(std::sqrt(rss));
    out.samples = xs.size();
    return out;
}

inline std::vector<FitSample> fit_samples(const ScalingTable& table) {
    std::vector<FitSample> out;
    for (const auto& r : table.rows)
        if (r.ok())
            out.push_back({static_cast<double>(r.N), to_double(r.result->value()), to_double(r.result->half_width())});
    return out;
}

/// Reads the N and value columns (plus half_width when present) of a table
/// written by ScalingTable::write_csv. Failed rows are skipped.
inline std::vector<FitSample> read_fit_csv(std::istream& is) {
    std::string line;
    detail::require(static_cast<bool>(std::getline(is, line)), "empty table");
    std::map<std::string, std::size_t> col;
    {
        std::istringstream hs(line);
        std::string name;
        for (std::size_t i = 0; std::getline(hs, name, ','); ++i) col[text::trim(name)] = i;
    }
    detail::require(col.count("N") && col.count("value"), "table needs N and value columns");
    std::vector<FitSample> out;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(text::trim(cell));
        if (line.back() == ',') cells.emplace_back();
        auto get = [&](const std::string& name) -> std::string {
            auto it = col.find(name);
            return it != col.end() && it->second < cells.size() ? cells[it->second] : std::string();
        };
        const std::string value = get("value");
        if (value.empty()) continue;
        FitSample s;
        s.N = to_double(parse_rational(get("N")));
        s.D = to_double(parse_rational(value));
        if (const auto hw = get("half_width"); !hw.empty()) s.weight = to_double(parse_rational(hw));
        out.push_back(s);
    }
    return out;
}

inline std::string format_fit(const FitResult& f) {
    std::ostringstream os;
    os << "p_hat=" << format_double(f.slope) << "\nintercept=" << format_double(f.intercept)
       << "\nresidual_norm=" << format_double(f.residual_norm) << "\nsamples=" << f.samples << '\n';
    return os.str();
}

} // namespace qmclab
