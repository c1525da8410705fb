#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qmclab/diophantine/littlewood.hpp"
#include "qmclab/experiments/lattice_scan.hpp"
#include "qmclab/experiments/plan.hpp"
#include "qmclab/experiments/scaling.hpp"

using namespace qmclab;
using Q = BigRational;

namespace {

ExperimentPlan plan_for(const std::string& spec, const std::string& schedule, long p) {
    ExperimentPlan plan;
    plan.name = "test";
    plan.spec_text = spec;
    plan.schedule = parse_schedule(schedule);
    plan.p = p;
    return plan;
}

/// N = 1010...1 in binary: the van der Corput worst case at each bit length.
std::vector<std::uint64_t> alternating_schedule(unsigned lo, unsigned hi) {
    std::vector<std::uint64_t> out;
    for (unsigned j = lo; j <= hi; ++j) out.push_back(((std::uint64_t{1} << (j + 1)) + (j % 2 ? 1 : 2)) / 3);
    return out;
}

} // namespace

TEST(Schedule, ParsesGeometricAndListForms) {
    EXPECT_EQ(parse_schedule("2^1..2^4"), (std::vector<std::uint64_t>{2, 4, 8, 16}));
    EXPECT_EQ(parse_schedule("6^2..6^3"), (std::vector<std::uint64_t>{36, 216}));
    EXPECT_EQ(parse_schedule("16, 32,64"), (std::vector<std::uint64_t>{16, 32, 64}));
    EXPECT_THROW(parse_schedule(""), ValidationError);
    EXPECT_THROW(parse_schedule("2^1..3^4"), ValidationError);
    EXPECT_EQ(alternating_schedule(4, 6), (std::vector<std::uint64_t>{11, 21, 43}));
}

TEST(Plan, ValidationAndFileFormat) {
    ExperimentPlan empty = plan_for("halton{bases=2}", "2^1..2^3", 1);
    empty.schedule.clear();
    EXPECT_THROW(empty.validate(), ValidationError);
    EXPECT_THROW(run_scaling(empty), ValidationError);
    ExperimentPlan unordered = plan_for("halton{bases=2}", "8,4", 1);
    EXPECT_THROW(unordered.validate(), ValidationError);

    std::istringstream in("# comment\nspec = halton{bases=2,3}  # trailing\nschedule = 2^2..2^4\np = 2\nk = 64\n");
    const auto plan = parse_plan(in);
    EXPECT_EQ(plan.spec_text, "halton{bases=2,3}");
    EXPECT_EQ(plan.schedule, (std::vector<std::uint64_t>{4, 8, 16}));
    EXPECT_EQ(plan.p, 2);
    EXPECT_EQ(plan.k, 64u);
    std::istringstream again(format_plan(plan));
    const auto reparsed = parse_plan(again);
    EXPECT_EQ(reparsed.schedule, plan.schedule);
    EXPECT_EQ(reparsed.spec_text, plan.spec_text);

    std::istringstream defaulted("spec = halton{bases=2}\n");
    EXPECT_EQ(parse_plan(defaulted).schedule.size(), 10u);
    std::istringstream bad("spec = halton{bases=2}\nschedule =\n");
    EXPECT_THROW(parse_plan(bad), ValidationError);
    std::istringstream unknown("colour = blue\n");
    EXPECT_THROW(parse_plan(unknown), ValidationError);
}

TEST(Plan, TemplatesAndGoldenGenerator) {
    EXPECT_EQ(golden_generator(17), 11u);
    EXPECT_EQ(golden_generator(251), 155u);
    EXPECT_EQ(instantiate_spec("lattice{N=$N;gens=1,$G}", 17), "lattice{N=17;gens=1,11}");
    EXPECT_THROW(instantiate_spec("lattice{N=$M;gens=1}", 17), ValidationError);
}

TEST(Presets, Shapes) {
    const auto op9 = preset("op9-vdc-sqrt2");
    const auto spec9 = plan_spec(op9, op9.schedule.back());
    EXPECT_EQ(spec9->dimension(), 2u);
    const auto first = point_at(*spec9, 0);
    EXPECT_EQ(first.coords[0], 0);
    EXPECT_EQ(first.coords[1], 0);

    const auto c1 = preset("c1-counterexample");
    EXPECT_EQ(plan_spec(c1, 216)->dimension(), 2u);
    EXPECT_EQ(c1.k, 512u);
    EXPECT_NE(c1.spec_text.find("q=3"), std::string::npos);
    EXPECT_NE(c1.spec_text.find("q=2"), std::string::npos);

    const auto pw = preset("power-3-2");
    EXPECT_EQ(plan_spec(pw, 16)->dimension(), 1u);
    EXPECT_EQ(pw.spec_text, "power{p=3;r=2}");

    const auto op12 = preset("op12-digitsum-alpha", "sqrt(3)");
    EXPECT_NE(op12.spec_text.find("sqrt(3)"), std::string::npos);
    EXPECT_EQ(plan_spec(op12, 64)->dimension(), 1u);

    const auto ham = preset("hammersley-lattice");
    EXPECT_TRUE(ham.is_templated());
    for (auto N : ham.schedule) EXPECT_EQ(plan_spec(ham, N)->dimension(), 3u);

    for (const auto& name : preset_names()) EXPECT_NO_THROW(preset(name));
    try {
        preset("op13");
        FAIL() << "unknown preset accepted";
    } catch (const ValidationError& e) {
        for (const auto& name : preset_names()) EXPECT_NE(std::string(e.what()).find(name), std::string::npos);
    }
}

TEST(Scaling, VanDerCorputFixture) {
    const auto table = run_scaling(plan_for("halton{bases=2}", "2^1..2^10", 1));
    ASSERT_EQ(table.rows.size(), 10u);
    for (const auto& row : table.rows) {
        ASSERT_TRUE(row.ok());
        EXPECT_EQ(row.result->mode, CertMode::exact);
        // a dyadic prefix of length 2^m is a perfect net: D* = 1/N
        EXPECT_EQ(row.result->value(), make_rational(1, static_cast<std::int64_t>(row.N)));
        EXPECT_LT(*row.normalized, 1.5);
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) EXPECT_LT(*table.rows[i].normalized, 1.0);
    std::ostringstream os;
    run_scaling(plan_for("halton{bases=2}", "2^1..2^2", 1)).write_csv(os);
    EXPECT_EQ(os.str(), "N,mode,value,lo,hi,half_width,normalized\n"
                        "2,exact,1/2,1/2,1/2,0/1,1.44269504089\n"
                        "4,exact,1/4,1/4,1/4,0/1,0.721347520444\n");
}

TEST(Scaling, DiagonalLatticeDoesNotDecay) {
    ExperimentPlan plan = plan_for("lattice{N=$N;gens=1,1}", "4,8,16", 1);
    plan.algo = DiscAlgo::two_d;
    for (const auto& row : run_scaling(plan).rows) {
        ASSERT_TRUE(row.ok());
        EXPECT_GE(row.result->value(), make_rational(1, 4)) << row.N;
    }
}

TEST(Scaling, BudgetFailuresAreRecordedPerRow) {
    ExperimentPlan plan = plan_for("halton{bases=2,3}", "2^2..2^6", 2);
    plan.algo = DiscAlgo::grid;
    plan.budget = 2000;
    const auto table = run_scaling(plan);
    ASSERT_EQ(table.rows.size(), 5u);
    EXPECT_TRUE(table.rows.front().ok());
    EXPECT_FALSE(table.rows.back().ok());
    std::ostringstream os;
    table.write_csv(os);
    EXPECT_NE(os.str().find("64,budget-exceeded,,,,,"), std::string::npos);
}

TEST(Scaling, InvariantsAndDeterminism) {
    ExperimentPlan plan = plan_for("halton{bases=2,3}", "2^2..2^8", 2);
    plan.workers = 3;
    const auto a = run_scaling(plan);
    plan.workers = 1;
    const auto b = run_scaling(plan);
    ExperimentPlan ext = plan;
    ext.kind = DiscKind::extreme;
    const auto e = run_scaling(ext);
    EXPECT_TRUE(e.rows[2].ok());
    std::ostringstream sa, sb;
    a.write_csv(sa);
    b.write_csv(sb);
    EXPECT_EQ(sa.str(), sb.str());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto v = a.rows[i].result->value();
        EXPECT_GE(v, 0);
        EXPECT_LE(v, 1);
        if (!e.rows[i].ok()) continue;  // extreme grids outgrow the budget first
        EXPECT_LE(v, e.rows[i].result->value());
        EXPECT_LE(e.rows[i].result->value(), 1);
    }
}

TEST(Scaling, KroneckerSqrt2Bounded) {
    const auto table = run_scaling(plan_for("kronecker{alphas=sqrt(2);W=auto}", "2^4..2^17", 1));
    for (const auto& row : table.rows) {
        ASSERT_TRUE(row.ok());
        EXPECT_LE(*row.normalized, 3.0) << row.N;
    }
}

TEST(Scaling, TemplatedRowsAndBracketFallback) {
    const auto table = run_scaling(preset("hammersley-lattice"));
    ASSERT_EQ(table.rows.size(), 5u);
    for (const auto& row : table.rows) {
        ASSERT_TRUE(row.ok());
        EXPECT_LE(row.result->lo, row.result->hi);
        EXPECT_GE(row.result->lo, 0);
    }
    EXPECT_EQ(table.rows.front().result->mode, CertMode::exact);
}

TEST(Fit, RecoversPlantedExponents) {
    for (int p = 0; p <= 3; ++p) {
        std::vector<FitSample> rows;
        for (unsigned j = 4; j <= 20; ++j) {
            const double N = std::ldexp(1.0, static_cast<int>(j));
            rows.push_back({N, 0.37 * std::pow(std::log(N), p) / N, 0});
        }
        const auto f = fit_exponent(rows);
        EXPECT_NEAR(f.slope, p, 1e-9);
        EXPECT_NEAR(f.intercept, std::log(0.37), 1e-9);
        EXPECT_LT(f.residual_norm, 1e-9);
        EXPECT_EQ(f.samples, 17u);
    }
}

TEST(Fit, RejectsDegenerateInput) {
    EXPECT_THROW(fit_exponent({{64, 0.1, 0}, {64, 0.2, 0}, {64, 0.3, 0}}), ValidationError);
    EXPECT_THROW(fit_exponent({{64, 0.1, 0}, {128, 0.2, 0}}), ValidationError);
    // rows below N = 16 do not count
    EXPECT_THROW(fit_exponent({{4, 0.1, 0}, {8, 0.1, 0}, {64, 0.2, 0}, {128, 0.3, 0}}), ValidationError);
}

TEST(Fit, VanDerCorputRegression) {
    // powers of two are perfect nets (N D = 1), so the fitted exponent is 0
    const auto dyadic = fit_exponent(fit_samples(run_scaling(plan_for("halton{bases=2}", "2^4..2^16", 1))));
    EXPECT_NEAR(dyadic.slope, 0.0, 1e-12);
    EXPECT_EQ(dyadic.samples, 13u);
    // worst-case lengths 1010...1 show the log N / N law
    ExperimentPlan plan = plan_for("halton{bases=2}", "2^1..2^2", 1);
    plan.schedule = alternating_schedule(4, 16);
    const auto f = fit_exponent(fit_samples(run_scaling(plan)));
    EXPECT_GT(f.slope, 0.5);
    EXPECT_LT(f.slope, 1.5);
    EXPECT_NEAR(f.slope, 0.739062557204, 1e-9);
    EXPECT_EQ(f.samples, 12u);
}

TEST(Fit, CsvRoundTrip) {
    ExperimentPlan plan = plan_for("halton{bases=2,3}", "2^4..2^8", 2);
    const auto table = run_scaling(plan);
    std::stringstream exact_csv, decimal_csv;
    table.write_csv(exact_csv);
    table.write_csv(decimal_csv, 30);
    const auto direct = fit_exponent(fit_samples(table));
    const auto from_exact = fit_exponent(read_fit_csv(exact_csv));
    const auto from_decimal = fit_exponent(read_fit_csv(decimal_csv));
    EXPECT_EQ(direct.slope, from_exact.slope);
    EXPECT_NEAR(direct.slope, from_decimal.slope, 1e-9);
    std::istringstream with_failure("N,mode,value,lo,hi,half_width,normalized\n16,exact,1/4,1/4,1/4,0/1,1\n"
                                    "32,budget-exceeded,,,,,\n64,exact,1/8,1/8,1/8,0/1,1\n");
    EXPECT_EQ(read_fit_csv(with_failure).size(), 2u);
}

TEST(LatticeScan, ExhaustiveN5) {
    const auto s = lattice_scan(5, 2, LatticeScanMode::exhaustive());
    EXPECT_EQ(s.entries.size(), 25u);
    const auto ref = star_disc_2d_sweep(lattice_point_set(5, {1, 2})).value();
    EXPECT_EQ(s.min.value, ref);
    EXPECT_EQ(s.min.gens, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(s.max.value, 1);
    ASSERT_EQ(s.quantiles.size(), 5u);
    for (std::size_t i = 1; i < s.quantiles.size(); ++i) EXPECT_LE(s.quantiles[i - 1].second, s.quantiles[i].second);
    EXPECT_EQ(s.quantiles.front().second, s.min.value);
    EXPECT_EQ(s.quantiles.back().second, s.max.value);
}

TEST(LatticeScan, ZeroGeneratorIsDegenerate) {
    const auto s = lattice_scan(7, 2, LatticeScanMode::exhaustive());
    for (const auto& e : s.entries)
        if (e.gens[0] == 0 || e.gens[1] == 0) {
            EXPECT_GE(e.value, make_rational(1, 2));
        }
    for (std::uint64_t N = 2; N <= 12; ++N)
        EXPECT_GE(star_disc_2d_sweep(lattice_point_set(N, {0, 1})).value(), make_rational(1, 2));
}

TEST(LatticeScan, SamplingIsSeedPinned) {
    const auto a = lattice_scan(31, 2, LatticeScanMode::sample(40, 7), 2);
    const auto b = lattice_scan(31, 2, LatticeScanMode::sample(40, 7), 1);
    const auto c = lattice_scan(31, 2, LatticeScanMode::sample(40, 8), 1);
    ASSERT_EQ(a.entries.size(), 40u);
    bool differs = false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].gens, b.entries[i].gens);
        EXPECT_EQ(a.entries[i].value, b.entries[i].value);
        differs |= a.entries[i].gens != c.entries[i].gens;
    }
    EXPECT_TRUE(differs);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_EQ(LatticeScanMode::parse("sample:40:7").to_string(), "sample:40:7");
    EXPECT_THROW(LatticeScanMode::parse("random"), ValidationError);
}

TEST(LatticeScan, ThreeDimensionsAndBudget) {
    const auto s = lattice_scan(4, 3, LatticeScanMode::exhaustive());
    EXPECT_EQ(s.entries.size(), 64u);
    EXPECT_EQ(s.max.value, 1);
    EXPECT_THROW(lattice_scan(200, 3, LatticeScanMode::exhaustive()), BudgetExceeded);
}

TEST(Littlewood, Sqrt2Sqrt3Regression) {
    const auto r = littlewood_scan(ApproxReal::fixed(fixedpoint_sqrt(2, 128)), ApproxReal::fixed(fixedpoint_sqrt(3, 128)),
                                   10000);
    EXPECT_EQ(r.argmin, 41u);
    EXPECT_EQ(to_decimal(r.min_value, 12), "0.009956782248");
    EXPECT_LT(r.error_bound, make_rational(1, 1000000000));
}
