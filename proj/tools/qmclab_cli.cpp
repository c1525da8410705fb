// qmclab command-line front end. Exit codes: 0 success, 2 validation error,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qmclab/diophantine/continued_fraction.hpp"
#include "qmclab/diophantine/littlewood.hpp"
#include "qmclab/diophantine/scans.hpp"
#include "qmclab/diophantine/schmidt.hpp"
#include "qmclab/discrepancy/compute.hpp"
#include "qmclab/experiments/lattice_scan.hpp"
#include "qmclab/experiments/plan.hpp"
#include "qmclab/experiments/scaling.hpp"
#include "qmclab/generators/emission.hpp"
#include "qmclab/generators/stream.hpp"

using namespace qmclab;

namespace {

/// A spec argument is either inline text or the path of a file holding it.
std::string spec_source(const std::string& arg) {
    std::error_code ec;
    if (arg.find('{') == std::string::npos && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text;
        for (std::string line; std::getline(ss, line);) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            text += text::trim(line);
        }
        return text;
    }
    return arg;
}

/// Writes to --out when given, stdout otherwise.
template <class F>
void with_output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    detail::require(static_cast<bool>(out), "cannot open output file '" + path + "'");
    write(out);
}

std::string fmt(const BigRational& x, const std::optional<unsigned>& digits) {
    return digits ? to_decimal(x, *digits) : to_string(x);
}

struct Settings {
    int decimal = -1;
    std::optional<unsigned> digits() const {
        return decimal >= 0 ? std::optional<unsigned>(static_cast<unsigned>(decimal)) : std::nullopt;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmclab: low-discrepancy sequences, exact discrepancy and Diophantine scans"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings settings;
    app.add_option("--decimal", settings.decimal, "Print numbers as decimals with this many digits")
        ->check(CLI::Range(0, 1000));

    // gen
    auto* gen = app.add_subcommand("gen", "Emit points of a sequence");
    std::string gen_spec, gen_out;
    std::uint64_t gen_start = 0, gen_count = 16;
    unsigned gen_workers = 1;
    gen->add_option("--spec", gen_spec, "Spec text or file")->required();
    gen->add_option("--start", gen_start, "First index");
    gen->add_option("--count", gen_count, "Number of points");
    gen->add_option("--out", gen_out, "Output file (default stdout)");
    gen->add_option("--workers", gen_workers, "Worker threads");

    // disc
    auto* disc = app.add_subcommand("disc", "Discrepancy of a point file or of a spec prefix");
    std::string disc_in, disc_spec, disc_kind = "star", disc_algo = "auto";
    std::uint64_t disc_start = 0, disc_count = 0, disc_budget = default_work_budget;
    unsigned disc_k = 0, disc_workers = 1;
    disc->add_option("--in", disc_in, "Point file ('-' for stdin)");
    disc->add_option("--spec", disc_spec, "Spec text or file (instead of --in)");
    disc->add_option("--start", disc_start, "First index with --spec");
    disc->add_option("--count", disc_count, "Number of points with --spec");
    disc->add_option("--kind", disc_kind, "star|extreme");
    disc->add_option("--algo", disc_algo, "auto|1d|2d|grid|bracket");
    disc->add_option("--k", disc_k, "Bracket resolution");
    disc->add_option("--budget", disc_budget, "Work budget");
    disc->add_option("--workers", disc_workers, "Worker threads");

    // scan-lattice
    auto* scan = app.add_subcommand("scan-lattice", "D*_N over lattice generating vectors");
    std::uint64_t scan_N = 0;
    std::size_t scan_d = 2;
    std::string scan_mode = "exhaustive";
    unsigned scan_workers = 1;
    scan->add_option("--N", scan_N, "Lattice size")->required();
    scan->add_option("--d", scan_d, "Dimension (1-3)");
    scan->add_option("--mode", scan_mode, "exhaustive | sample:COUNT:SEED");
    scan->add_option("--workers", scan_workers, "Worker threads");

    // cfrac
    auto* cfrac = app.add_subcommand("cfrac", "Continued fractions");
    std::string cf_rational_arg, cf_real;
    std::optional<std::uint64_t> cf_surd_arg;
    std::optional<unsigned> cf_a2k, cf_bl;
    unsigned cf_width = 256, cf_depth = 50;
    auto* cf_group = cfrac->add_option_group("what");
    cf_group->add_option("--rational", cf_rational_arg, "a/N");
    cf_group->add_option("--surd", cf_surd_arg, "D (sqrt D)");
    cf_group->add_option("--a2k", cf_a2k, "K: largest partial quotient of 2^K sqrt 2");
    cf_group->add_option("--bl", cf_bl, "L: table of A_K and B_K for K <= L");
    cf_group->add_option("--real", cf_real, "Alpha expression: largest partial quotient at --width bits");
    cf_group->require_option(1);
    cfrac->add_option("--width", cf_width, "Carrier width for --real");
    cfrac->add_option("--depth", cf_depth, "Number of quotients for --real");

    // zaremba / moser
    auto* zaremba = app.add_subcommand("zaremba", "min over a of the largest partial quotient of a/N");
    auto* moser = app.add_subcommand("moser", "min over a of the partial quotient sum of a/N");
    std::uint64_t z_from = 2, z_to = 0, m_from = 2, m_to = 0;
    unsigned z_workers = 1, m_workers = 1;
    zaremba->add_option("--from", z_from, "First N");
    zaremba->add_option("--to", z_to, "Last N")->required();
    zaremba->add_option("--workers", z_workers, "Worker threads");
    moser->add_option("--from", m_from, "First N");
    moser->add_option("--to", m_to, "Last N")->required();
    moser->add_option("--workers", m_workers, "Worker threads");

    // schmidt
    auto* schmidt = app.add_subcommand("schmidt", "Lattice counting with a weight function");
    std::uint64_t sch_h = 1, sch_N = 1, sch_budget = 100'000'000;
    schmidt->set_help_flag("--help", "Print this help message and exit");
    std::string sch_gens, sch_phi = "constant{1/2}";
    schmidt->add_option("--h", sch_h, "Box half-width")->required();
    schmidt->add_option("--gens", sch_gens, "Generators a_1,...,a_d")->required();
    schmidt->add_option("--N", sch_N, "Modulus")->required();
    schmidt->add_option("--phi", sch_phi, "constant{c} | product{c}");
    schmidt->add_option("--budget", sch_budget, "Work budget");

    // littlewood
    auto* littlewood = app.add_subcommand("littlewood", "min n ||n alpha|| ||n beta|| for n <= nmax");
    std::string lw_alpha, lw_beta;
    std::uint64_t lw_nmax = 0;
    unsigned lw_width = 128;
    littlewood->add_option("--alpha", lw_alpha, "Rational or alpha expression")->required();
    littlewood->add_option("--beta", lw_beta, "Rational or alpha expression")->required();
    littlewood->add_option("--nmax", lw_nmax, "Scan length")->required();
    littlewood->add_option("--W", lw_width, "Carrier width for irrational arguments");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Scaling study of a preset or a plan file");
    std::string ex_preset, ex_plan, ex_alpha = "golden", ex_out, ex_schedule;
    std::optional<unsigned> ex_workers;
    auto* ex_group = experiment->add_option_group("plan");
    ex_group->add_option("--preset", ex_preset, "Preset name");
    ex_group->add_option("--plan", ex_plan, "Plan file");
    ex_group->require_option(1);
    experiment->add_option("--alpha", ex_alpha, "Kronecker alpha for op12-digitsum-alpha");
    experiment->add_option("--schedule", ex_schedule, "Override the schedule");
    experiment->add_option("--workers", ex_workers, "Worker threads");
    experiment->add_option("--out", ex_out, "CSV output (default stdout)");
    bool ex_show_plan = false;
    experiment->add_flag("--show-plan", ex_show_plan, "Print the plan instead of running it");

    // fit
    auto* fit = app.add_subcommand("fit", "Least-squares exponent of ln(N D) against ln ln N");
    std::string fit_in;
    fit->add_option("--in", fit_in, "Scaling CSV ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto digits = settings.digits();
    try {
        if (*gen) {
            const auto spec = parse_spec(spec_source(gen_spec), gen_start + gen_count);
            const auto ps = stream(spec, gen_start, gen_count, gen_workers);
            with_output(gen_out, [&](std::ostream& os) { write_points(os, ps, digits); });
        } else if (*disc) {
            PointSet ps;
            if (!disc_spec.empty()) {
                detail::require(disc_in.empty(), "give either --in or --spec");
                detail::require(disc_count >= 1, "--count must be >= 1 with --spec");
                ps = stream(parse_spec(spec_source(disc_spec), disc_start + disc_count), disc_start, disc_count,
                            disc_workers);
            } else if (disc_in.empty() || disc_in == "-") {
                ps = read_points(std::cin);
            } else {
                std::ifstream in(disc_in);
                detail::require(static_cast<bool>(in), "cannot open point file '" + disc_in + "'");
                ps = read_points(in);
            }
            DiscOptions opt;
            opt.kind = parse_kind(disc_kind);
            opt.algo = parse_algo(disc_algo);
            opt.k = disc_k;
            opt.budget = disc_budget;
            opt.workers = disc_workers;
            std::cout << to_json(compute_discrepancy(ps, opt), digits).dump() << '\n';
        } else if (*scan) {
            const auto summary = lattice_scan(scan_N, scan_d, LatticeScanMode::parse(scan_mode), scan_workers);
            std::cout << to_json(summary, digits).dump() << '\n';
        } else if (*cfrac) {
            if (!cf_rational_arg.empty()) {
                const auto slash = cf_rational_arg.find('/');
                detail::require(slash != std::string::npos, "--rational expects a/N");
                const auto cf = cf_rational(detail::parse_integer(text::trim(cf_rational_arg.substr(0, slash))),
                                            detail::parse_integer(text::trim(cf_rational_arg.substr(slash + 1))));
                std::cout << cf.to_string() << '\n';
            } else if (cf_surd_arg) {
                std::cout << cf_surd(*cf_surd_arg).to_string() << '\n';
            } else if (cf_a2k) {
                std::cout << largest_pq_2k_sqrt2(*cf_a2k).get_str() << '\n';
            } else if (cf_bl) {
                const auto b = b_statistic(*cf_bl);
                std::cout << "K,A_K,B_K\n";
                for (std::size_t K = 0; K < b.A.size(); ++K)
                    std::cout << K << ',' << b.A[K].get_str() << ',' << b.B[K].get_str() << '\n';
            } else {
                std::cout << max_pq_of_real(parse_alpha(cf_real, cf_width), cf_depth).get_str() << '\n';
            }
        } else if (*zaremba) {
            zaremba_range(z_from, z_to, z_workers).write_csv(std::cout);
        } else if (*moser) {
            moser_range(m_from, m_to, m_workers).write_csv(std::cout);
        } else if (*schmidt) {
            const auto r = schmidt_count(sch_h, text::parse_u64_list(sch_gens), sch_N, PhiSpec::parse(sch_phi),
                                         sch_budget);
            nlohmann::ordered_json j;
            j["count"] = r.count;
            j["main_term"] = fmt(r.main_term, digits);
            j["residual"] = fmt(r.residual, digits);
            std::cout << j.dump() << '\n';
        } else if (*littlewood) {
            auto carrier = [&](const std::string& expr) {
                try {
                    return ApproxReal::exact(parse_rational(expr));
                } catch (const ValidationError&) {
                    return ApproxReal::fixed(parse_alpha(expr, lw_width));
                }
            };
            const auto r = littlewood_scan(carrier(lw_alpha), carrier(lw_beta), lw_nmax);
            nlohmann::ordered_json j;
            j["min_value"] = fmt(r.min_value, digits);
            j["argmin"] = r.argmin;
            j["error_bound"] = fmt(r.error_bound, digits);
            j["n_max"] = r.n_max;
            std::cout << j.dump() << '\n';
        } else if (*experiment) {
            ExperimentPlan plan = ex_plan.empty() ? preset(ex_preset, ex_alpha) : load_plan(ex_plan);
            if (!ex_schedule.empty()) plan.schedule = parse_schedule(ex_schedule);
            if (ex_workers) plan.workers = *ex_workers;
            plan.validate();
            if (ex_show_plan) {
                std::cout << format_plan(plan);
            } else {
                const auto table = run_scaling(plan);
                with_output(ex_out, [&](std::ostream& os) { table.write_csv(os, digits); });
            }
        } else if (*fit) {
            std::vector<FitSample> samples;
            if (fit_in == "-") {
                samples = read_fit_csv(std::cin);
            } else {
                std::ifstream in(fit_in);
                detail::require(static_cast<bool>(in), "cannot open table '" + fit_in + "'");
                samples = read_fit_csv(in);
            }
            std::cout << format_fit(fit_exponent(samples));
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
