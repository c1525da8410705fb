#pragma once

// Experiment plans. A plan is a spec text plus a schedule of N values and the
// discrepancy settings. Plan files are plain key = value lines:
//
//   spec = halton{bases=2,3}
//   schedule = 2^4..2^12        (or an explicit list: 16,32,64)
//   kind = star                 star | extreme
//   algo = auto                 auto | 1d | 2d | grid | bracket
//   p = 2                       normalization exponent
//   k = 512                     bracket resolution (0 = automatic)
//   budget = 100000000
//   workers = 1
//
// Specs of finite families may use the placeholders $N (the row's N) and $G
// (the integer nearest N (sqrt 5 - 1) / 2, a golden-section lattice
// generator); such specs are regenerated for every row of the schedule.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/discrepancy/compute.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/spec_text.hpp"

namespace qmclab {

struct ExperimentPlan {
    std::string name;
    std::string spec_text;
    std::vector<std::uint64_t> schedule;
    DiscKind kind = DiscKind::star;
    DiscAlgo algo = DiscAlgo::automatic;
    BigRational p = 1;
    unsigned k = 0;
    std::uint64_t budget = default_work_budget;
    unsigned workers = 1;

    bool is_templated() const { return spec_text.find('$') != std::string::npos; }

    void validate() const {
        detail::require(!spec_text.empty(), "plan has no spec");
        detail::require(!schedule.empty(), "plan schedule is empty");
        detail::require(schedule.front() >= 1, "schedule values must be >= 1");
        for (std::size_t i = 1; i < schedule.size(); ++i)
            detail::require(schedule[i - 1] < schedule[i], "schedule must be strictly increasing");
        detail::require(sgn(p) >= 0, "normalization exponent must be >= 0");
    }
};

/// Golden-section lattice generator for N: round(N (sqrt 5 - 1) / 2), kept in [1, N-1].
inline std::uint64_t golden_generator(std::uint64_t N) {
    if (N <= 2) return N - 1;
    // round(N (sqrt5 - 1)/2) = floor((sqrt(5 N^2) - N + 1) / 2)
    BigInt s;
    BigInt five_n2 = BigInt(5) * big_from_u64(N) * big_from_u64(N);
    mpz_sqrt(s.get_mpz_t(), five_n2.get_mpz_t());
    BigInt g = (s - big_from_u64(N) + 1) / 2;
    std::uint64_t v = g.get_ui();
    return std::clamp<std::uint64_t>(v, 1, N - 1);
}

/// Replaces $N and $G in a spec template.
inline std::string instantiate_spec(std::string text, std::uint64_t N) {
    auto replace_all = [&](const std::string& key, const std::string& value) {
        for (std::size_t pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size()))
            text.replace(pos, key.size(), value);
    };
    replace_all("$N", std::to_string(N));
    replace_all("$G", std::to_string(golden_generator(N)));
    detail::require(text.find('$') == std::string::npos, "unknown placeholder in spec template");
    return text;
}

/// "2^4..2^12" (geometric), "6^2..6^6", or "16,32,64".
inline std::vector<std::uint64_t> parse_schedule(std::string_view text) {
    const std::string t = text::trim(text);
    detail::require(!t.empty(), "plan schedule is empty");
    if (auto dots = t.find(".."); dots != std::string::npos) {
        auto side = [](std::string_view s) {
            const auto caret = s.find('^');
            detail::require(caret != std::string_view::npos, "geometric schedule needs the form b^i..b^j");
            return std::make_pair(text::parse_u64(s.substr(0, caret)), text::parse_u64(s.substr(caret + 1)));
        };
        const auto [b1, e1] = side(text::trim(std::string_view(t).substr(0, dots)));
        const auto [b2, e2] = side(text::trim(std::string_view(t).substr(dots + 2)));
        detail::require(b1 == b2 && b1 >= 2, "geometric schedule needs one base >= 2");
        detail::require(e1 <= e2, "geometric schedule exponents must increase");
        std::vector<std::uint64_t> out;
        unsigned __int128 v = 1;
        for (std::uint64_t e = 0; e <= e2; ++e) {
            if (e >= e1) out.push_back(static_cast<std::uint64_t>(v));
            v *= b1;
            detail::require(v < (static_cast<unsigned __int128>(1) << 62) || e == e2, "schedule value too large");
        }
        return out;
    }
    return text::parse_u64_list(t);
}

inline std::string format_schedule(const std::vector<std::uint64_t>& s) { return text::join_u64(s); }

/// Parses the key = value plan format; unknown keys are rejected.
inline ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    plan.name = "plan";
    std::string line;
    bool have_schedule = false;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = text::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        detail::require(eq != std::string::npos, "plan line without '=': " + t);
        const std::string key = text::trim(std::string_view(t).substr(0, eq));
        const std::string value = text::trim(std::string_view(t).substr(eq + 1));
        if (key == "spec") plan.spec_text = value;
        else if (key == "schedule") {
            plan.schedule = parse_schedule(value);
            have_schedule = true;
        } else if (key == "kind") plan.kind = parse_kind(value);
        else if (key == "algo") plan.algo = parse_algo(value);
        else if (key == "p") plan.p = parse_rational(value);
        else if (key == "k") plan.k = static_cast<unsigned>(text::parse_u64(value));
        else if (key == "budget") plan.budget = text::parse_u64(value);
        else if (key == "workers") plan.workers = static_cast<unsigned>(text::parse_u64(value));
        else if (key == "name") plan.name = value;
        else throw ValidationError("unknown plan key '" + key + "'");
    }
    if (!have_schedule) plan.schedule = parse_schedule("2^1..2^10");
    plan.validate();
    return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "cannot open plan file '" + path + "'");
    return parse_plan(in);
}

/// Writes a plan back in the file format.
inline std::string format_plan(const ExperimentPlan& plan) {
    std::ostringstream os;
    os << "name = " << plan.name << "\n"
       << "spec = " << plan.spec_text << "\n"
       << "schedule = " << format_schedule(plan.schedule) << "\n"
       << "kind = " << to_string(plan.kind) << "\n"
       << "algo = " << to_string(plan.algo) << "\n"
       << "p = " << to_string(plan.p) << "\n"
       << "k = " << plan.k << "\n"
       << "budget = " << plan.budget << "\n"
       << "workers = " << plan.workers << "\n";
    return os.str();
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"op9-vdc-sqrt2",    "op12-digitsum-alpha", "halton-2-3",
                                                "c1-counterexample", "hammersley-lattice",  "power-3-2"};
    return names;
}

/// Named plans. `alpha` is the Kronecker alpha of op12-digitsum-alpha.
inline ExperimentPlan preset(const std::string& name, const std::string& alpha = "golden") {
    ExperimentPlan plan;
    plan.name = name;
    if (name == "op9-vdc-sqrt2") {
        plan.spec_text = "hybrid{left=halton{bases=2};right=kronecker{alphas=sqrt(2);W=192}}";
        plan.schedule = parse_schedule("2^4..2^12");
        plan.p = 2;
    } else if (name == "op12-digitsum-alpha") {
        plan.spec_text = "digitsum{inner=kronecker{alphas=" + alpha + ";W=auto}}";
        plan.schedule = parse_schedule("2^4..2^16");
        plan.p = 1;
    } else if (name == "halton-2-3") {
        plan.spec_text = "halton{bases=2,3}";
        plan.schedule = parse_schedule("2^4..2^12");
        plan.p = 2;
    } else if (name == "c1-counterexample") {
        plan.spec_text =
            "hybrid{left=digital{q=3;L=auto;matrices=first-row-ones};right=digital{q=2;L=auto;matrices=identity}}";
        plan.schedule = parse_schedule("6^1..6^6");
        plan.p = 2;
        plan.k = 512;
    } else if (name == "hammersley-lattice") {
        plan.spec_text = "hybrid{left=hammersley{N=$N;bases=2};right=lattice{N=$N;gens=$G}}";
        plan.schedule = {17, 31, 61, 127, 251};
        plan.p = 3;
    } else if (name == "power-3-2") {
        plan.spec_text = "power{p=3;r=2}";
        plan.schedule = parse_schedule("2^4..2^12");
        plan.p = 1;
    } else {
        std::string list;
        for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        throw ValidationError("unknown preset '" + name + "'; available: " + list);
    }
    plan.validate();
    return plan;
}

/// The sequence a plan evaluates at N (templated specs) or up to n_max.
inline SpecPtr plan_spec(const ExperimentPlan& plan, std::uint64_t N) {
    return parse_spec(plan.is_templated() ? instantiate_spec(plan.spec_text, N) : plan.spec_text, N);
}

} // namespace qmclab
