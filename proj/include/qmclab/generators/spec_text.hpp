#pragma once

// Text form of a SequenceSpec, used by the CLI, plan files and point-file
// headers:
//
//   halton{bases=2,3}
//   kronecker{alphas=sqrt(2),golden;W=128}        W=auto sizes from n_max
//   digital{q=3;L=auto;matrices=first-row-ones}
//   dkron{q=2;L=12;series=[1]/[x^3+x+1]}
//   lattice{N=5;gens=1,2}
//   ratnet{q=2;f=x^2+x+1;g=1,x}
//   hammersley{N=16;bases=2}
//   power{p=3;r=2}
//   digitsum{inner=kronecker{alphas=sqrt(2);W=auto}}
//   hybrid{left=halton{bases=2};right=kronecker{alphas=sqrt(2);W=128}}
//
// Alphas: p/q, decimals, sqrt(D), golden (= (sqrt 5 - 1)/2),
// quad(a,b,D,c) (= (a + b sqrt D)/c), fixed(S) (= S / 2^W exactly).
// Matrices: identity, first-row-ones, random:SEED:DEPTH,
// finite-row:SEED:NUM/DEN.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmclab/algebra/fixed_point.hpp"
#include "qmclab/algebra/gen_matrix.hpp"
#include "qmclab/algebra/laurent.hpp"
#include "qmclab/algebra/polynomial.hpp"
#include "qmclab/errors.hpp"
#include "qmclab/generators/sequence_spec.hpp"

namespace qmclab {

namespace text {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

/// Splits on `sep` at bracket depth zero ({}, (), []).
inline std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '{' || c == '(' || c == '[') ++depth;
        else if (c == '}' || c == ')' || c == ']') --depth;
        detail::require(depth >= 0, "unbalanced brackets in '" + std::string(s) + "'");
        if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(begin, i - begin)));
            begin = i + 1;
        }
    }
    detail::require(depth == 0, "unbalanced brackets in '" + std::string(s) + "'");
    out.push_back(trim(s.substr(begin)));
    return out;
}

inline std::uint64_t parse_u64(std::string_view s) {
    const std::string t = trim(s);
    detail::require(detail::all_digits(t) && t.size() <= 19, "not a nonnegative integer: '" + t + "'");
    return std::stoull(t);
}

inline std::vector<std::uint64_t> parse_u64_list(std::string_view s) {
    std::vector<std::uint64_t> out;
    for (const auto& part : split_top(s, ',')) out.push_back(parse_u64(part));
    return out;
}

inline std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

inline std::string call_argument(std::string_view s, std::string_view fn) {
    detail::require(s.size() > fn.size() + 1 && s.substr(0, fn.size()) == fn && s[fn.size()] == '(' && s.back() == ')',
                    "expected " + std::string(fn) + "(...)");
    return std::string(s.substr(fn.size() + 1, s.size() - fn.size() - 2));
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

} // namespace text

/// Evaluates an alpha expression into a W-bit carrier.
inline FixedPointReal parse_alpha(std::string_view expr, unsigned width) {
    const std::string s = text::trim(expr);
    if (s == "golden") return FixedPointReal::from_quadratic(-1, 1, 5, 2, width, "golden");
    if (text::starts_with(s, "sqrt(")) {
        const auto D = text::parse_u64(text::call_argument(s, "sqrt"));
        auto a = fixedpoint_sqrt(D, width);
        return a;
    }
    if (text::starts_with(s, "quad(")) {
        const auto args = text::split_top(text::call_argument(s, "quad"), ',');
        detail::require(args.size() == 4, "quad(a,b,D,c) takes four arguments");
        return FixedPointReal::from_quadratic(detail::parse_integer(args[0]), detail::parse_integer(args[1]),
                                              text::parse_u64(args[2]), detail::parse_integer(args[3]), width, s);
    }
    if (text::starts_with(s, "fixed(")) {
        return FixedPointReal::from_scaled(width, detail::parse_integer(text::call_argument(s, "fixed")), s);
    }
    auto a = FixedPointReal::from_rational(parse_rational(s), width);
    return a;
}

inline std::string format_alpha(const FixedPointReal& a) {
    if (!a.label().empty()) return a.label();
    return "fixed(" + a.scaled().get_str() + ")";
}

inline GenMatrix parse_matrix(std::string_view expr, std::uint32_t q) {
    const std::string s = text::trim(expr);
    if (s == "identity") return GenMatrix::identity(q);
    if (s == "first-row-ones") return GenMatrix::first_row_ones(q);
    const auto parts = text::split_top(s, ':');
    if (parts.size() == 3 && parts[0] == "random")
        return GenMatrix::random_uniform(q, text::parse_u64(parts[1]), text::parse_u64(parts[2]));
    if (parts.size() == 3 && parts[0] == "finite-row") {
        const auto rho = parse_rational(parts[2]);
        detail::require(rho.get_num().fits_uint_p() && rho.get_den().fits_uint_p(), "continuation probability too large");
        return GenMatrix::random_finite_row(q, text::parse_u64(parts[1]),
                                            static_cast<std::uint32_t>(rho.get_num().get_ui()),
                                            static_cast<std::uint32_t>(rho.get_den().get_ui()));
    }
    throw ValidationError("unknown generating matrix '" + s + "'");
}

/// "[g]/[f]" expanded through `known_through`, or "laurent(omega,known,c.c.c)".
inline LaurentSeries parse_series(std::string_view expr, std::uint32_t q, std::int64_t known_through) {
    const std::string s = text::trim(expr);
    if (text::starts_with(s, "laurent(")) {
        const auto args = text::split_top(text::call_argument(s, "laurent"), ',');
        detail::require(args.size() == 3, "laurent(omega,known,coeffs) takes three arguments");
        std::vector<std::uint32_t> c;
        if (!args[2].empty())
            for (const auto& d : text::split_top(args[2], '.')) c.push_back(static_cast<std::uint32_t>(text::parse_u64(d)));
        return LaurentSeries(q, std::stoll(args[0]), std::move(c), std::stoll(args[1]));
    }
    const auto parts = text::split_top(s, '/');
    detail::require(parts.size() == 2 && parts[0].size() >= 2 && parts[1].size() >= 2 && parts[0].front() == '[' &&
                        parts[0].back() == ']' && parts[1].front() == '[' && parts[1].back() == ']',
                    "series must be [g]/[f] or laurent(...): '" + s + "'");
    const Poly g = Poly::parse(q, parts[0].substr(1, parts[0].size() - 2));
    const Poly f = Poly::parse(q, parts[1].substr(1, parts[1].size() - 2));
    return LaurentSeries::from_rational(g, f, known_through);
}

inline std::string format_series(const LaurentSeries& s) {
    std::string c;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) c += (i ? "." : "") + std::to_string(s.coeffs()[i]);
    return "laurent(" + std::to_string(s.omega()) + "," + std::to_string(s.known_through()) + "," + c + ")";
}

/// Digits needed so that L = ceil(log_q n_max) + 16.
inline unsigned default_digit_precision(std::uint32_t q, std::uint64_t n_max) {
    unsigned digits = 0;
    unsigned __int128 pw = 1;
    while (pw < n_max) {
        pw *= q;
        ++digits;
    }
    return digits + 16;
}

namespace detail {

inline std::map<std::string, std::string> parse_body(std::string_view body) {
    std::map<std::string, std::string> kv;
    if (text::trim(body).empty()) return kv;
    for (const auto& item : text::split_top(body, ';')) {
        const auto eq = item.find('=');
        require(eq != std::string::npos, "expected key=value, got '" + item + "'");
        const auto key = text::trim(item.substr(0, eq));
        require(kv.emplace(key, text::trim(item.substr(eq + 1))).second, "duplicate key '" + key + "'");
    }
    return kv;
}

struct Fields {
    std::string family;
    std::map<std::string, std::string> kv;

    const std::string& get(const std::string& key) const {
        auto it = kv.find(key);
        require(it != kv.end(), family + " needs '" + key + "'");
        return it->second;
    }
    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [k, v] : kv) {
            bool ok = false;
            for (auto a : keys) ok = ok || k == a;
            require(ok, "unknown key '" + k + "' for " + family);
        }
    }
};

} // namespace detail

/// Parses a spec; "auto" widths and precisions are sized for indices < n_max.
inline SpecPtr parse_spec(std::string_view source, std::uint64_t n_max = 1u << 20) {
    const std::string s = text::trim(source);
    const auto brace = s.find('{');
    detail::require(brace != std::string::npos && !s.empty() && s.back() == '}',
                    "sequence spec must look like family{key=value;...}: '" + s + "'");
    detail::Fields f{text::trim(s.substr(0, brace)), detail::parse_body(s.substr(brace + 1, s.size() - brace - 2))};
    const auto& fam = f.family;

    auto precision = [&](std::uint32_t q) -> unsigned {
        const auto& v = f.get("L");
        return v == "auto" ? default_digit_precision(q, n_max) : static_cast<unsigned>(text::parse_u64(v));
    };
    auto modulus = [&]() { return static_cast<std::uint32_t>(text::parse_u64(f.get("q"))); };

    if (fam == "halton") {
        f.allow({"bases"});
        return SequenceSpec::halton(text::parse_u64_list(f.get("bases")));
    }
    if (fam == "kronecker") {
        f.allow({"alphas", "W"});
        const auto& wtext = f.get("W");
        const unsigned w = wtext == "auto" ? default_width(n_max) : static_cast<unsigned>(text::parse_u64(wtext));
        std::vector<FixedPointReal> alphas;
        for (const auto& a : text::split_top(f.get("alphas"), ',')) alphas.push_back(parse_alpha(a, w));
        return SequenceSpec::kronecker(std::move(alphas));
    }
    if (fam == "digital") {
        f.allow({"q", "L", "matrices"});
        const auto q = modulus();
        validate_prime_modulus(q);
        std::vector<GenMatrix> ms;
        for (const auto& m : text::split_top(f.get("matrices"), ',')) ms.push_back(parse_matrix(m, q));
        return SequenceSpec::digital(q, std::move(ms), precision(q));
    }
    if (fam == "dkron") {
        f.allow({"q", "L", "series"});
        const auto q = modulus();
        validate_prime_modulus(q);
        const unsigned L = precision(q);
        std::vector<LaurentSeries> series;
        for (const auto& t : text::split_top(f.get("series"), ','))
            series.push_back(parse_series(t, q, static_cast<std::int64_t>(L) + 64));
        return SequenceSpec::digital_kronecker(q, std::move(series), L);
    }
    if (fam == "lattice") {
        f.allow({"N", "gens"});
        return SequenceSpec::lattice(text::parse_u64(f.get("N")), text::parse_u64_list(f.get("gens")));
    }
    if (fam == "ratnet") {
        f.allow({"q", "f", "g"});
        const auto q = modulus();
        std::vector<Poly> gs;
        for (const auto& g : text::split_top(f.get("g"), ',')) gs.push_back(Poly::parse(q, g));
        return SequenceSpec::rational_net(q, Poly::parse(q, f.get("f")), std::move(gs));
    }
    if (fam == "hammersley") {
        f.allow({"N", "bases"});
        auto it = f.kv.find("bases");
        return SequenceSpec::hammersley(text::parse_u64(f.get("N")),
                                        it == f.kv.end() || it->second.empty() ? std::vector<std::uint64_t>{}
                                                                               : text::parse_u64_list(it->second));
    }
    if (fam == "power") {
        f.allow({"p", "r"});
        return SequenceSpec::power_ratio(text::parse_u64(f.get("p")), text::parse_u64(f.get("r")));
    }
    if (fam == "digitsum") {
        f.allow({"inner"});
        // the filtered index n_k is at most 2k + 1
        return SequenceSpec::digit_sum_filtered(parse_spec(f.get("inner"), 2 * n_max + 2));
    }
    if (fam == "hybrid") {
        f.allow({"left", "right"});
        return SequenceSpec::hybrid(parse_spec(f.get("left"), n_max), parse_spec(f.get("right"), n_max));
    }
    throw ValidationError("unknown sequence family '" + fam + "'");
}

/// Canonical text; parse_spec(format_spec(s)) reproduces s.
inline std::string format_spec(const SequenceSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KroneckerSpec>) {
                std::string a;
                for (std::size_t i = 0; i < s.alphas.size(); ++i) a += (i ? "," : "") + format_alpha(s.alphas[i]);
                return "kronecker{alphas=" + a + ";W=" + std::to_string(s.alphas.front().width()) + "}";
            } else if constexpr (std::is_same_v<T, HaltonSpec>) {
                return "halton{bases=" + text::join_u64(s.bases) + "}";
            } else if constexpr (std::is_same_v<T, DigitalSpec>) {
                std::string m;
                for (std::size_t i = 0; i < s.matrices.size(); ++i) m += (i ? "," : "") + s.matrices[i].name();
                return "digital{q=" + std::to_string(s.q) + ";L=" + std::to_string(s.precision) + ";matrices=" + m + "}";
            } else if constexpr (std::is_same_v<T, DigitalKroneckerSpec>) {
                std::string m;
                for (std::size_t i = 0; i < s.series.size(); ++i) m += (i ? "," : "") + format_series(s.series[i]);
                return "dkron{q=" + std::to_string(s.q) + ";L=" + std::to_string(s.precision) + ";series=" + m + "}";
            } else if constexpr (std::is_same_v<T, LatticeSpec>) {
                return "lattice{N=" + std::to_string(s.N) + ";gens=" + text::join_u64(s.gens) + "}";
            } else if constexpr (std::is_same_v<T, RationalNetSpec>) {
                std::string g;
                for (std::size_t i = 0; i < s.gs.size(); ++i) g += (i ? "," : "") + s.gs[i].to_string();
                return "ratnet{q=" + std::to_string(s.q) + ";f=" + s.f.to_string() + ";g=" + g + "}";
            } else if constexpr (std::is_same_v<T, HammersleySpec>) {
                return "hammersley{N=" + std::to_string(s.N) + ";bases=" + text::join_u64(s.bases) + "}";
            } else if constexpr (std::is_same_v<T, PowerRatioSpec>) {
                return "power{p=" + std::to_string(s.p) + ";r=" + std::to_string(s.r) + "}";
            } else if constexpr (std::is_same_v<T, DigitSumFilteredSpec>) {
                return "digitsum{inner=" + format_spec(*s.inner) + "}";
            } else {
                return "hybrid{left=" + format_spec(*s.left) + ";right=" + format_spec(*s.right) + "}";
            }
        },
        spec.variant());
}

} // namespace qmclab
