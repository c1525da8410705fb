#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "qmclab/algebra/rational.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

/// Weight phi(n_1..n_d): constant{c}, or product{c} = c * prod 1/max(1, |n_j|).
/// Values are clamped to [0, 1].
struct PhiSpec {
    enum class Family { constant, product };
    Family family = Family::constant;
    BigRational c;

    BigRational operator()(const std::vector<std::int64_t>& n) const {
        BigRational v = c;
        if (family == Family::product)
            for (auto x : n) v /= static_cast<unsigned long>(std::max<std::int64_t>(1, std::llabs(x)));
        if (sgn(v) < 0) return 0;
        if (v > 1) return 1;
        return v;
    }

    std::string to_string() const {
        return std::string(family == Family::constant ? "constant" : "product") + "{" + qmclab::to_string(c) + "}";
    }

    /// "constant{1/2}" or "product{1}".
    static PhiSpec parse(std::string_view text) {
        PhiSpec phi;
        std::string_view body;
        if (text.substr(0, 9) == "constant{") {
            phi.family = Family::constant;
            body = text.substr(9);
        } else if (text.substr(0, 8) == "product{") {
            phi.family = Family::product;
            body = text.substr(8);
        } else {
            throw ValidationError("unknown weight '" + std::string(text) + "' (constant{c} or product{c})");
        }
        detail::require(!body.empty() && body.back() == '}', "weight must end with '}'");
        phi.c = parse_rational(body.substr(0, body.size() - 1));
        return phi;
    }
};

struct SchmidtCount {
    std::uint64_t count = 0;
    BigRational main_term;
    BigRational residual;
};

/// count = #{n in [-h, h]^d : {sum n_j a_j / N} < phi(n)}, main_term = sum of
/// phi over the same box, residual = count - main_term.
inline SchmidtCount schmidt_count(std::uint64_t h, const std::vector<std::uint64_t>& gens, std::uint64_t N,
                                  const PhiSpec& phi, std::uint64_t budget = 100'000'000) {
    detail::require(h >= 1, "h must be >= 1");
    detail::require(N >= 1, "N must be >= 1");
    detail::require(!gens.empty(), "need at least one generator");
    const std::size_t d = gens.size();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (total > budget / (2 * h + 1)) throw BudgetExceeded("(2h+1)^d exceeds the work budget");
        total *= 2 * h + 1;
    }
    const auto hi = static_cast<std::int64_t>(h);
    const auto modN = static_cast<__int128>(N);
    std::vector<std::int64_t> n(d, -hi);
    SchmidtCount out;
    const BigRational Nq(big_from_u64(N));
    while (true) {
        __int128 s = 0;
        for (std::size_t j = 0; j < d; ++j) s = (s + static_cast<__int128>(n[j]) * static_cast<__int128>(gens[j] % N)) % modN;
        if (s < 0) s += modN;
        const BigRational w = phi(n);
        out.main_term += w;
        if (BigRational(big_from_u64(static_cast<std::uint64_t>(s))) / Nq < w) ++out.count;
        std::size_t j = 0;
        while (j < d && ++n[j] > hi) n[j++] = -hi;
        if (j == d) break;
    }
    out.residual = BigRational(big_from_u64(out.count)) - out.main_term;
    return out;
}

} // namespace qmclab
