#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmclab/algebra/fixed_point.hpp"
#include "qmclab/algebra/gen_matrix.hpp"
#include "qmclab/algebra/laurent.hpp"
#include "qmclab/algebra/polynomial.hpp"
#include "qmclab/errors.hpp"

namespace qmclab {

class SequenceSpec;
using SpecPtr = std::shared_ptr<const SequenceSpec>;

struct KroneckerSpec {
    std::vector<FixedPointReal> alphas;
};

struct HaltonSpec {
    std::vector<std::uint64_t> bases;
};

struct DigitalSpec {
    std::uint32_t q;
    std::vector<GenMatrix> matrices;
    unsigned precision;
};

struct DigitalKroneckerSpec {
    std::uint32_t q;
    std::vector<LaurentSeries> series;
    unsigned precision;
};

struct LatticeSpec {
    std::uint64_t N;
    std::vector<std::uint64_t> gens;
};

struct RationalNetSpec {
    std::uint32_t q;
    Poly f;
    std::vector<Poly> gs;
};

struct HammersleySpec {
    std::uint64_t N;
    std::vector<std::uint64_t> bases;
};

struct PowerRatioSpec {
    std::uint64_t p;
    std::uint64_t r;
};

struct DigitSumFilteredSpec {
    SpecPtr inner;
};

struct HybridSpec {
    SpecPtr left;
    SpecPtr right;
};

/// Validated, immutable description of a point-sequence family.
class SequenceSpec {
public:
    using Variant = std::variant<KroneckerSpec, HaltonSpec, DigitalSpec, DigitalKroneckerSpec, LatticeSpec,
                                 RationalNetSpec, HammersleySpec, PowerRatioSpec, DigitSumFilteredSpec, HybridSpec>;

    static SpecPtr kronecker(std::vector<FixedPointReal> alphas) {
        detail::require(!alphas.empty(), "Kronecker sequence needs at least one alpha");
        for (const auto& a : alphas)
            detail::require(a.width() == alphas.front().width(), "Kronecker alphas must share one width");
        return make(KroneckerSpec{std::move(alphas)});
    }

    static SpecPtr halton(std::vector<std::uint64_t> bases) {
        validate_bases(bases, "Halton");
        return make(HaltonSpec{std::move(bases)});
    }

    static SpecPtr digital(std::uint32_t q, std::vector<GenMatrix> matrices, unsigned precision) {
        validate_prime_modulus(q);
        detail::require(!matrices.empty(), "digital sequence needs at least one matrix");
        detail::require(precision >= 1, "digital precision must be positive");
        for (const auto& m : matrices) detail::require(m.modulus() == q, "matrix modulus differs from sequence base");
        return make(DigitalSpec{q, std::move(matrices), precision});
    }

    static SpecPtr digital_kronecker(std::uint32_t q, std::vector<LaurentSeries> series, unsigned precision) {
        validate_prime_modulus(q);
        detail::require(!series.empty(), "digital Kronecker sequence needs at least one series");
        detail::require(precision >= 1, "digital precision must be positive");
        for (const auto& s : series) {
            detail::require(s.modulus() == q, "series modulus differs from sequence base");
            if (s.known_through() < static_cast<std::int64_t>(precision))
                throw TruncationInsufficient("series truncated before the requested precision");
        }
        return make(DigitalKroneckerSpec{q, std::move(series), precision});
    }

    static SpecPtr lattice(std::uint64_t N, std::vector<std::uint64_t> gens) {
        detail::require(N >= 1, "lattice size must be positive");
        detail::require(!gens.empty(), "lattice needs at least one generator");
        for (auto g : gens) detail::require(g < N, "lattice generator outside [0, N)");
        return make(LatticeSpec{N, std::move(gens)});
    }

    static SpecPtr rational_net(std::uint32_t q, Poly f, std::vector<Poly> gs) {
        validate_prime_modulus(q);
        detail::require(f.modulus() == q, "denominator modulus differs from net base");
        detail::require(f.degree() >= 1, "denominator must have degree >= 1");
        detail::require(f.degree() <= 62, "denominator degree too large for 64-bit indices");
        detail::require(!gs.empty(), "rational net needs at least one numerator");
        for (const auto& g : gs) {
            detail::require(g.modulus() == q, "numerator modulus differs from net base");
            detail::require(g.degree() < f.degree(), "numerator degree must be below deg f");
            detail::require(gcd(g, f).degree() == 0, "numerator " + g.to_string() + " not coprime to f");
        }
        return make(RationalNetSpec{q, std::move(f), std::move(gs)});
    }

    static SpecPtr hammersley(std::uint64_t N, std::vector<std::uint64_t> bases) {
        detail::require(N >= 1, "Hammersley size must be positive");
        if (!bases.empty()) validate_bases(bases, "Hammersley");
        return make(HammersleySpec{N, std::move(bases)});
    }

    static SpecPtr power_ratio(std::uint64_t p, std::uint64_t r) {
        detail::require(r >= 2 && p > r, "power ratio needs p > r >= 2");
        detail::require(std::gcd(p, r) == 1, "power ratio needs coprime p and r");
        return make(PowerRatioSpec{p, r});
    }

    static SpecPtr digit_sum_filtered(SpecPtr inner) {
        detail::require(inner != nullptr, "digit-sum filter needs an inner sequence");
        return make(DigitSumFilteredSpec{std::move(inner)});
    }

    static SpecPtr hybrid(SpecPtr left, SpecPtr right) {
        detail::require(left && right, "hybrid needs two components");
        return make(HybridSpec{std::move(left), std::move(right)});
    }

    const Variant& variant() const { return v_; }

    std::size_t dimension() const {
        return std::visit(
            [](const auto& s) -> std::size_t {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, KroneckerSpec>) return s.alphas.size();
                else if constexpr (std::is_same_v<T, HaltonSpec>) return s.bases.size();
                else if constexpr (std::is_same_v<T, DigitalSpec>) return s.matrices.size();
                else if constexpr (std::is_same_v<T, DigitalKroneckerSpec>) return s.series.size();
                else if constexpr (std::is_same_v<T, LatticeSpec>) return s.gens.size();
                else if constexpr (std::is_same_v<T, RationalNetSpec>) return s.gs.size();
                else if constexpr (std::is_same_v<T, HammersleySpec>) return s.bases.size() + 1;
                else if constexpr (std::is_same_v<T, PowerRatioSpec>) return 1;
                else if constexpr (std::is_same_v<T, DigitSumFilteredSpec>) return s.inner->dimension();
                else return s.left->dimension() + s.right->dimension();
            },
            v_);
    }

    /// Number of points for finite families (lattice, Hammersley, rational
    /// nets); empty for infinite sequences.
    std::optional<std::uint64_t> finite_size() const {
        return std::visit(
            [](const auto& s) -> std::optional<std::uint64_t> {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, LatticeSpec> || std::is_same_v<T, HammersleySpec>) return s.N;
                else if constexpr (std::is_same_v<T, RationalNetSpec>) {
                    std::uint64_t n = 1;
                    for (int i = 0; i < s.f.degree(); ++i) n *= s.q;
                    return n;
                } else if constexpr (std::is_same_v<T, HybridSpec>) {
                    auto a = s.left->finite_size();
                    auto b = s.right->finite_size();
                    if (a && b) return std::min(*a, *b);
                    return a ? a : b;
                } else return std::nullopt;
            },
            v_);
    }

private:
    explicit SequenceSpec(Variant v) : v_(std::move(v)) {}

    static SpecPtr make(Variant v) { return SpecPtr(new SequenceSpec(std::move(v))); }

    static void validate_bases(const std::vector<std::uint64_t>& bases, const char* family) {
        detail::require(!bases.empty(), std::string(family) + " needs at least one base");
        for (std::size_t i = 0; i < bases.size(); ++i) {
            detail::require(bases[i] >= 2, std::string(family) + " bases must be >= 2");
            for (std::size_t j = 0; j < i; ++j)
                detail::require(std::gcd(bases[i], bases[j]) == 1,
                                std::string(family) + " bases must be pairwise coprime");
        }
    }

    Variant v_;
};

} // namespace qmclab
