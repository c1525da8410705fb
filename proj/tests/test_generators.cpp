#include <gtest/gtest.h>

#include <bit>
#include <sstream>
#include <vector>

#include "qmclab/generators/emission.hpp"
#include "qmclab/generators/families.hpp"
#include "qmclab/generators/spec_text.hpp"
#include "qmclab/generators/stream.hpp"

using namespace qmclab;
using Q = BigRational;

namespace {

Q r(long p, long q) { return make_rational(p, q); }

std::vector<Q> coords(const UnitPoint& p) { return p.coords; }

} // namespace

TEST(RadicalInverse, Examples) {
    EXPECT_EQ(radical_inverse(0, 2), r(0, 1));
    EXPECT_EQ(radical_inverse(3, 2), r(3, 4));
    EXPECT_EQ(radical_inverse(3, 3), r(1, 9));
    EXPECT_EQ(radical_inverse(5, 2), r(5, 8));
}

TEST(RadicalInverse, DenominatorDividesBasePower) {
    for (std::uint64_t b : {2u, 3u, 6u, 10u})
        for (std::uint64_t n = 1; n < 2000; ++n) {
            const auto v = radical_inverse(n, b);
            EXPECT_EQ(pow_big(b, digits_of(n, b).size()) % v.get_den(), 0);
            EXPECT_LT(v, 1);
        }
}

TEST(Kronecker, Examples) {
    const std::vector<FixedPointReal> sqrt2{fixedpoint_sqrt(2, 64)};
    EXPECT_EQ(coords(kronecker_point(0, sqrt2)), (std::vector<Q>{Q(0)}));

    const std::vector<FixedPointReal> quarter{FixedPointReal::from_rational(r(1, 4), 8)};
    EXPECT_EQ(coords(kronecker_point(2, quarter)), (std::vector<Q>{r(1, 2)}));

    const auto p = kronecker_point(5, sqrt2);
    BigInt expect_bits = 5 * sqrt2[0].bits();
    mpz_fdiv_r_2exp(expect_bits.get_mpz_t(), expect_bits.get_mpz_t(), 64);
    EXPECT_EQ(p.coords[0], make_rational(expect_bits, pow2(64)));
    // {5 sqrt 2} = 0.0710678118654752440...
    const Q ideal = parse_rational("0.07106781186547524400844362104849039284835937688474");
    Q err = p.coords[0] - ideal;
    if (sgn(err) < 0) err = -err;
    EXPECT_LT(err, make_rational(BigInt(5), pow2(64)));
}

TEST(Kronecker, DyadicAlphaIsExact) {
    const Q alpha = r(37, 256);
    const std::vector<FixedPointReal> a{FixedPointReal::from_rational(alpha, 64)};
    for (std::uint64_t n = 0; n < 1000; ++n) EXPECT_EQ(kronecker_point(n, a).coords[0], frac_part(alpha * n));
}

TEST(Kronecker, PrecisionBudget) {
    const std::vector<FixedPointReal> a{fixedpoint_sqrt(2, 16)};
    EXPECT_NO_THROW(kronecker_point(65535, a));
    EXPECT_THROW(kronecker_point(65536, a), PrecisionBudgetExceeded);
    EXPECT_THROW(kronecker_point(300, a, 8), PrecisionBudgetExceeded);
}

TEST(Digital, Examples) {
    const std::vector<GenMatrix> id2{GenMatrix::identity(2)};
    EXPECT_EQ(digital_point(3, 2, id2, 8).coords[0], r(3, 4));
    EXPECT_EQ(digital_point(0, 2, id2, 8).coords[0], Q(0));
    const std::vector<GenMatrix> c1{GenMatrix::first_row_ones(3)};
    EXPECT_EQ(digital_point(4, 3, c1, 2).coords[0], r(7, 9));
}

TEST(Digital, IdentityReproducesRadicalInverse) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        const std::vector<GenMatrix> id{GenMatrix::identity(q)};
        std::uint64_t limit = 1;
        for (int i = 0; i < 10; ++i) limit *= q;
        const std::uint64_t step = q == 5 ? 7 : 1;
        for (std::uint64_t n = 0; n < limit; n += step) ASSERT_EQ(digital_point(n, q, id, 10).coords[0], radical_inverse(n, q));
    }
}

TEST(DigitalKronecker, Examples) {
    const std::vector<LaurentSeries> xinv{LaurentSeries(2, 1, {1}, 8)};
    EXPECT_EQ(digital_kronecker_point(0, 2, xinv, 2).coords[0], Q(0));
    EXPECT_EQ(digital_kronecker_point(3, 2, xinv, 2).coords[0], r(1, 2));
}

TEST(DigitalKronecker, InsufficientTruncation) {
    const std::vector<LaurentSeries> s{LaurentSeries(2, 1, {1, 1, 0, 1})};
    EXPECT_THROW(digital_kronecker_point(5, 2, s, 4), TruncationInsufficient);
    EXPECT_NO_THROW(digital_kronecker_point(5, 2, s, 1));
}

TEST(RationalNet, Examples) {
    const std::vector<Poly> one2{Poly(2, {1})};
    EXPECT_EQ(rational_net_point(0, 2, Poly::parse(2, "x"), one2).coords[0], Q(0));
    EXPECT_EQ(rational_net_point(1, 2, Poly::parse(2, "x"), one2).coords[0], r(1, 2));
    EXPECT_EQ(rational_net_point(1, 2, Poly::parse(2, "x^2+x+1"), one2).coords[0], r(1, 4));
    EXPECT_THROW(rational_net_point(4, 2, Poly::parse(2, "x^2+x+1"), one2), ValidationError);
    EXPECT_THROW(SequenceSpec::rational_net(2, Poly::parse(2, "x^2"), {Poly::parse(2, "x")}), ValidationError);
    EXPECT_THROW(SequenceSpec::rational_net(2, Poly::parse(2, "x^2"), {Poly::parse(2, "x^2+1")}), ValidationError);
}

TEST(RationalNet, MatchesDigitalKroneckerForMonomialDenominator) {
    for (std::uint32_t q : {2u, 3u})
        for (int t = 1; t <= 5; ++t) {
            const Poly f = Poly::monomial(q, static_cast<std::size_t>(t));
            std::uint64_t qt = 1;
            for (int i = 0; i < t; ++i) qt *= q;
            for (std::uint64_t gi = 1; gi < qt; gi += q) {
                const Poly g = Poly::from_integer(q, gi);
                if (gcd(g, f).degree() != 0) continue;
                const std::vector<Poly> gs{g};
                const std::vector<LaurentSeries> series{LaurentSeries::from_rational(g, f, 2 * t)};
                for (std::uint64_t n = 0; n < qt; ++n)
                    ASSERT_EQ(rational_net_point(n, q, f, gs), digital_kronecker_point(n, q, series, t));
            }
        }
}

TEST(Lattice, Examples) {
    const std::vector<std::uint64_t> g{1, 2};
    EXPECT_EQ(coords(lattice_point(3, 5, g)), (std::vector<Q>{r(3, 5), r(1, 5)}));
    const auto one = lattice_point_set(1, {0});
    ASSERT_EQ(one.count(), 1u);
    EXPECT_EQ(one.points[0].coords[0], Q(0));
    const auto full = lattice_point_set(5, {1, 2});
    const std::vector<std::vector<Q>> expect{{r(0, 1), r(0, 1)}, {r(1, 5), r(2, 5)}, {r(2, 5), r(4, 5)},
                                             {r(3, 5), r(1, 5)}, {r(4, 5), r(3, 5)}};
    ASSERT_EQ(full.count(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(full.points[i].coords, expect[i]);
    EXPECT_THROW(lattice_point_set(5, {5}), ValidationError);
}

TEST(Lattice, FirstCoordinateIsIndexOverN) {
    for (std::uint64_t N : {2u, 7u, 64u, 101u}) {
        const auto ps = lattice_point_set(N, {1, 3 % N});
        ASSERT_EQ(ps.count(), N);
        for (std::uint64_t n = 0; n < N; ++n) EXPECT_EQ(ps.points[n].coords[0], make_rational(big_from_u64(n), big_from_u64(N)));
    }
}

TEST(PowerRatio, Examples) {
    EXPECT_EQ(power_ratio_point(0, 3, 2), Q(0));
    EXPECT_EQ(power_ratio_point(2, 3, 2), r(1, 4));
    EXPECT_EQ(power_ratio_point(5, 3, 2), r(19, 32));
    EXPECT_THROW(SequenceSpec::power_ratio(4, 2), ValidationError);
    EXPECT_THROW(SequenceSpec::power_ratio(2, 3), ValidationError);
}

TEST(DigitSum, Examples) {
    EXPECT_EQ(digitsum_filtered_index(0), 0u);
    EXPECT_EQ(digitsum_filtered_index(1), 3u);
    EXPECT_EQ(digitsum_filtered_index(4), 9u);
}

TEST(DigitSum, MatchesBruteForceFilter) {
    std::uint64_t k = 0;
    for (std::uint64_t n = 0; n < (1u << 16); ++n) {
        if (std::popcount(n) % 2 != 0) continue;
        ASSERT_EQ(digitsum_filtered_index(k), n);
        ++k;
    }
}

TEST(Stream, HybridConcatenatesAtSameIndex) {
    const auto spec = SequenceSpec::hybrid(SequenceSpec::halton({2}), SequenceSpec::kronecker({fixedpoint_sqrt(2, 128)}));
    const auto ps = stream(spec, 1, 1);
    ASSERT_EQ(ps.dim, 2u);
    EXPECT_EQ(ps.points[0].coords[0], r(1, 2));
    EXPECT_EQ(ps.points[0].coords[1], fixedpoint_sqrt(2, 128).fractional());
    EXPECT_EQ(ps.repr.tag(), "fixedpoint-coerced");
    EXPECT_EQ(ps.points[0].repr, ps.repr);
}

TEST(Stream, HammersleyFullSet) {
    const auto ps = stream(SequenceSpec::hammersley(4, {2}), 0, 4);
    const std::vector<std::vector<Q>> expect{{Q(0), Q(0)}, {r(1, 4), r(1, 2)}, {r(1, 2), r(1, 4)}, {r(3, 4), r(3, 4)}};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ps.points[i].coords, expect[i]);
    EXPECT_THROW(stream(SequenceSpec::hammersley(4, {2}), 2, 3), ValidationError);
}

TEST(Stream, BaseThreeTwoHybridIsTwoDimensional) {
    const auto spec = SequenceSpec::hybrid(SequenceSpec::digital(3, {GenMatrix::first_row_ones(3)}, 12),
                                           SequenceSpec::digital(2, {GenMatrix::identity(2)}, 12));
    EXPECT_EQ(spec->dimension(), 2u);
    const auto ps = stream(spec, 0, 50);
    for (std::uint64_t n = 0; n < 50; ++n) EXPECT_EQ(ps.points[n].coords[1], radical_inverse(n, 2));
}

TEST(Stream, IndexStableConcatenation) {
    const std::vector<std::string> texts{
        "halton{bases=2,3,5}",
        "kronecker{alphas=sqrt(2),golden;W=96}",
        "digital{q=3;L=14;matrices=first-row-ones,random:7:20}",
        "dkron{q=2;L=12;series=[1]/[x^3+x+1]}",
        "power{p=3;r=2}",
        "digitsum{inner=halton{bases=2}}",
        "hybrid{left=halton{bases=2};right=kronecker{alphas=sqrt(3);W=100}}",
    };
    for (const auto& t : texts) {
        const auto spec = parse_spec(t);
        const auto whole = stream(spec, 3, 60);
        const auto a = stream(spec, 3, 25);
        const auto b = stream(spec, 28, 35, 3);
        for (std::size_t i = 0; i < 25; ++i) ASSERT_EQ(whole.points[i], a.points[i]) << t;
        for (std::size_t i = 0; i < 35; ++i) ASSERT_EQ(whole.points[25 + i], b.points[i]) << t;
        for (const auto& p : whole.points)
            for (const auto& c : p.coords) {
                ASSERT_GE(c, 0) << t;
                ASSERT_LT(c, 1) << t;
            }
    }
}

TEST(Stream, ParallelEqualsSequential) {
    const auto spec = parse_spec("hybrid{left=digital{q=5;L=8;matrices=identity};right=lattice{N=97;gens=1,35}}");
    EXPECT_EQ(stream(spec, 0, 97, 1).points, stream(spec, 0, 97, 4).points);
}

TEST(SpecText, RoundTrip) {
    const std::vector<std::string> texts{
        "halton{bases=2,3}",
        "kronecker{alphas=sqrt(2),golden,1/4,quad(1,2,5,3);W=128}",
        "digital{q=3;L=20;matrices=first-row-ones,identity,finite-row:4:1/2}",
        "dkron{q=2;L=12;series=[1]/[x^3+x+1],laurent(1,40,1.0.1)}",
        "lattice{N=5;gens=1,2}",
        "ratnet{q=2;f=x^2+x+1;g=1,x}",
        "hammersley{N=16;bases=2,3}",
        "power{p=3;r=2}",
        "digitsum{inner=kronecker{alphas=sqrt(2);W=auto}}",
        "hybrid{left=halton{bases=2};right=kronecker{alphas=sqrt(2);W=192}}",
    };
    for (const auto& t : texts) {
        const auto spec = parse_spec(t, 1000);
        const auto canon = format_spec(*spec);
        const auto again = parse_spec(canon, 1000);
        EXPECT_EQ(format_spec(*again), canon) << t;
        const std::uint64_t count = std::min<std::uint64_t>(16, spec->finite_size().value_or(16));
        EXPECT_EQ(stream(spec, 0, count).points, stream(again, 0, count).points) << t;
    }
}

TEST(SpecText, Rejections) {
    EXPECT_THROW(parse_spec("halton{bases=2,4}"), ValidationError);
    EXPECT_THROW(parse_spec("halton{bases=1}"), ValidationError);
    EXPECT_THROW(parse_spec("sobol{d=2}"), ValidationError);
    EXPECT_THROW(parse_spec("lattice{N=5;gens=7}"), ValidationError);
    EXPECT_THROW(parse_spec("digital{q=4;L=5;matrices=identity}"), ValidationError);
    EXPECT_THROW(parse_spec("kronecker{alphas=sqrt(2),sqrt(3);W=0}"), ValidationError);
}

TEST(Emission, WriteReadRoundTrip) {
    const auto spec = parse_spec("hybrid{left=halton{bases=3};right=kronecker{alphas=sqrt(2);W=80}}");
    const auto ps = stream(spec, 5, 20);
    std::stringstream ss;
    write_points(ss, ps);
    const auto back = read_points(ss);
    EXPECT_EQ(back.start, 5u);
    EXPECT_EQ(back.dim, 2u);
    EXPECT_EQ(back.repr, ps.repr);
    for (std::size_t i = 0; i < ps.count(); ++i) EXPECT_EQ(back.points[i].coords, ps.points[i].coords);

    std::stringstream dec;
    write_points(dec, stream(parse_spec("halton{bases=2}"), 0, 4), 3);
    std::string header, line;
    std::getline(dec, header);
    EXPECT_NE(header.find("spec=halton{bases=2}"), std::string::npos);
    std::getline(dec, line);
    EXPECT_EQ(line, "0.000");
    std::getline(dec, line);
    EXPECT_EQ(line, "0.500");
}
