#include <random>

#include <gtest/gtest.h>

#include "contractio/padic.hpp"

using namespace contractio;
using namespace contractio::padic;

namespace {

QPoly poly(std::initializer_list<long> low_to_high)
{
    std::vector<Rational> c;
    for (long x : low_to_high) c.emplace_back(x);
    return QPoly(std::move(c));
}

std::vector<Rational> rats(std::initializer_list<std::pair<long, long>> xs)
{
    std::vector<Rational> out;
    for (auto [n, d] : xs) out.push_back(make_rational(n, d));
    return out;
}

long residual_valuation(const QPoly& f, long p)
{
    long best = 1L << 40;
    for (const auto& c : f.coeffs()) {
        Valuation v = valuation(c, p);
        if (!v.infinite) best = std::min(best, v.value);
    }
    return best;
}

QPoly product(const CertifiedFactorization& fac)
{
    QPoly out = QPoly::constant(Rational(1));
    for (const auto& f : fac.factors) out = out * f.factor.poly;
    return out;
}

}  // namespace

TEST(Valuation, Examples)
{
    EXPECT_EQ(valuation(Rational(18), 3), Valuation::of(2));
    EXPECT_EQ(valuation(make_rational(1, 3), 3), Valuation::of(-1));
    EXPECT_TRUE(valuation(Rational(0), 5).infinite);
    EXPECT_EQ(to_string(valuation(Rational(0), 5)), "inf");
    EXPECT_EQ(to_string(valuation(make_rational(50, 7), 5)), "2");
}

TEST(Valuation, PadicRoundIsCongruent)
{
    Rational q = make_rational(-22, 7);
    Rational r = padic_round(q, 3, 10);
    EXPECT_TRUE(congruent(q, r, 3, 10));
    EXPECT_EQ(r.get_den(), 1);
    EXPECT_EQ(padic_round(Rational(81), 3, 4), 0);
}

TEST(NewtonPolygon, SpecExamples)
{
    EXPECT_EQ(newton_polygon(poly({3, 3, 1}), 3).root_valuations(), rats({{1, 2}, {1, 2}}));
    EXPECT_EQ(newton_polygon(poly({3, 1, 1}), 3).root_valuations(), rats({{0, 1}, {1, 1}}));
    EXPECT_EQ(newton_polygon(poly({-3, 1}), 3).root_valuations(), rats({{1, 1}}));
}

TEST(NewtonPolygon, ZeroRootAndVertices)
{
    NewtonPolygon np = newton_polygon(poly({0, 0, 3, 1}), 3);
    EXPECT_EQ(np.zero_roots, 2);
    EXPECT_EQ(np.total_multiplicity(), 3);
    NewtonPolygon hull = newton_polygon(poly({27, 3, 1}), 3);
    ASSERT_EQ(hull.vertices.size(), 3u);
    EXPECT_EQ(hull.vertices[1], std::make_pair(1, 1L));
}

TEST(Contractive, SpecExamples)
{
    EXPECT_TRUE(is_contractive_poly(poly({-3, 1}), 3));
    EXPECT_FALSE(is_contractive_poly(poly({-1, 1}), 3));
    EXPECT_TRUE(is_contractive_poly(poly({2, 0, 1}), 2));
}

// Three routes to contractivity must agree on random monic integer polynomials:
// Newton slopes, the minimum root valuation bound, and coefficient valuations.
TEST(Contractive, ThreeWayAgreement)
{
    std::mt19937_64 rng(11);
    const long primes[] = {2, 3, 5, 7};
    for (int trial = 0; trial < 2000; ++trial) {
        long p = primes[rng() % 4];
        int d = 1 + static_cast<int>(rng() % 6);
        std::vector<Rational> c;
        for (int i = 0; i < d; ++i) {
            long scale = (rng() % 2) ? p : 1;
            c.emplace_back(static_cast<long>(rng() % 61) * scale - 30 * scale);
        }
        c.emplace_back(1);
        QPoly f(c);
        NewtonPolygon np = newton_polygon(f, p);
        ASSERT_EQ(np.total_multiplicity(), d);
        bool newton = is_contractive_poly(f, p);
        auto vals = np.root_valuations();
        bool bound = vals.empty() || (vals.front() >= make_rational(1, d) && vals.front() > 0);
        bool coeffs = true;
        for (int i = 0; i < d; ++i) coeffs = coeffs && valuation(f.coeff(i), p) >= Valuation::of(1);
        EXPECT_EQ(newton, bound) << f.to_string();
        EXPECT_EQ(newton, coeffs) << f.to_string();
    }
}

TEST(Hensel, ExactFactorizationIsItsOwnLift)
{
    auto [g, h] = hensel_lift(poly({-1, 0, 1}), poly({-1, 1}), poly({1, 1}), 3, 4);
    EXPECT_EQ(g, poly({-1, 1}));
    EXPECT_EQ(h, poly({1, 1}));
}

TEST(Hensel, QuadraticIterationReachesTarget)
{
    QPoly f = poly({3, 1, 1});
    auto [g, h] = hensel_lift(f, poly({0, 1}), poly({1, 1}), 3, 4);
    QPoly r = f - g * h;
    for (const auto& c : r.coeffs()) EXPECT_EQ(c.get_num() % 81, 0);
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(h.is_monic());
    EXPECT_EQ(nonneg_mod(g.coeff(0).get_num(), 3), 0);
    EXPECT_EQ(nonneg_mod(h.coeff(0).get_num(), 3), 1);
}

TEST(Hensel, RepeatedFactorIsNotCoprime)
{
    EXPECT_THROW(hensel_lift(poly({3, 0, 1}), poly({0, 1}), poly({0, 1}), 3, 4), NotCoprime);
}

TEST(Hensel, RejectsWrongSplit)
{
    EXPECT_THROW(hensel_lift(poly({1, 0, 1}), poly({0, 1}), poly({1, 1}), 3, 4), DomainError);
}

TEST(Hensel, RandomLiftsHoldExactly)
{
    std::mt19937_64 rng(5);
    const long primes[] = {2, 3, 5, 7, 11};
    for (int trial = 0; trial < 60; ++trial) {
        long p = primes[rng() % 5];
        // Build f from coprime residues: (X - a)(X^2 + bX + c) + p * noise.
        long a = static_cast<long>(rng() % static_cast<unsigned long>(p));
        QPoly g0 = poly({-a, 1});
        QPoly h0 = poly({static_cast<long>(rng() % 7), static_cast<long>(rng() % 7), 1});
        if (nonneg_mod(h0.eval(Rational(a)).get_num(), p) == 0) continue;
        QPoly noise = poly({static_cast<long>(rng() % 100), static_cast<long>(rng() % 100), static_cast<long>(rng() % 100)});
        QPoly f = g0 * h0 + Rational(p) * noise;
        auto [g, h] = hensel_lift(f, g0, h0, p, 32);
        EXPECT_GE(residual_valuation(f - g * h, p), 32) << f.to_string();
    }
}

TEST(FiniteField, FactorsAndMultiplicities)
{
    auto irr = fp::factor(fp::reduce(poly({1, 0, 1}), 3), 3);
    ASSERT_EQ(irr.size(), 1u);
    EXPECT_EQ(irr[0].second, 1);
    auto split = fp::factor(fp::reduce(poly({1, 0, 1}), 5), 5);
    ASSERT_EQ(split.size(), 2u);
    auto sq = fp::factor(fp::reduce(poly({1, 0, 1}), 2), 2);  // (X + 1)^2
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_EQ(sq[0].second, 2);
    auto deg4 = fp::factor(fp::reduce(poly({1, 1, 0, 0, 1}), 2), 2);  // irreducible over F_2
    ASSERT_EQ(deg4.size(), 1u);
    EXPECT_EQ(deg4[0].first.size(), 5u);
}

TEST(FiniteField, ProductOfFactorsReconstructs)
{
    std::mt19937_64 rng(21);
    const std::uint64_t primes[] = {2, 3, 5, 7, 13};
    for (int trial = 0; trial < 300; ++trial) {
        std::uint64_t p = primes[rng() % 5];
        int d = 1 + static_cast<int>(rng() % 8);
        fp::Poly f;
        for (int i = 0; i < d; ++i) f.push_back(rng() % p);
        f.push_back(1);
        fp::Poly prod{1};
        for (auto& [g, m] : fp::factor(f, p))
            for (int i = 0; i < m; ++i) prod = fp::mul(prod, g, p);
        EXPECT_EQ(prod, f);
    }
}

TEST(RationalFactors, FindsLinearAndQuadraticPieces)
{
    QPoly f = poly({-1, 1}) * poly({-2, 1}) * poly({1, 0, 1}) * poly({1, 1, 1});
    auto pieces = rational_factors(f);
    ASSERT_EQ(pieces.size(), 4u);
    EXPECT_EQ(pieces[0].degree(), 1);
    EXPECT_EQ(pieces[2].degree(), 2);
    QPoly prod = QPoly::constant(Rational(1));
    for (const auto& q : pieces) prod = prod * q;
    EXPECT_EQ(prod, f);
}

TEST(RationalFactors, FractionalRoots)
{
    QPoly f = QPoly::x_minus(make_rational(1, 3)) * QPoly::x_minus(make_rational(-5, 2));
    auto pieces = rational_factors(f);
    ASSERT_EQ(pieces.size(), 2u);
    EXPECT_EQ(pieces[0] * pieces[1], f);
}

TEST(SquarefreeDecomposition, SeparatesMultiplicities)
{
    QPoly f = poly({-3, 1}) * poly({-3, 1}) * poly({3, 0, 1});
    auto parts = squarefree_decomposition(f);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], poly({3, 0, 1}));
    EXPECT_EQ(parts[1], poly({-3, 1}));
}

TEST(FactorOverQp, RationalRoots)
{
    auto fac = factor_over_qp(poly({2, -3, 1}), PAdicContext(5));
    ASSERT_EQ(fac.factors.size(), 2u);
    EXPECT_EQ(fac.factors[0].factor.poly, poly({-1, 1}));
    EXPECT_EQ(fac.factors[1].factor.poly, poly({-2, 1}));
    for (const auto& f : fac.factors) {
        EXPECT_EQ(f.certification, Certification::RationalExact);
        EXPECT_TRUE(f.factor.exact());
    }
}

TEST(FactorOverQp, DistinctSlopesGiveDistinctValuations)
{
    auto fac = factor_over_qp(poly({27, -12, 1}), PAdicContext(3));
    ASSERT_EQ(fac.factors.size(), 2u);
    std::vector<Rational> vals;
    for (const auto& f : fac.factors) vals.push_back(newton_polygon(f.factor.poly, 3).root_valuations().at(0));
    std::sort(vals.begin(), vals.end());
    EXPECT_EQ(vals, rats({{1, 1}, {2, 1}}));
}

TEST(FactorOverQp, PureSlopeIrreducible)
{
    auto fac = factor_over_qp(poly({3, 0, 1}), PAdicContext(3));
    ASSERT_EQ(fac.factors.size(), 1u);
    EXPECT_EQ(fac.factors[0].certification, Certification::NewtonSlope);
    EXPECT_TRUE(fac.factors[0].factor.exact());
}

TEST(FactorOverQp, SlopeSplitOfIrrationalFactors)
{
    // X^2 + 3X + 27 over Q_3: root valuations 1 and 2, discriminant -99.
    QPoly f = poly({27, 3, 1});
    auto fac = factor_over_qp(f, PAdicContext(3));
    ASSERT_EQ(fac.factors.size(), 2u);
    for (const auto& c : fac.factors) {
        EXPECT_FALSE(c.factor.exact());
        EXPECT_EQ(c.certification, Certification::NewtonSlope);
    }
    EXPECT_GE(residual_valuation(f - product(fac), 3), 32);
}

TEST(FactorOverQp, HenselSplitsSquareRoots)
{
    // 2 = 3^2 mod 7, so X^2 - 2 splits over Q_7 into X - r, X + r.
    QPoly f = poly({-2, 0, 1});
    auto fac = factor_over_qp(f, PAdicContext(7));
    ASSERT_EQ(fac.factors.size(), 2u);
    for (const auto& c : fac.factors) {
        ASSERT_EQ(c.factor.degree(), 1);
        Rational r = -c.factor.poly.coeff(0);
        EXPECT_GE(valuation(Rational(r * r - 2), 7), Valuation::of(32));
    }
}

TEST(FactorOverQp, IrreducibleModP)
{
    auto fac = factor_over_qp(poly({18, 3, 1}), PAdicContext(3));
    ASSERT_EQ(fac.factors.size(), 1u);
    EXPECT_EQ(fac.factors[0].certification, Certification::HenselCoprime);
}

TEST(FactorOverQp, RepeatedResidueNeedsTranslation)
{
    // sqrt(17) lies in Q_2 but X^2 - 17 = (X + 1)^2 mod 2.
    QPoly f = poly({-17, 0, 1});
    auto fac = factor_over_qp(f, PAdicContext(2));
    ASSERT_EQ(fac.factors.size(), 2u);
    for (const auto& c : fac.factors) {
        ASSERT_EQ(c.factor.degree(), 1);
        Rational r = -c.factor.poly.coeff(0);
        EXPECT_GE(valuation(Rational(r * r - 17), 2), Valuation::of(30));
    }
}

TEST(FactorOverQp, UndecidedPieceIsUncertified)
{
    auto fac = factor_over_qp(poly({9, 0, 0, 0, 1}), PAdicContext(3));
    EXPECT_FALSE(fac.fully_certified());
}

TEST(FactorOverQp, Errors)
{
    EXPECT_THROW(factor_over_qp(poly({9, -6, 1}), PAdicContext(3)), NotSquarefree);
    EXPECT_THROW(factor_over_qp(poly({1, 0, 0, 0, 0, 0, 0, 0, 0, 1}), PAdicContext(3)), TooLarge);
    EXPECT_THROW(PAdicContext(4), DomainError);
}

TEST(FactorOverQp, InvariantsOnRandomPolynomials)
{
    std::mt19937_64 rng(99);
    const long primes[] = {2, 3, 5, 7};
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        long p = primes[rng() % 4];
        int d = 1 + static_cast<int>(rng() % 5);
        std::vector<Rational> c;
        for (int i = 0; i < d; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
        c.emplace_back(1);
        QPoly f(c);
        if (gcd(f, f.derivative()).degree() > 0) continue;
        auto fac = factor_over_qp(f, PAdicContext(p));
        int total = 0;
        for (const auto& piece : fac.factors) {
            total += piece.factor.degree();
            if (piece.certification != Certification::Uncertified) {
                NewtonPolygon np = newton_polygon(piece.factor.poly, p);
                EXPECT_LE(np.segments.size(), 1u) << f.to_string() << " factor " << piece.factor.to_string();
            }
        }
        EXPECT_EQ(total, d);
        EXPECT_GE(residual_valuation(f - product(fac), p), 32) << f.to_string() << " p=" << p;
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Formatting, PolynomialText)
{
    EXPECT_EQ(poly({3, 3, 1}).to_string(), "X^2 + 3*X + 3");
    EXPECT_EQ(poly({-3, 0, 1}).to_string(), "X^2 - 3");
    EXPECT_EQ(poly({0, -1}).to_string(), "-X");
    EXPECT_EQ(QPoly({make_rational(1, 2), Rational(1)}).to_string(), "X + 1/2");
}
