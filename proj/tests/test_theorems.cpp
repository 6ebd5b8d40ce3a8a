#include <gtest/gtest.h>

#include <numeric>

#include "contractio/theorems.hpp"
#include "support/generators.hpp"

using namespace contractio;
using namespace contractio::model;
using namespace contractio::theorems;

namespace {

QPoly poly(std::initializer_list<long> low_to_high)
{
    std::vector<Rational> c;
    for (long x : low_to_high) c.emplace_back(x);
    return QPoly(std::move(c));
}

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<std::vector<Rational>> out;
    for (auto r : rows) {
        out.emplace_back();
        for (long x : r) out.back().emplace_back(x);
    }
    return RatMatrix(out);
}

finite::CatalogSpec cyc(int n) { return {finite::CatalogKind::Cyclic, n}; }

ContractionGroup group(std::initializer_list<Block> blocks) { return ContractionGroup{std::vector<Block>(blocks)}; }

/// C_n with labels scrambled by a permutation fixing 0.
finite::FiniteGroup relabelled_cyclic(int n, const std::vector<int>& perm)
{
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = perm[(inv[i] + inv[j]) % n];
    return finite::FiniteGroup::from_table(rows);
}

long table_order(const Block& b) { return static_cast<long>(std::get<ShiftBlock>(b).group->order()); }

}  // namespace

TEST(Simplicity, Examples)
{
    EXPECT_TRUE(is_simple_contraction(group({make_shift(cyc(5))})));
    EXPECT_TRUE(is_simple_contraction(group({make_companion(3, poly({3, 0, 1}))})));
    EXPECT_FALSE(is_simple_contraction(group({make_heisenberg(5, 1, 2)})));
    EXPECT_FALSE(is_simple_contraction(group({make_shift(cyc(6))})));
    EXPECT_TRUE(is_simple_contraction(group({make_shift({finite::CatalogKind::Alternating, 5})})));
    EXPECT_FALSE(is_simple_contraction(group({make_shift(cyc(5)), make_shift(cyc(5))})));
    EXPECT_FALSE(is_simple_contraction(ContractionGroup{}));
    // X^2 - 9 = (X - 3)(X + 3) splits.
    EXPECT_FALSE(is_simple_contraction(group({make_companion(3, poly({-9, 0, 1}))})));
    // Repeated eigenvalue: the eigenline is stable.
    EXPECT_FALSE(is_simple_contraction(group({make_linear(3, mat({{3, 1}, {0, 3}}))})));
    EXPECT_TRUE(is_simple_contraction(group({make_linear(2, mat({{2}}))})));
}

TEST(Simplicity, UncertifiedThrows)
{
    // X^4 + 9 over Q_3 is left Uncertified by the factoriser.
    ContractionGroup g = group({make_companion(3, poly({9, 0, 0, 0, 1}))});
    EXPECT_THROW(is_simple_contraction(g), UncertifiedError);
}

TEST(Classification, Examples)
{
    auto a5 = classify_simple(group({make_shift({finite::CatalogKind::Alternating, 5})}));
    ASSERT_TRUE(a5.torsion());
    EXPECT_EQ(a5.to_string(), "TorsionSimple(A5)");

    auto lin = classify_simple(group({make_linear(3, mat({{0, -3}, {1, 0}}))}));
    ASSERT_TRUE(lin.torsion_free());
    const auto& l = std::get<PadicLabel>(lin.kind);
    EXPECT_EQ(l.p, 3);
    EXPECT_EQ(l.f.poly, poly({3, 0, 1}));
    EXPECT_EQ(l.companion, mat({{0, -3}, {1, 0}}));
    EXPECT_NE(l.certification, padic::Certification::Uncertified);
    EXPECT_EQ(lin.to_string(), "PadicSimple(3, X^2 + 3)");

    auto c2 = classify_simple(group({make_shift(cyc(2))}));
    EXPECT_EQ(c2.to_string(), "TorsionSimple(C2)");

    EXPECT_THROW(classify_simple(group({make_heisenberg(5, 1, 2)})), NotSimple);
    EXPECT_THROW(classify_simple(group({make_shift(cyc(4))})), NotSimple);
}

TEST(Classification, ConjugateMatrixKeepsLabel)
{
    // Q [[0,-3],[1,0]] Q^-1 with Q = [[1,1],[0,1]].
    RatMatrix q = mat({{1, 1}, {0, 1}});
    RatMatrix a = q * mat({{0, -3}, {1, 0}}) * q.inverse();
    auto lab = classify_simple(group({make_linear(3, a)}));
    EXPECT_EQ(std::get<PadicLabel>(lab.kind).f.poly, poly({3, 0, 1}));
    EXPECT_EQ(std::get<PadicLabel>(lab.kind).companion, mat({{0, -3}, {1, 0}}));
}

TEST(NormalForm, Examples)
{
    EXPECT_EQ(rational_normal_form(padic::make_padic_poly(poly({-3, 1}))), mat({{3}}));
    EXPECT_EQ(rational_normal_form(padic::make_padic_poly(poly({3, 0, 1}))), mat({{0, -3}, {1, 0}}));
    EXPECT_EQ(rational_normal_form(padic::make_padic_poly(poly({3, 3, 1}))), mat({{0, -3}, {1, -3}}));
}

TEST(NormalForm, CompanionActsAsShiftOnBasis)
{
    QPoly f = poly({6, -2, 3, 1});
    RatMatrix c = rational_normal_form(padic::make_padic_poly(f));
    ASSERT_EQ(c.rows(), 3);
    // e_j -> e_{j+1}; e_d -> -sum a_{i-1} e_i.
    for (int j = 0; j + 1 < 3; ++j)
        for (int i = 0; i < 3; ++i) EXPECT_EQ(c(i, j), Rational(i == j + 1 ? 1 : 0));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(c(i, 2), Rational(-f.coeff(i)));
    EXPECT_EQ(c.charpoly(), f);
}

TEST(Isomorphism, Examples)
{
    auto c5 = group({make_shift(cyc(5))});
    auto c5r = group({make_shift(relabelled_cyclic(5, {0, 3, 4, 1, 2}))});
    EXPECT_TRUE(iso_simple(c5, c5r).isomorphic);
    EXPECT_TRUE(iso_simple(c5, c5r).certified);

    auto x3 = group({make_companion(3, poly({-3, 1}))});
    auto x6 = group({make_companion(3, poly({-6, 1}))});
    auto r = iso_simple(x3, x6);
    EXPECT_FALSE(r.isomorphic);
    EXPECT_TRUE(r.certified);
    EXPECT_TRUE(iso_simple(x3, x3).isomorphic);

    auto c2 = group({make_shift(cyc(2))});
    auto x2 = group({make_companion(2, poly({-2, 1}))});
    EXPECT_FALSE(iso_simple(c2, x2).isomorphic);

    // Same polynomial, different primes.
    EXPECT_FALSE(iso_simple(group({make_companion(2, poly({-6, 1}))}), group({make_companion(3, poly({-6, 1}))})).isomorphic);
    EXPECT_FALSE(iso_simple(c2, group({make_shift(cyc(3))})).isomorphic);
    EXPECT_THROW(iso_simple(c2, group({make_shift(cyc(4))})), NotSimple);
}

TEST(Decomposition, Examples)
{
    ContractionGroup g = group({make_shift(cyc(2)), make_linear(3, mat({{3}})), make_heisenberg(3, 1, 1)});
    ContractionGroup t = torsion_part(g);
    EXPECT_EQ(t.to_string(), "shift(C2)");
    auto d = divisible_part(g);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].p, 3);
    EXPECT_EQ(d[0].blocks, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(d[0].group.to_string(), "linear(p=3, matrix=[[3]]) * heisenberg(p=3, a=1, b=1)");

    EXPECT_TRUE(divisible_part(group({make_shift(cyc(2)), make_shift(cyc(3))})).empty());
    EXPECT_TRUE(torsion_part(group({make_linear(5, mat({{5}}))})).trivial());

    auto mixed = divisible_part(group({make_heisenberg(5, 1, 1), make_linear(2, mat({{2}})), make_linear(5, mat({{25}}))}));
    ASSERT_EQ(mixed.size(), 2u);
    EXPECT_EQ(mixed[0].p, 2);
    EXPECT_EQ(mixed[0].blocks, (std::vector<std::size_t>{1}));
    EXPECT_EQ(mixed[1].p, 5);
    EXPECT_EQ(mixed[1].blocks, (std::vector<std::size_t>{0, 2}));
}

TEST(TAlpha, Examples)
{
    auto c2c3 = group({make_shift(cyc(2)), make_shift(cyc(3))});
    EXPECT_EQ(t_alpha(c2c3), 6);
    EXPECT_EQ(torsion_exponent(c2c3), 6);
    auto c2c2 = group({make_shift(cyc(2)), make_shift(cyc(2))});
    EXPECT_EQ(t_alpha(c2c2), 4);
    EXPECT_EQ(torsion_exponent(c2c2), 2);
    EXPECT_EQ(t_alpha(ContractionGroup{}), 1);
    EXPECT_EQ(t_alpha(group({make_linear(3, mat({{3}}))})), 1);
    EXPECT_EQ(torsion_exponent(group({make_shift({finite::CatalogKind::Symmetric, 4})})), 12);
}

TEST(Structure, TorsionKilledExample)
{
    ContractionGroup g = group({make_shift(cyc(2)), make_linear(3, mat({{3}}))});
    EXPECT_EQ(t_alpha(g), 2);
    Element x{{ShiftElem{{{-1, 1}, {0, 1}, {4, 1}}}, RatVector{Rational(5, 3)}}};
    Element x2 = power(g, x, 2);
    EXPECT_EQ(std::get<ShiftElem>(x2.parts[0]).support.size(), 0u);
    EXPECT_EQ(std::get<RatVector>(x2.parts[1]), RatVector{Rational(10, 3)});

    auto rep = verify_structure(g, 20, 7);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.torsion_blocks, (std::vector<std::size_t>{0}));
}

TEST(Structure, PureDivisibleAndHeisenberg)
{
    auto rep = verify_structure(group({make_linear(5, mat({{0, -5}, {1, 0}}))}), 10, 1);
    EXPECT_TRUE(rep.ok());
    EXPECT_TRUE(rep.torsion_blocks.empty());
    EXPECT_EQ(rep.t_alpha, 1);

    auto heis = verify_structure(group({make_heisenberg(2, 1, 2)}), 10, 2);
    EXPECT_TRUE(heis.ok());
    EXPECT_EQ(heis.max_root, 50);
}

TEST(Structure, DeterministicForSeed)
{
    ContractionGroup g = group({make_shift(cyc(3)), make_heisenberg(3, 1, 1), make_linear(2, mat({{2}}))});
    auto a = verify_structure(g, 15, 99, 12);
    auto b = verify_structure(g, 15, 99, 12);
    EXPECT_EQ(a.ok(), b.ok());
    EXPECT_EQ(a.t_alpha, b.t_alpha);
    EXPECT_TRUE(a.ok());
}

TEST(Properties, RandomGroups)
{
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        ContractionGroup g = testgen::random_group(rng, 4, 3);
        SCOPED_TRACE(g.to_string());

        // t_alpha against the product of table sizes; exponent against element orders.
        Integer expect_t = 1;
        Integer expect_e = 1;
        for (const auto& b : g.blocks)
            if (std::holds_alternative<ShiftBlock>(b)) {
                expect_t *= table_order(b);
                const auto& f = *std::get<ShiftBlock>(b).group;
                for (int x = 0; x < static_cast<int>(f.order()); ++x) {
                    long n = 1;
                    for (int y = x; y != 0; y = f.mul(y, x)) ++n;
                    expect_e = lcm(expect_e, Integer(n));
                }
            }
        EXPECT_EQ(t_alpha(g), expect_t);
        EXPECT_EQ(torsion_exponent(g), expect_e);
        EXPECT_EQ(module_delta(g) % t_alpha(g), 0);

        auto rep = verify_structure(g, 4, static_cast<std::uint64_t>(trial), 12);
        EXPECT_TRUE(rep.ok());
        std::set<long> primes;
        for (const auto& part : rep.divisible) EXPECT_TRUE(primes.insert(part.p).second);
        for (std::size_t i : rep.torsion_blocks) EXPECT_TRUE(std::holds_alternative<ShiftBlock>(g.blocks[i]));
        std::size_t shifts = std::count_if(g.blocks.begin(), g.blocks.end(),
                                           [](const Block& b) { return std::holds_alternative<ShiftBlock>(b); });
        EXPECT_EQ(rep.torsion_blocks.size(), shifts);
    }
}

TEST(Properties, SimpleIffLengthOne)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 80; ++trial) {
        ContractionGroup g{{testgen::random_block(rng, 3)}};
        SCOPED_TRACE(g.to_string());
        bool simple = is_simple_contraction(g);
        series::GroupAnalysis ga(g);
        auto s = series::composition_series(ga, series::Mode::Alpha);
        EXPECT_EQ(simple, s.length() == 1);
        if (!simple) continue;
        auto lab = classify_simple(g);
        EXPECT_NE(lab.torsion(), lab.torsion_free());
        EXPECT_EQ(lab.torsion(), std::holds_alternative<ShiftBlock>(g.blocks[0]));
    }
}

TEST(Properties, CompanionRoundTrip)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        long p = testgen::random_prime(rng);
        QPoly f = testgen::random_contractive_factor(rng, p, 2);
        SCOPED_TRACE(f.to_string());
        RatMatrix c = rational_normal_form(padic::make_padic_poly(f));
        auto lab = classify_simple(group({make_linear(p, c)}));
        const auto& l = std::get<PadicLabel>(lab.kind);
        EXPECT_EQ(l.f.poly, f);
        EXPECT_EQ(l.companion, c);
        EXPECT_TRUE(iso_simple(group({make_linear(p, c)}), group({make_companion(p, f)})).isomorphic);
    }
}
