#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "srw/errors.hpp"
#include "srw/moments.hpp"
#include "srw/percolation.hpp"
#include "srw/stats.hpp"

namespace srw {
namespace {

PercolationForest random_forest(WalkParams const& params, std::size_t n, std::uint64_t seed,
                                RandomnessTape* tape_out = nullptr)
{
    Rng rng(seed);
    auto tape = RandomnessTape::draw(params, n, rng);
    auto forest = percolate(n, tape);
    if (tape_out)
        *tape_out = std::move(tape);
    return forest;
}

TEST(Percolation, NoReinforcementGivesSingletons)
{
    auto const forest = random_forest({0.0, 0.3, 2.0}, 500, 1);
    auto const stats = component_stats(forest, std::vector<double>{0.0, 1.0, 2.5});
    EXPECT_EQ(stats.count(1), 500u);
    EXPECT_EQ(stats.nu.size(), 1u);
    for (std::size_t k = 1; k <= 500; ++k)
    {
        ASSERT_TRUE(forest.is_root(k));
        ASSERT_EQ(forest.weights[k], 1);
    }
    for (auto const& [l, z] : stats.z)
        EXPECT_DOUBLE_EQ(z, 500.0);
}

TEST(Percolation, FullReinforcementIsOneComponent)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        RandomnessTape tape;
        auto const forest = random_forest({1.0, 0.4, 2.0}, 300, seed, &tape);
        auto const stats = component_stats(forest, std::vector<double>{2.0});
        EXPECT_EQ(stats.count(300), 1u);
        EXPECT_DOUBLE_EQ(stats.z_of(2.0), 300.0 * 300.0);
        EXPECT_EQ(forest.roots(), std::vector<std::uint32_t>{1});
        EXPECT_EQ(forest.weights[1], simulate_erw(300, tape).total());
    }
}

TEST(Percolation, PositiveCopiesGiveSizes)
{
    auto const forest = random_forest({0.6, 1.0, 2.0}, 1000, 2);
    for (auto j : forest.roots())
        EXPECT_EQ(forest.weights[j], static_cast<std::int64_t>(forest.component_sizes[j]));
}

TEST(Percolation, AntiCopyPairCancels)
{
    // vertex 2 copies vertex 1 with a sign flip; vertex 3 is fresh
    auto const tape = RandomnessTape::from_vectors({0, 0, 1, 1}, {0, 0, 1, 0}, {0, 0, 0, 0});
    auto const forest = percolate(3, tape);
    EXPECT_EQ(forest.component_sizes[1], 2u);
    EXPECT_EQ(forest.weights[1], 0);
    EXPECT_EQ(forest.weights[2], 0);
    EXPECT_EQ(forest.weights[3], 1);
}

TEST(Percolation, StructuralInvariants)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        RandomnessTape tape;
        std::size_t const n = 2000;
        auto const forest = random_forest({0.35 + 0.03 * seed, 0.3, 2.0}, n, seed, &tape);
        std::uint64_t total = 0;
        std::map<std::uint32_t, std::int64_t> signed_sum;
        for (std::size_t i = 1; i <= n; ++i)
        {
            ASSERT_LE(forest.root_of[i], i);
            signed_sum[forest.root_of[i]] += forest.sign[i];
            if (i >= 2 && tape.eps(i))
                ASSERT_EQ(forest.weights[i], 0);
            if (forest.weights[i] != 0)
                ASSERT_TRUE(i == 1 || !tape.eps(i));
        }
        for (auto j : forest.roots())
        {
            auto const w = forest.weights[j];
            auto const size = static_cast<std::int64_t>(forest.component_sizes[j]);
            ASSERT_EQ(forest.sign[j], 1);
            ASSERT_EQ(w, signed_sum[j]);
            ASSERT_LE(std::abs(w), size);
            ASSERT_EQ((w + size) % 2, 0);
            total += forest.component_sizes[j];
        }
        EXPECT_EQ(total, n);
        auto const stats = component_stats(forest, std::vector<double>{0.0, 1.0});
        std::uint64_t mass = 0;
        for (auto const& [k, count] : stats.nu)
            mass += k * count;
        EXPECT_EQ(mass, n);
        EXPECT_DOUBLE_EQ(stats.z_of(1.0), static_cast<double>(n));
        EXPECT_DOUBLE_EQ(stats.z_of(0.0), static_cast<double>(forest.roots().size()));
    }
}

TEST(Percolation, GrowReturnsTreeWithTapeParents)
{
    Rng rng(3);
    auto const tape = RandomnessTape::draw({0.5, 0.5, 2.0}, 100, rng);
    auto const [tree, forest] = grow_and_percolate(100, tape);
    ASSERT_EQ(tree.size(), 100u);
    for (std::size_t k = 2; k <= 100; ++k)
    {
        EXPECT_EQ(tree.parent[k], tape.parent(k));
        EXPECT_EQ(forest.open[k] != 0, tape.eps(k));
    }
}

TEST(Percolation, RepresentationHoldsPathwise)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        WalkParams const params{0.5, 0.7, 2.0};
        Rng rng(seed);
        std::size_t const n = 1000 + 45 * seed;
        auto const tape = RandomnessTape::draw(params, n, rng);
        auto const forest = percolate(n, tape);
        for (auto const& source : {StepSource::gaussian(), StepSource::stable(0.8)})
        {
            auto const walk = simulate_unbalanced_walk(n, tape, source, rng);
            double const rep = percolation_sum(forest, walk.step_values);
            ASSERT_LE(std::abs(rep - walk.total()), 1e-9 * (1.0 + std::abs(walk.total())));
        }
        auto const walk = simulate_unbalanced_walk(n, tape, StepSource::rademacher(), rng);
        ASSERT_EQ(percolation_sum(forest, walk.step_values), walk.total());
    }
}

TEST(Percolation, Errors)
{
    Rng rng(4);
    auto const tape = RandomnessTape::draw({0.5, 0.5, 2.0}, 10, rng);
    EXPECT_THROW(percolate(0, tape), DomainError);
    EXPECT_THROW(percolate(11, tape), DomainError);
    auto const forest = percolate(10, tape);
    std::vector<double> short_xi(9, 1.0);
    EXPECT_THROW(percolation_sum(forest, short_xi), DomainError);
}

TEST(ComponentStats, LimitingFrequencies)
{
    double const p = 0.5;
    std::vector<double> freq(4, 0.0);
    constexpr int reps = 30;
    for (int i = 0; i < reps; ++i)
    {
        auto const forest = random_forest({p, 0.5, 2.0}, 100000, 100 + i);
        auto const stats = component_stats(forest, {});
        for (std::uint32_t k = 1; k <= 3; ++k)
            freq[k] += static_cast<double>(stats.count(k)) / 1e5 / reps;
    }
    EXPECT_NEAR(freq[1], 1.0 / 3.0, 0.01);
    EXPECT_NEAR(freq[2], 1.0 / 12.0, 0.01);
    EXPECT_NEAR(freq[3], 1.0 / 30.0, 0.01);
}

TEST(IncrementalForest, MatchesFromScratch)
{
    WalkParams const params{0.45, 0.65, 2.0};
    Rng rng(5);
    std::size_t const n = 3000;
    auto const tape = RandomnessTape::draw(params, n, rng);
    IncrementalForest inc;
    for (std::size_t k = 2; k <= n; ++k)
    {
        auto const before = inc.nu();
        std::uint32_t const parent_size = inc.component_size(inc.root_of(tape.parent(k)));
        inc.add_vertex(tape.parent(k), tape.eps(k), tape.eta(k));
        auto after = inc.nu();
        auto expected = before;
        if (tape.eps(k))
        {
            if (--expected[parent_size] == 0)
                expected.erase(parent_size);
            ++expected[parent_size + 1];
        }
        else
        {
            ++expected[1];
        }
        ASSERT_EQ(after, expected) << "k=" << k;
        if (k % 500 == 0)
        {
            auto const forest = percolate(k, tape);
            ASSERT_EQ(component_stats(forest, {}).nu, inc.nu());
            for (std::size_t j = 1; j <= k; ++j)
            {
                ASSERT_EQ(inc.root_of(j), forest.root_of[j]);
                ASSERT_EQ(inc.weight(j), forest.weights[j]);
            }
        }
    }
    EXPECT_THROW(inc.add_vertex(static_cast<std::uint32_t>(n + 1), true, true), DomainError);
}

TEST(ConditionalWeightLaw, SingletonWeightsAreOne)
{
    Rng rng(6);
    auto const sample = conditional_weight_law({0.5, 0.3, 2.0}, 5, {2, 1, 1, 1}, 2000, rng);
    for (auto const& d : sample.draws)
    {
        ASSERT_EQ(d.size(), 4u);
        EXPECT_EQ(d[1], 1);
        EXPECT_EQ(d[2], 1);
        EXPECT_EQ(d[3], 1);
        EXPECT_TRUE(d[0] == 0 || d[0] == 2);
    }
}

TEST(ConditionalWeightLaw, PositiveCopiesAreDeterministic)
{
    Rng rng(7);
    auto const sample = conditional_weight_law({0.5, 1.0, 2.0}, 6, {3, 2, 1}, 500, rng);
    for (auto const& d : sample.draws)
        EXPECT_EQ(d, (std::vector<std::int64_t>{3, 2, 1}));
}

TEST(ConditionalWeightLaw, FullProfileVector)
{
    Rng rng(8);
    // N_1 = 4, N_2 = N_3 = N_4 = 0: one component containing vertices 1..4
    auto const sample = conditional_weight_law({0.5, 0.5, 2.0}, 4, {4, 0, 0, 0}, 1000, rng);
    auto const law = test::erw_law_by_enumeration(0.5, 4);
    for (auto const& d : sample.draws)
    {
        ASSERT_EQ(d.size(), 1u);
        EXPECT_TRUE(law.count(d[0]));
    }
}

TEST(ConditionalWeightLaw, SizeThreeRootMatchesErwLaw)
{
    Rng rng(9);
    constexpr std::size_t samples = 40000;
    auto const sample = conditional_weight_law({0.5, 0.5, 2.0}, 6, {3, 2, 1}, samples, rng);
    std::vector<std::int64_t> w3;
    for (auto const& d : sample.draws)
        w3.push_back(d[0]);
    auto const law = test::erw_law_by_enumeration(0.5, 3);
    std::vector<std::int64_t> support;
    std::vector<double> probs;
    for (auto const& [t, prob] : law)
    {
        support.push_back(t);
        probs.push_back(prob);
    }
    ASSERT_EQ(support, (std::vector<std::int64_t>{-1, 1, 3}));
    EXPECT_LT(chi_square_support(w3, support, probs), chi_square_quantile(2, 0.999));
}

TEST(ConditionalWeightLaw, Errors)
{
    Rng rng(10);
    EXPECT_THROW(conditional_weight_law({0.5, 0.5, 2.0}, 13, {13}, 1, rng), DomainError);
    EXPECT_THROW(conditional_weight_law({0.5, 0.5, 2.0}, 6, {3, 2}, 1, rng), DomainError);
    // with p = 0 every vertex is a root, so a size-2 component never appears
    EXPECT_THROW(conditional_weight_law({0.0, 0.5, 2.0}, 3, {2, 1}, 1, rng, 1000), RejectionExhausted);
}

TEST(ZRateCheck, LinearMomentIsExact)
{
    auto const ratios = z_rate_check({0.5, 0.5, 2.0}, 1.0, {100, 1000}, 5, 1);
    for (double r : ratios)
        EXPECT_DOUBLE_EQ(r, 1.0);
}

TEST(ZRateCheck, RootCountRatio)
{
    auto const ratios = z_rate_check({0.5, 0.5, 2.0}, 0.0, {100000}, 20, 2);
    EXPECT_NEAR(ratios.at(0), 0.5, 0.02);
}

TEST(ZRateCheck, SupercriticalMomentStaysBounded)
{
    auto const ratios = z_rate_check({0.5, 0.5, 2.0}, 3.0, {1000, 10000, 100000}, 20, 3);
    std::vector<double> r(ratios.begin(), ratios.end());
    EXPECT_TRUE(is_bounded(r, 0.05, 20.0));
}

}  // namespace
}  // namespace srw
