#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "srw/errors.hpp"
#include "srw/rng.hpp"
#include "srw/stats.hpp"

namespace srw {
namespace {

TEST(Ks, PointMassAgainstNormal)
{
    EXPECT_DOUBLE_EQ(ks_to_cdf(EmpiricalSample({0.0}), normal_cdf), 0.5);
}

TEST(Ks, TwoSampleExtremes)
{
    EmpiricalSample const a({1.0, 2.0, 3.0});
    EmpiricalSample const b({4.0, 5.0});
    EXPECT_EQ(two_sample_ks(a, a), 0.0);
    EXPECT_EQ(two_sample_ks(a, b), 1.0);
    EXPECT_EQ(two_sample_ks(b, a), 1.0);
    EmpiricalSample const c({1.5, 2.5, 3.5, 0.5});
    EXPECT_DOUBLE_EQ(two_sample_ks(a, c), two_sample_ks(c, a));
}

TEST(Ks, InvariantUnderMonotoneMap)
{
    Rng rng(1);
    std::vector<double> x, y;
    for (int i = 0; i < 500; ++i)
    {
        x.push_back(rng.normal());
        y.push_back(rng.normal() + 0.1);
    }
    double const d = two_sample_ks(EmpiricalSample(x), EmpiricalSample(y));
    for (auto& v : x)
        v = std::exp(v);
    for (auto& v : y)
        v = std::exp(v);
    EXPECT_DOUBLE_EQ(two_sample_ks(EmpiricalSample(x), EmpiricalSample(y)), d);
}

TEST(Ks, UniformSampleAgainstUniformCdf)
{
    Rng rng(2);
    std::vector<double> u;
    for (int i = 0; i < 100000; ++i)
        u.push_back(rng.uniform());
    double const d = ks_to_cdf(EmpiricalSample(u), [](double x) { return std::clamp(x, 0.0, 1.0); });
    EXPECT_LT(d, 1.63 / std::sqrt(100000.0));
}

TEST(Ecdf, Steps)
{
    EmpiricalSample const s({3.0, 1.0, 2.0, 2.0});
    EXPECT_EQ(s.values()[0], 1.0);
    EXPECT_EQ(s.ecdf(0.5), 0.0);
    EXPECT_EQ(s.ecdf(2.0), 0.75);
    EXPECT_EQ(s.ecdf(3.0), 1.0);
}

TEST(McMeanSe, Constant)
{
    std::vector<double> const ones{1, 1, 1, 1};
    auto const ms = mc_mean_se(ones);
    EXPECT_EQ(ms.mean, 1.0);
    EXPECT_EQ(ms.se, 0.0);
    std::vector<double> const v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mc_mean_se(v).mean, 2.5);
    EXPECT_DOUBLE_EQ(mc_mean_se(v).se, std::sqrt(5.0 / 3.0 / 4.0));
}

TEST(ChiSquare, ExactProportionsGiveZero)
{
    std::vector<std::int64_t> sample;
    for (int i = 0; i < 25; ++i)
        sample.push_back(-1);
    for (int i = 0; i < 50; ++i)
        sample.push_back(1);
    for (int i = 0; i < 25; ++i)
        sample.push_back(3);
    std::vector<std::int64_t> const support{-1, 1, 3};
    std::vector<double> const probs{0.25, 0.5, 0.25};
    EXPECT_NEAR(chi_square_support(sample, support, probs), 0.0, 1e-12);
}

TEST(ChiSquare, Errors)
{
    std::vector<std::int64_t> const sample{0, 1, 1};
    std::vector<std::int64_t> const support{0, 1};
    std::vector<double> const short_probs{1.0};
    std::vector<double> const probs{0.5, 0.5};
    EXPECT_THROW(chi_square_support(sample, support, short_probs), DomainError);
    EXPECT_THROW(chi_square_support(sample, support, probs), DomainError);  // expected counts < 5
    EXPECT_THROW(chi_square_quantile(0, 0.5), DomainError);
}

TEST(ChiSquare, HomogeneityAndQuantile)
{
    std::vector<std::int64_t> a, b;
    for (int i = 0; i < 300; ++i)
    {
        a.push_back(i % 3);
        b.push_back((i + 1) % 3);
    }
    auto const res = chi_square_homogeneity(a, b);
    EXPECT_EQ(res.dof, 2);
    EXPECT_NEAR(res.statistic, 0.0, 1e-12);
    EXPECT_NEAR(chi_square_quantile(2, 0.999), 13.815510557964274, 1e-9);
    EXPECT_NEAR(chi_square_quantile(1, 0.95), 3.841458820694124, 1e-9);
}

TEST(NormalCdf, Values)
{
    EXPECT_EQ(normal_cdf(0.0), 0.5);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
    EXPECT_NEAR(normal_cdf(-1.0), 0.15865525393145707, 1e-15);
}

TEST(SequenceChecks, Shapes)
{
    std::vector<double> const halving{1.0, 0.5, 0.25, 0.125};
    std::vector<double> const wobble{0.0, 1.0, 1.5, 3.0};
    EXPECT_TRUE(differences_shrink(halving));
    EXPECT_FALSE(differences_shrink(wobble));
    std::vector<double> const x{0, 1, 2, 3};
    std::vector<double> const y{1, 3, 5, 7};
    EXPECT_DOUBLE_EQ(trend_slope(x, y), 2.0);
    EXPECT_TRUE(is_bounded(y, 1.0, 7.0));
    EXPECT_FALSE(is_bounded(y, 1.5, 7.0));
}

}  // namespace
}  // namespace srw
