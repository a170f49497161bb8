#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "srw/errors.hpp"
#include "srw/moments.hpp"
#include "srw/rng.hpp"

namespace srw {
namespace {

// E|1 + S_{k-1}|^alpha for a simple random walk S; this is the law of T_k^0
// at r = 1/2.
double srw_abs_moment(std::size_t k, double alpha)
{
    std::size_t const m = k - 1;
    double total = 0.0;
    for (std::size_t j = 0; j <= m; ++j)
    {
        double const logp = std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) -
                            static_cast<double>(m) * std::log(2.0);
        double const t = 1.0 + 2.0 * static_cast<double>(j) - static_cast<double>(m);
        total += std::exp(logp) * std::pow(std::abs(t), alpha);
    }
    return total;
}

TEST(ErwMoments, SmallExample)
{
    auto const m2 = erw_second_moment(0.75, 3);
    EXPECT_DOUBLE_EQ(m2[1], 1.0);
    EXPECT_DOUBLE_EQ(m2[2], 3.0);
    EXPECT_DOUBLE_EQ(m2[3], 5.5);
}

TEST(ErwMoments, MatchEnumeration)
{
    for (double r : {0.0, 0.2, 0.5, 0.75, 0.9, 1.0})
    {
        auto const table = erw_moment_table(r, 6);
        for (std::size_t n = 1; n <= 6; ++n)
        {
            auto const law = test::erw_law_by_enumeration(r, n);
            EXPECT_NEAR(table.second[n], test::law_moment(law, 2.0, false), 1e-12) << r << " " << n;
            EXPECT_NEAR(table.fourth[n], test::law_moment(law, 4.0, false), 1e-10) << r << " " << n;
        }
    }
}

TEST(ErwMoments, DistributionMatchesEnumeration)
{
    for (double r : {0.1, 0.6, 0.95})
    {
        std::size_t const n = 7;
        auto const dist = erw_distribution(r, n);
        auto const law = test::erw_law_by_enumeration(r, n);
        ASSERT_EQ(dist.size(), n + 1);
        for (std::size_t i = 0; i <= n; ++i)
        {
            auto const t = 2 * static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n);
            auto const it = law.find(t);
            EXPECT_NEAR(dist[i], it == law.end() ? 0.0 : it->second, 1e-13);
        }
    }
}

TEST(ErwMoments, FullMemoryIsExact)
{
    auto const table = erw_moment_table(1.0, 200);
    for (std::size_t n = 1; n <= 200; ++n)
    {
        double const x = static_cast<double>(n);
        EXPECT_EQ(table.second[n], x * x);
        EXPECT_EQ(table.fourth[n], x * x * x * x);
    }
}

TEST(ErwMoments, ClosedFormAgreesWithRecursion)
{
    for (int i = 1; i <= 19; ++i)
    {
        double const r = 0.05 * i;
        auto const m2 = erw_second_moment(r, 2000);
        for (std::size_t n : {1u, 2u, 10u, 137u, 2000u})
            EXPECT_NEAR(erw_second_moment_closed(r, n) / m2[n], 1.0, 1e-9) << r << " " << n;
    }
}

TEST(ErwMoments, SuperdiffusiveGrowth)
{
    // r = 0.9: E T_n^2 ~ c0 n^1.6
    auto const m2 = erw_second_moment(0.9, 1 << 16);
    double const c0 = m2[1 << 16] / std::pow(65536.0, 1.6);
    for (std::size_t n : {1u << 12, 1u << 13, 1u << 14, 1u << 15})
        EXPECT_NEAR(m2[n] / (c0 * std::pow(static_cast<double>(n), 1.6)), 1.0, 0.05) << n;
}

TEST(ErwMoments, CauchySchwarz)
{
    for (double r : {0.0, 0.3, 0.5, 0.8, 1.0})
    {
        auto const table = erw_moment_table(r, 500);
        for (std::size_t n = 1; n <= 500; ++n)
            EXPECT_GE(table.fourth[n], table.second[n] * table.second[n] * (1.0 - 1e-12));
    }
}

TEST(ErwMoments, AbsMomentsExactMatchEnumeration)
{
    auto const exact = erw_abs_moments_exact(0.5, 1.0, 6);
    for (std::size_t k = 1; k <= 6; ++k)
        EXPECT_NEAR(exact[k], test::law_moment(test::erw_law_by_enumeration(0.5, k), 1.0, true), 1e-13);
    auto const e15 = erw_abs_moments_exact(0.5, 1.5, 300);
    for (std::size_t k : {1u, 7u, 40u, 300u})
        EXPECT_NEAR(e15[k] / srw_abs_moment(k, 1.5), 1.0, 1e-11) << k;
}

TEST(EstimateAbsMoment, ExactCases)
{
    Rng rng(5);
    auto const a = estimate_abs_moment(1.0, 7, 1.3, 10, rng);
    EXPECT_TRUE(a.exact);
    EXPECT_DOUBLE_EQ(a.mean, std::pow(7.0, 1.3));
    EXPECT_EQ(a.se, 0.0);
    auto const b = estimate_abs_moment(0.75, 3, 2.0, 10, rng);
    EXPECT_TRUE(b.exact);
    EXPECT_DOUBLE_EQ(b.mean, 5.5);
    auto const c = estimate_abs_moment(0.3, 1, 0.7, 10, rng);
    EXPECT_DOUBLE_EQ(c.mean, 1.0);
}

TEST(EstimateAbsMoment, MonteCarloCoversTruth)
{
    Rng rng(6);
    double const truth = test::law_moment(test::erw_law_by_enumeration(0.5, 3), 1.0, true);
    EXPECT_NEAR(truth, 1.5, 1e-15);
    auto const est = estimate_abs_moment(0.5, 3, 1.0, 200000, rng);
    EXPECT_FALSE(est.exact);
    EXPECT_LT(std::abs(est.mean - truth), 4.0 * est.se);
}

TEST(ConstantSeries, SecondMomentClosedForm)
{
    for (double p : {0.1, 0.4, 0.7})
        for (double r : {0.0, 0.5, 0.6, 0.75})
        {
            if ((4.0 * r - 2.0) * p >= 1.0)
                continue;
            auto const res = constant_series(2.0, p, r, 1e-10);
            EXPECT_NEAR(res.value, constant_closed_c2(p, r), 1e-8) << p << " " << r;
        }
    EXPECT_DOUBLE_EQ(constant_closed_c2(0.2, 0.75), 1.25);
    EXPECT_THROW(constant_closed_c2(0.5, 1.0), DomainError);
}

TEST(ConstantSeries, CauchyHalfHalf)
{
    auto const res = constant_series(1.0, 0.5, 0.5, 1e-6);
    EXPECT_NEAR(res.value, std::numbers::pi / 2.0 - 1.0, 1e-5);
    EXPECT_LE(res.tail_bound, 1e-5);
}

TEST(ConstantSeries, AgreesWithBinomialOracle)
{
    double const alpha = 1.5;
    double const p = 0.5;
    double const b = 1.0 + 1.0 / p;
    double const scale = (1.0 - p) / p;
    std::size_t const K = 3000;
    long double head = 0.0L;
    for (std::size_t k = 1; k <= K; ++k)
        head += static_cast<long double>(srw_abs_moment(k, alpha)) * test::beta_product(k, b);
    // E|T_k|^alpha ~ E|Z|^alpha k^(alpha/2), B(k, b) ~ Gamma(b) k^(-b)
    double const abs_z = std::pow(2.0, alpha / 2.0) * std::tgamma((alpha + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
    double const expo = b - alpha / 2.0 - 1.0;
    double const tail = abs_z * std::tgamma(b) * std::pow(K + 0.5, -expo) / expo;
    double const oracle = scale * (static_cast<double>(head) + tail);

    auto const res = constant_series(alpha, p, 0.5, 1e-7);
    EXPECT_NEAR(res.value, oracle, 2e-5);
    EXPECT_LE(std::abs(res.value - oracle), res.tail_bound + 2e-5);
}

TEST(ConstantSeries, FullMemoryMatchesIntegralForm)
{
    for (auto [alpha, p] : {std::pair{1.0, 0.5}, std::pair{2.0, 0.4}, std::pair{0.5, 0.3}, std::pair{1.5, 0.25}})
    {
        auto const series = constant_series(alpha, p, 1.0, 1e-9);
        auto const integral = businger_integral(alpha, p, 1e-10);
        EXPECT_NEAR(series.value, integral.value, 1e-6 * std::max(1.0, integral.value)) << alpha << " " << p;
    }
}

TEST(ConstantSeries, Divergence)
{
    EXPECT_THROW(constant_series(2.0, 0.5, 1.0, 1e-6), DivergenceError);
    EXPECT_THROW(constant_series(1.5, 0.8, 1.0, 1e-6), DivergenceError);
    EXPECT_THROW(constant_series(1.0, 0.0, 0.5, 1e-6), DomainError);
    EXPECT_THROW(constant_series(1.0, 1.0, 0.5, 1e-6), DomainError);
    EXPECT_THROW(businger_integral(2.0, 0.5, 1e-6), DivergenceError);
}

TEST(BusingerIntegral, KnownValues)
{
    EXPECT_NEAR(businger_integral(2.0, 0.4, 1e-12).value, 5.0, 1e-9);
    EXPECT_NEAR(businger_integral(2.0, 0.25, 1e-12).value, 2.0, 1e-9);
    EXPECT_NEAR(businger_integral(1.0, 0.5, 1e-12).value, 1.0, 1e-9);
}

TEST(BusingerIntegral, MatchesDirectSeries)
{
    // r = 1: c(alpha, p, 1) = ((1-p)/p) sum_k k^alpha B(k, 1 + 1/p)
    for (auto [alpha, p] : {std::pair{1.0, 0.25}, std::pair{0.5, 0.2}, std::pair{1.5, 0.2}})
    {
        double const b = 1.0 + 1.0 / p;
        long double sum = 0.0L;
        long double beta = test::beta_product(1, b);
        for (std::size_t k = 1; k <= 200000; ++k)
        {
            sum += std::pow(static_cast<long double>(k), alpha) * beta;
            beta *= static_cast<long double>(k) / (b + static_cast<long double>(k));
        }
        double const expected = (1.0 - p) / p * static_cast<double>(sum);
        EXPECT_NEAR(businger_integral(alpha, p, 1e-12).value, expected, 1e-9) << alpha << " " << p;
    }
}

TEST(GeometricPowerSum, MatchesDirectSum)
{
    for (double alpha : {0.0, 0.5, 1.0, 1.7, 2.0, 3.3})
        for (double y : {0.9, 0.5, 0.1, 0.01, 1e-3})
        {
            long double sum = 0.0L;
            long double q = 1.0L;
            for (std::size_t k = 1; k <= 200000; ++k)
            {
                sum += std::pow(static_cast<long double>(k), alpha) * q * y;
                q *= 1.0L - y;
            }
            double const expected = static_cast<double>(sum);
            EXPECT_NEAR(geometric_power_sum(alpha, y) / expected, 1.0, 1e-11) << alpha << " " << y;
        }
    EXPECT_NEAR(geometric_power_sum(1.0, 0.25), 4.0, 1e-13);
    EXPECT_NEAR(geometric_power_sum(2.0, 0.5), 6.0, 1e-12);
}

TEST(RiemannZeta, NegativeArguments)
{
    EXPECT_NEAR(std::riemann_zeta(-1.0), -1.0 / 12.0, 1e-14);
    EXPECT_NEAR(std::riemann_zeta(-3.0), 1.0 / 120.0, 1e-14);
    EXPECT_NEAR(std::riemann_zeta(-2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::riemann_zeta(0.0), -0.5, 1e-14);
}

TEST(MassIdentity, SumsToOne)
{
    for (double p : {0.1, 0.3, 0.5, 0.7})
    {
        auto const res = component_mass_identity(p, 1e-10);
        EXPECT_NEAR(res.value, 1.0, 1e-9) << p;
        EXPECT_NEAR(res.first_term, (1.0 - p) / (1.0 + p), 1e-14);
        long double partial = 0.0L;
        double const b = 1.0 + 1.0 / p;
        long double beta = test::beta_product(1, b);
        for (std::size_t k = 1; k <= res.k_head; ++k)
        {
            partial += static_cast<long double>(k) * beta;
            beta *= static_cast<long double>(k) / (b + static_cast<long double>(k));
        }
        EXPECT_NEAR(static_cast<double>(test::beta_product(5, b)), beta_fn(5.0, b), 1e-15);
        EXPECT_NEAR(res.partial_sum, (1.0 - p) / p * static_cast<double>(partial), 1e-10);
        EXPECT_GE(res.k_star, 1.0);
    }
    EXPECT_NEAR(component_mass_identity(0.5, 1e-8).first_term, 1.0 / 3.0, 1e-14);
    EXPECT_THROW(component_mass_identity(1.0, 1e-8), DomainError);
    EXPECT_THROW(component_mass_identity(0.5, 0.0), DomainError);
}

TEST(RateFunctions, Regimes)
{
    double const n = 1000.0;
    EXPECT_DOUBLE_EQ(rate_a(0.5, n), n);
    EXPECT_DOUBLE_EQ(rate_a(0.75, n), n * std::log(n));
    EXPECT_DOUBLE_EQ(rate_a(0.9, n), std::pow(n, 1.6));
    EXPECT_DOUBLE_EQ(rate_b(1.0, 0.5, n), n);
    EXPECT_DOUBLE_EQ(rate_b(2.0, 0.5, n), n * std::log(n));
    EXPECT_DOUBLE_EQ(rate_b(4.0, 0.5, n), n * n);
    auto const rates = rate_functions(0.9, 0.5, 4.0, n);
    EXPECT_DOUBLE_EQ(rates.a_r, std::pow(n, 1.6));
    EXPECT_DOUBLE_EQ(rates.b_l, n * n);
}

}  // namespace
}  // namespace srw
