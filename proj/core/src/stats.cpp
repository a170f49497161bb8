#include "srw/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "srw/errors.hpp"
#include "srw/summation.hpp"

namespace srw {

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty())
        throw DomainError("empirical sample must be nonempty");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalSample::ecdf(double x) const
{
    auto const it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double ks_to_cdf(EmpiricalSample const& sample, std::function<double(double)> const& cdf)
{
    auto const v = sample.values();
    auto const m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        double const f = cdf(v[i]);
        d = std::max(d, static_cast<double>(i + 1) / m - f);
        d = std::max(d, f - static_cast<double>(i) / m);
    }
    return d;
}

double two_sample_ks(EmpiricalSample const& a, EmpiricalSample const& b)
{
    auto const x = a.values();
    auto const y = b.values();
    auto const na = static_cast<double>(x.size());
    auto const nb = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        double const t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t)
            ++i;
        while (j < y.size() && y[j] <= t)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

MeanSe mc_mean_se(std::span<double const> sample)
{
    if (sample.empty())
        throw DomainError("mc_mean_se: empty sample");
    auto const m = static_cast<double>(sample.size());
    double const mean = compensated_sum(sample) / m;
    if (sample.size() == 1)
        return {mean, 0.0};
    CompensatedSum ss;
    for (double v : sample)
        ss.add((v - mean) * (v - mean));
    return {mean, std::sqrt(ss.value() / (m - 1.0) / m)};
}

double chi_square_support(std::span<std::int64_t const> sample,
                          std::span<std::int64_t const> support,
                          std::span<double const> probs)
{
    if (sample.empty())
        throw DomainError("chi_square_support: empty sample");
    if (support.size() != probs.size() || support.empty())
        throw DomainError("chi_square_support: support and probabilities differ in length");
    std::map<std::int64_t, double> counts;
    for (auto v : sample)
        counts[v] += 1.0;
    auto const m = static_cast<double>(sample.size());
    double stat = 0.0;
    double covered = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
    {
        double const expected = m * probs[i];
        if (expected < 5.0)
            throw DomainError("chi_square_support: expected count below 5");
        auto it = counts.find(support[i]);
        double const observed = it == counts.end() ? 0.0 : it->second;
        covered += observed;
        stat += (observed - expected) * (observed - expected) / expected;
    }
    if (covered != m)
        throw DomainError("chi_square_support: observation outside the support");
    return stat;
}

ChiSquare chi_square_homogeneity(std::span<std::int64_t const> a,
                                 std::span<std::int64_t const> b)
{
    if (a.empty() || b.empty())
        throw DomainError("chi_square_homogeneity: empty sample");
    std::map<std::int64_t, std::pair<double, double>> counts;
    for (auto v : a)
        counts[v].first += 1.0;
    for (auto v : b)
        counts[v].second += 1.0;
    auto const na = static_cast<double>(a.size());
    auto const nb = static_cast<double>(b.size());
    double const total = na + nb;
    ChiSquare out;
    for (auto const& [value, c] : counts)
    {
        double const pooled = (c.first + c.second) / total;
        double const ea = na * pooled;
        double const eb = nb * pooled;
        out.statistic += (c.first - ea) * (c.first - ea) / ea + (c.second - eb) * (c.second - eb) / eb;
    }
    out.dof = static_cast<int>(counts.size()) - 1;
    return out;
}

double chi_square_quantile(int dof, double q)
{
    if (dof < 1)
        throw DomainError("chi-square quantile needs dof >= 1");
    return boost::math::quantile(boost::math::chi_squared(dof), q);
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

bool is_bounded(std::span<double const> values, double lo, double hi)
{
    return std::all_of(values.begin(), values.end(),
                       [lo, hi](double v) { return v >= lo && v <= hi; });
}

bool differences_shrink(std::span<double const> sequence)
{
    if (sequence.size() < 3)
        return true;
    double prev = std::abs(sequence[1] - sequence[0]);
    for (std::size_t j = 2; j < sequence.size(); ++j)
    {
        double const d = std::abs(sequence[j] - sequence[j - 1]);
        if (!(d < prev))
            return false;
        prev = d;
    }
    return true;
}

double trend_slope(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("trend_slope needs two or more paired points");
    auto const m = static_cast<double>(x.size());
    double const mx = compensated_sum(x) / m;
    double const my = compensated_sum(y) / m;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx == 0.0 ? 0.0 : sxy / sxx;
}

}  // namespace srw
