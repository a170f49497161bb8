#include "srw/stable.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "srw/errors.hpp"
#include "srw/summation.hpp"

namespace srw {
namespace {

using std::numbers::pi;

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("stable alpha must lie in (0, 2]");
}

// P(S > x) for large x: (1/pi) sum_k (-1)^(k+1) Gamma(alpha k) sin(k pi alpha/2)
// x^(-alpha k) / k!, asymptotic for alpha in (1, 2), convergent for alpha <= 1
// once x > 1. Empty when the smallest term stays above 1e-13.
std::optional<double> upper_tail_series(double alpha, double x)
{
    CompensatedSum acc;
    double const lx = std::log(x);
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 200; ++k)
    {
        double const mag = std::exp(std::lgamma(alpha * k) - std::lgamma(k + 1.0) - alpha * k * lx);
        if (mag > prev_mag && alpha > 1.0)
            return std::nullopt;
        acc.add(((k % 2) ? 1.0 : -1.0) * mag * std::sin(k * pi * alpha / 2));
        if (mag < 1e-13)
            return acc.value() / pi;
        prev_mag = mag;
    }
    return std::nullopt;
}

// Integral of sin(x t) exp(-t^alpha) / t over [0, infinity), x > 0.
double gil_pelaez_integral(double alpha, double x)
{
    // exp(-t^alpha) < 1e-16 beyond this cutoff
    double const cutoff = std::pow(36.8, 1.0 / alpha);
    auto integrand = [alpha, x](double t) {
        if (t == 0.0)
            return x;
        return std::sin(x * t) / t * std::exp(-std::pow(t, alpha));
    };
    // panels of two full oscillation periods, or unit width
    double const width = std::min(1.0, 4.0 * pi / x);
    auto const panels = static_cast<std::size_t>(std::ceil(cutoff / width));
    CompensatedSum acc;
    for (std::size_t i = 0; i < panels; ++i)
    {
        double const lo = static_cast<double>(i) * width;
        double const hi = std::min(cutoff, lo + width);
        double error = 0.0;
        double const part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, lo, hi, 0, 0.0, &error);
        if (error > 1e-12)
            acc.add(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                integrand, lo, hi, 10, 1e-13));
        else
            acc.add(part);
    }
    return acc.value();
}

}  // namespace

double sample_stable(double alpha, Rng& rng)
{
    check_alpha(alpha);
    double const u = pi * (rng.uniform_open() - 0.5);
    if (alpha == 1.0)
        return std::tan(u);
    double const e = rng.exponential();
    double const lead = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    return lead * std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
}

double cdf_stable(double alpha, double x)
{
    check_alpha(alpha);
    if (!std::isfinite(x))
        throw DomainError("cdf_stable: x must be finite");
    if (x == 0.0)
        return 0.5;
    if (x < 0.0)
        return 1.0 - cdf_stable(alpha, -x);

    if (alpha == 2.0 && x > 40.0)
        return 1.0 - 0.5 * std::erfc(x / 2.0);
    if (x > 2.0)
    {
        if (auto const tail = upper_tail_series(alpha, x))
            return std::clamp(1.0 - *tail, 0.0, 1.0);
    }
    double const value = 0.5 + gil_pelaez_integral(alpha, x) / pi;
    return std::clamp(value, 0.0, 1.0);
}

double quantile_stable(double alpha, double q)
{
    check_alpha(alpha);
    if (!(q > 0.0 && q < 1.0))
        throw DomainError("quantile_stable: q must lie in (0, 1)");
    if (q == 0.5)
        return 0.0;
    if (q < 0.5)
        return -quantile_stable(alpha, 1.0 - q);

    double lo = 0.0;
    double hi = 1.0;
    while (cdf_stable(alpha, hi) < q)
    {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw DomainError("quantile_stable: bracket overflow");
    }
    for (int iter = 0; iter < 200; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        double const f = cdf_stable(alpha, mid);
        if (std::abs(f - q) <= 1e-12 || hi - lo <= 1e-14 * std::max(1.0, mid))
            return mid;
        (f < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double StableLaw::sample(Rng& rng) const
{
    return sample_stable(alpha, rng);
}

double StableLaw::cdf(double x) const
{
    return cdf_stable(alpha, x);
}

double StableLaw::quantile(double q) const
{
    return quantile_stable(alpha, q);
}

//---------------------------------------------------------------------------//

StableCdfTable::StableCdfTable(double alpha, std::size_t nodes) : alpha_(alpha)
{
    check_alpha(alpha);
    if (nodes < 3)
        nodes = 3;
    step_ = pi / static_cast<double>(nodes - 1);
    values_.resize(nodes);
    values_.front() = 0.0;
    values_.back() = 1.0;
    for (std::size_t i = 1; i + 1 < nodes; ++i)
    {
        double const theta = -pi / 2 + static_cast<double>(i) * step_;
        values_[i] = cdf_stable(alpha, std::tan(theta));
    }
}

double StableCdfTable::operator()(double x) const
{
    double const pos = (std::atan(x) + pi / 2) / step_;
    auto const i = static_cast<std::size_t>(pos);
    if (i < 1 || i + 2 >= values_.size())
        return cdf_stable(alpha_, x);
    double const frac = pos - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

//---------------------------------------------------------------------------//

double NormalizingSequence::operator()(double n) const
{
    return normalizer(rule, alpha, n);
}

double normalizer(NormalizerRule rule, double alpha, double n)
{
    switch (rule)
    {
        case NormalizerRule::exact_stable:
            check_alpha(alpha);
            if (!(n >= 1.0))
                throw DomainError("normalizer: n must be at least 1");
            return std::pow(n, 1.0 / alpha);
        case NormalizerRule::n_log_n:
            if (!(n >= 2.0))
                throw DomainError("normalizer: sqrt(n log n) needs n >= 2");
            return std::sqrt(n * std::log(n));
    }
    return 0.0;
}

}  // namespace srw
