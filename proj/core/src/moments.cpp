#include "srw/moments.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "srw/errors.hpp"
#include "srw/parallel.hpp"
#include "srw/summation.hpp"
#include "srw/walk.hpp"

namespace srw {
namespace {

constexpr double rate_tol = 1e-12;

void check_r(double r)
{
    if (!(r >= 0.0 && r <= 1.0))
        throw DomainError("r must lie in [0, 1]");
}

void check_series_params(double alpha, double p, double r)
{
    check_r(r);
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("alpha must lie in (0, 2]");
    if (!((2.0 * r - 1.0) * alpha * p < 1.0))
        throw DivergenceError("series diverges: requires (2r-1) alpha p < 1");
}

// Asymptotic decay exponent s of the series terms, t_k ~ C k^(-s).
double term_decay_exponent(double alpha, double p, double r)
{
    double const gamma = 4.0 * r - 2.0;
    return 1.0 + 1.0 / p - alpha * std::max(0.5, gamma / 2.0);
}

// Euler-Maclaurin estimate of sum_{k > K} t_k for t_k ~ t_K (K/k)^s.
double power_law_remainder(double t_K, double K, double s)
{
    return t_K * (K / (s - 1.0) - 0.5);
}

ConstantResult series_alpha2(double p, double r, double tol)
{
    double const b = 1.0 + 1.0 / p;
    double const gamma = 4.0 * r - 2.0;
    double const scale = (1.0 - p) / p;
    constexpr std::size_t cap = std::size_t{1} << 20;

    // sum_{k >= K} m(k) B(k, b) = B(K, b) (K + b - 1) / (b - gamma - 1)
    //                             * (m(K) + K / (b - 2)),
    // which telescopes against m(K+1) = (1 + gamma/K) m(K) + 1.
    auto remainder = [&](double K, double m_K, double B_K) {
        return scale * B_K * (K + b - 1.0) / (b - gamma - 1.0) * (m_K + K / (b - 2.0));
    };

    CompensatedSum head;
    double m = 1.0;
    double B = 1.0 / b;
    std::size_t k = 1;
    std::size_t checkpoint = 64;
    double tail = 0.0;
    for (;; ++k)
    {
        head.add(scale * m * B);
        double const next_m = (1.0 + gamma / static_cast<double>(k)) * m + 1.0;
        double const next_B = B * static_cast<double>(k) / (static_cast<double>(k) + b);
        m = next_m;
        B = next_B;
        if (k == checkpoint || k == cap)
        {
            // refresh B against log-gamma to stop drift in the recurrence
            B = std::exp(log_beta(static_cast<double>(k + 1), b));
            tail = remainder(static_cast<double>(k + 1), m, B);
            if (std::abs(tail) <= tol || k == cap)
                break;
            checkpoint *= 2;
        }
    }
    ConstantResult result;
    result.value = head.value() + tail;
    result.truncation_k = k;
    result.tail_bound = 8.0 * std::numeric_limits<double>::epsilon()
                        * std::max(1.0, std::abs(result.value)) * std::sqrt(static_cast<double>(k));
    result.method = ConstantMethod::exact_series;
    return result;
}

ConstantResult series_exact_law(double alpha, double p, double r, double tol, std::size_t k_cap)
{
    double const b = 1.0 + 1.0 / p;
    double const scale = (1.0 - p) / p;
    double const s = term_decay_exponent(alpha, p, r);
    k_cap = std::max<std::size_t>(k_cap, 64);

    // Run the exact law of T_k^0 forward and accumulate terms as we go.
    std::vector<double> abs_pow(k_cap + 2);
    for (std::size_t t = 0; t < abs_pow.size(); ++t)
        abs_pow[t] = std::pow(static_cast<double>(t), alpha);

    std::vector<double> pmf{0.0, 1.0};
    std::vector<double> next;
    double const drift = 2.0 * r - 1.0;
    CompensatedSum head;
    std::size_t checkpoint = 64;
    ConstantResult result;
    result.method = ConstantMethod::exact_series;
    for (std::size_t k = 1;; ++k)
    {
        double moment = 0.0;
        for (std::size_t i = 0; i <= k; ++i)
        {
            auto const t = static_cast<std::int64_t>(2 * i) - static_cast<std::int64_t>(k);
            moment += pmf[i] * abs_pow[static_cast<std::size_t>(std::llabs(t))];
        }
        double const term = scale * moment * std::exp(log_beta(static_cast<double>(k), b));
        head.add(term);
        if (k == checkpoint || k == k_cap)
        {
            double const tail = power_law_remainder(term, static_cast<double>(k), s);
            if (std::abs(tail) <= tol || k == k_cap)
            {
                result.value = head.value() + tail;
                result.truncation_k = k;
                result.tail_bound = std::abs(tail);
                return result;
            }
            checkpoint *= 2;
        }
        next.assign(k + 2, 0.0);
        for (std::size_t i = 0; i <= k; ++i)
        {
            if (pmf[i] == 0.0)
                continue;
            auto const t = static_cast<double>(2 * i) - static_cast<double>(k);
            double const up = 0.5 + drift * t / (2.0 * static_cast<double>(k));
            next[i + 1] += pmf[i] * up;
            next[i] += pmf[i] * (1.0 - up);
        }
        pmf.swap(next);
    }
}

ConstantResult series_monte_carlo(double alpha, double p, double r, SeriesOptions const& opt)
{
    double const b = 1.0 + 1.0 / p;
    double const scale = (1.0 - p) / p;
    double const s = term_decay_exponent(alpha, p, r);
    std::size_t const K = std::max<std::size_t>(opt.mc_truncation, 8);

    std::vector<double> coeff(K + 1);
    for (std::size_t k = 1; k <= K; ++k)
        coeff[k] = scale * std::exp(log_beta(static_cast<double>(k), b));

    struct PathResult
    {
        double weighted = 0.0;
        double block = 0.0;  // sum over k in (K/2, K] of t_k k^s
    };
    auto const paths = run_replicates(opt.mc_paths, opt.threads, [&](std::size_t i) {
        Rng rng(opt.seed, i, StreamTag::aux);
        std::vector<signed char> steps(K);
        steps[0] = 1;
        std::int64_t total = 1;
        PathResult out;
        out.weighted = coeff[1];
        for (std::size_t k = 2; k <= K; ++k)
        {
            auto const u = rng.uniform_int(1, k - 1);
            signed char const c = steps[u - 1];
            steps[k - 1] = rng.bernoulli(r) ? c : static_cast<signed char>(-c);
            total += steps[k - 1];
            double const t = coeff[k] * std::pow(std::abs(static_cast<double>(total)), alpha);
            out.weighted += t;
            if (k > K / 2)
                out.block += t * std::pow(static_cast<double>(k), s);
        }
        return out;
    });

    CompensatedSum sum, sum_sq, block;
    for (auto const& pr : paths)
    {
        sum.add(pr.weighted);
        sum_sq.add(pr.weighted * pr.weighted);
        block.add(pr.block);
    }
    auto const m = static_cast<double>(paths.size());
    double const mean = sum.value() / m;
    double const var = std::max(0.0, (sum_sq.value() - m * mean * mean) / (m - 1.0));
    double const se = std::sqrt(var / m);

    // Fit t_k ~ C k^(-s) on the upper half and sum the fitted tail.
    double const block_terms = static_cast<double>(K - K / 2);
    double const C = block.value() / m / block_terms;
    double const Kd = static_cast<double>(K);
    double const tail = C * (std::pow(Kd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Kd, -s));

    ConstantResult result;
    result.value = mean + tail;
    result.truncation_k = K;
    result.tail_bound = std::abs(tail) + 2.0 * se;
    result.method = ConstantMethod::mc_series;
    return result;
}

}  // namespace

//---------------------------------------------------------------------------//

MomentTable erw_moment_table(double r, std::size_t n_max)
{
    check_r(r);
    if (n_max < 1)
        throw DomainError("n_max must be at least 1");
    MomentTable table;
    table.n_max = n_max;
    table.gamma = 4.0 * r - 2.0;
    table.second.assign(n_max + 1, 0.0);
    table.fourth.assign(n_max + 1, 0.0);
    table.second[1] = 1.0;
    table.fourth[1] = 1.0;
    double const g = table.gamma;
    for (std::size_t n = 1; n < n_max; ++n)
    {
        auto const nd = static_cast<double>(n);
        table.second[n + 1] = (nd + g) * table.second[n] / nd + 1.0;
        table.fourth[n + 1] = 1.0 + (6.0 * nd + 2.0 * g) * table.second[n] / nd
                              + (nd + 2.0 * g) * table.fourth[n] / nd;
    }
    return table;
}

std::vector<double> erw_second_moment(double r, std::size_t n_max)
{
    return erw_moment_table(r, n_max).second;
}

std::vector<double> erw_fourth_moment(double r, std::size_t n_max)
{
    return erw_moment_table(r, n_max).fourth;
}

double erw_second_moment_closed(double r, std::size_t n)
{
    check_r(r);
    if (n < 1)
        throw DomainError("n must be at least 1");
    double const g = 4.0 * r - 2.0;
    if (g <= -1.0)
        return erw_second_moment(r, n)[n];
    CompensatedSum sum;
    for (std::size_t k = 1; k <= n; ++k)
    {
        auto const kd = static_cast<double>(k);
        sum.add(std::exp(std::lgamma(kd) - std::lgamma(kd + g)));
    }
    auto const nd = static_cast<double>(n);
    return std::exp(std::lgamma(nd + g) - std::lgamma(nd)) * sum.value();
}

std::vector<double> erw_distribution(double r, std::size_t n)
{
    check_r(r);
    if (n < 1)
        throw DomainError("n must be at least 1");
    std::vector<double> pmf{0.0, 1.0};
    std::vector<double> next;
    double const drift = 2.0 * r - 1.0;
    for (std::size_t k = 1; k < n; ++k)
    {
        next.assign(k + 2, 0.0);
        for (std::size_t i = 0; i <= k; ++i)
        {
            auto const t = static_cast<double>(2 * i) - static_cast<double>(k);
            double const up = 0.5 + drift * t / (2.0 * static_cast<double>(k));
            next[i + 1] += pmf[i] * up;
            next[i] += pmf[i] * (1.0 - up);
        }
        pmf.swap(next);
    }
    return pmf;
}

std::vector<double> erw_abs_moments_exact(double r, double alpha, std::size_t k_max)
{
    check_r(r);
    if (k_max < 1)
        throw DomainError("k_max must be at least 1");
    std::vector<double> out(k_max + 1, 0.0);
    std::vector<double> pmf{0.0, 1.0};
    std::vector<double> next;
    double const drift = 2.0 * r - 1.0;
    for (std::size_t k = 1; k <= k_max; ++k)
    {
        CompensatedSum m;
        for (std::size_t i = 0; i <= k; ++i)
        {
            double const t = static_cast<double>(2 * i) - static_cast<double>(k);
            if (pmf[i] != 0.0 && t != 0.0)
                m.add(pmf[i] * std::pow(std::abs(t), alpha));
        }
        out[k] = m.value();
        if (k == k_max)
            break;
        next.assign(k + 2, 0.0);
        for (std::size_t i = 0; i <= k; ++i)
        {
            double const t = static_cast<double>(2 * i) - static_cast<double>(k);
            double const up = 0.5 + drift * t / (2.0 * static_cast<double>(k));
            next[i + 1] += pmf[i] * up;
            next[i] += pmf[i] * (1.0 - up);
        }
        pmf.swap(next);
    }
    return out;
}

MomentEstimate estimate_abs_moment(double r, std::size_t k, double alpha,
                                   std::size_t samples, Rng& rng)
{
    check_r(r);
    if (k < 1)
        throw DomainError("k must be at least 1");
    if (k == 1)
        return {1.0, 0.0, true};
    if (r == 1.0)
        return {std::pow(static_cast<double>(k), alpha), 0.0, true};
    if (alpha == 2.0)
        return {erw_second_moment(r, k)[k], 0.0, true};
    if (samples < 2)
        throw DomainError("need at least two samples");
    CompensatedSum sum, sum_sq;
    for (std::size_t i = 0; i < samples; ++i)
    {
        double const v = std::pow(std::abs(static_cast<double>(erw_endpoint(k, r, rng))), alpha);
        sum.add(v);
        sum_sq.add(v * v);
    }
    auto const m = static_cast<double>(samples);
    double const mean = sum.value() / m;
    double const var = std::max(0.0, (sum_sq.value() - m * mean * mean) / (m - 1.0));
    return {mean, std::sqrt(var / m), false};
}

double log_beta(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_fn(double a, double b)
{
    return std::exp(log_beta(a, b));
}

std::string to_string(ConstantMethod method)
{
    switch (method)
    {
        case ConstantMethod::exact_series:
            return "exact-series";
        case ConstantMethod::mc_series:
            return "mc-series";
        case ConstantMethod::closed_form:
            return "closed-form";
        case ConstantMethod::integral:
            return "integral";
    }
    return "unknown";
}

ConstantResult constant_series(double alpha, double p, double r, double tol,
                               SeriesOptions const& options)
{
    check_series_params(alpha, p, r);
    if (!(tol > 0.0))
        throw DomainError("tol must be positive");
    if (alpha == 2.0)
        return series_alpha2(p, r, tol);
    if (options.monte_carlo)
        return series_monte_carlo(alpha, p, r, options);
    return series_exact_law(alpha, p, r, tol, options.k_cap);
}

double constant_closed_c2(double p, double r)
{
    check_r(r);
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("p must lie in [0, 1]");
    double const gp = (4.0 * r - 2.0) * p;
    if (gp >= 1.0)
        throw DomainError("closed form requires (4r-2) p < 1");
    return 1.0 / (1.0 - gp);
}

double geometric_power_sum(double alpha, double y)
{
    if (!(y > 0.0 && y <= 1.0))
        throw DomainError("geometric_power_sum: y must lie in (0, 1]");
    if (y == 1.0)
        return 1.0;
    double const z = 1.0 - y;
    if (y >= 0.5)
    {
        CompensatedSum sum;
        double zpow = 1.0;
        for (int k = 1; k < 10000; ++k)
        {
            double const term = std::pow(static_cast<double>(k), alpha) * zpow;
            sum.add(term);
            if (term < 1e-18 * sum.value())
                break;
            zpow *= z;
        }
        return y * sum.value();
    }
    // Li_{-alpha}(e^{-t}) = Gamma(1+alpha) t^{-1-alpha}
    //                      + sum_j zeta(-alpha-j) (-t)^j / j!, |t| < 2 pi
    double const t = -std::log1p(-y);
    double const scale = y / z;
    double const lead = std::exp(std::lgamma(1.0 + alpha) + std::log(scale) - (1.0 + alpha) * std::log(t));
    CompensatedSum rest;
    double tj = 1.0;  // (-t)^j / j!
    double previous = 1.0;
    for (int j = 0; j < 120; ++j)
    {
        double const term = std::riemann_zeta(-alpha - j) * tj;
        rest.add(term);
        // zeta vanishes at negative even integers, so test two terms at once
        double const small = 1e-18 * (std::abs(rest.value()) + 1.0);
        if (j > 4 && std::abs(term) < small && std::abs(previous) < small)
            break;
        previous = term;
        tj *= -t / (j + 1);
    }
    return lead + scale * rest.value();
}

ConstantResult businger_integral(double alpha, double p, double tol)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("alpha must lie in (0, 2]");
    if (!(alpha * p < 1.0))
        throw DivergenceError("integral diverges: requires alpha p < 1");
    double const upper = 1.0 - p;
    auto f = [alpha, p, upper](double x) {
        double const y = std::pow(x / upper, p);
        if (!(y > 0.0))
            return 0.0;
        return geometric_power_sum(alpha, std::min(y, 1.0));
    };
    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0;
    double l1 = 0.0;
    ConstantResult result;
    result.value = integrator.integrate(f, 0.0, upper, std::min(tol, 1e-10), &error, &l1);
    result.tail_bound = error;
    result.method = ConstantMethod::integral;
    return result;
}

MassIdentityResult component_mass_identity(double p, double tol, std::size_t head_cap)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie in (0, 1)");
    if (!(tol > 0.0))
        throw DomainError("tol must be positive");
    double const b = 1.0 + 1.0 / p;
    double const scale = (1.0 - p) / p;
    // sum_{k > K} k B(k, b) = Gamma(b) Gamma(K+2) / ((b-2) Gamma(K+b))
    auto remainder = [&](double K) {
        return scale * std::exp(std::lgamma(b) + std::lgamma(K + 2.0) - std::lgamma(K + b)) / (b - 2.0);
    };

    MassIdentityResult result;
    result.first_term = scale * beta_fn(1.0, b);
    CompensatedSum head;
    std::size_t k = 1;
    for (; k <= head_cap; ++k)
    {
        head.add(scale * static_cast<double>(k) * beta_fn(static_cast<double>(k), b));
        if (remainder(static_cast<double>(k)) <= tol)
            break;
    }
    result.k_head = std::min(k, head_cap);
    result.partial_sum = head.value();
    result.remainder = remainder(static_cast<double>(result.k_head));
    result.value = result.partial_sum + result.remainder;

    // smallest K with remainder(K) <= tol; the remainder is decreasing in K
    double lo = 0.0;
    double hi = 1.0;
    while (remainder(hi) > tol && hi < 1e300)
    {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1.0 && hi - lo > 1e-12 * hi)
    {
        double const mid = std::floor(0.5 * (lo + hi));
        (remainder(mid) > tol ? lo : hi) = mid;
    }
    result.k_star = hi;
    return result;
}

double rate_a(double r, double n)
{
    check_r(r);
    if (std::abs(r - 0.75) <= rate_tol)
        return n * std::log(n);
    if (r < 0.75)
        return n;
    return std::pow(n, 4.0 * r - 2.0);
}

double rate_b(double l, double p, double n)
{
    double const lp = l * p;
    if (std::abs(lp - 1.0) <= rate_tol)
        return n * std::log(n);
    if (lp < 1.0)
        return n;
    return std::pow(n, lp);
}

Rates rate_functions(double r, double p, double l, double n)
{
    return {rate_a(r, n), rate_b(l, p, n)};
}

}  // namespace srw
