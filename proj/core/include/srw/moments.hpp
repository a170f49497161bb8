#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srw/rng.hpp"

namespace srw {

/*!
 * Exact second and fourth moments of the elephant random walk T_n^0 with
 * memory parameter r, from the one-step recursions. Indexing is 1-based;
 * entry 0 holds the T_0^0 = 0 convention.
 */
struct MomentTable
{
    std::size_t n_max = 0;
    double gamma = 0.0;  //!< 4r - 2
    std::vector<double> second;
    std::vector<double> fourth;
};

MomentTable erw_moment_table(double r, std::size_t n_max);
std::vector<double> erw_second_moment(double r, std::size_t n_max);
std::vector<double> erw_fourth_moment(double r, std::size_t n_max);

/// E (T_n^0)^2 from the Gamma-ratio closed form evaluated in log space.
/// Falls back to the recursion when 4r - 2 <= -1 (Gamma poles).
double erw_second_moment_closed(double r, std::size_t n);

/// Exact law of T_n^0: entry i is P(T_n^0 = 2i - n), i = 0..n.
std::vector<double> erw_distribution(double r, std::size_t n);

/// E|T_k^0|^alpha for k = 1..k_max (1-based, entry 0 unused) from the exact
/// law. O(k_max^2) time.
std::vector<double> erw_abs_moments_exact(double r, double alpha, std::size_t k_max);

struct MomentEstimate
{
    double mean = 0.0;
    double se = 0.0;
    bool exact = false;
};

/// Monte Carlo E|T_k^0|^alpha with its standard error. alpha = 2 returns the
/// recursion value with zero error.
MomentEstimate estimate_abs_moment(double r, std::size_t k, double alpha,
                                   std::size_t samples, Rng& rng);

double log_beta(double a, double b);
double beta_fn(double a, double b);

enum class ConstantMethod
{
    exact_series,
    mc_series,
    closed_form,
    integral,
};

std::string to_string(ConstantMethod method);

struct ConstantResult
{
    double value = 0.0;
    std::size_t truncation_k = 0;
    double tail_bound = 0.0;
    ConstantMethod method = ConstantMethod::exact_series;
};

struct SeriesOptions
{
    /// Monte Carlo moments instead of the exact law (alpha != 2 only).
    bool monte_carlo = false;
    std::size_t mc_paths = 20000;
    std::size_t mc_truncation = 512;
    std::uint64_t seed = 20240611;
    unsigned threads = 0;
    /// Largest truncation index for the exact-law route.
    std::size_t k_cap = std::size_t{1} << 14;
};

/*!
 * c(alpha, p, r) = ((1-p)/p) sum_k E|T_k^0|^alpha B(k, 1 + 1/p).
 *
 * The head of the series is summed exactly up to truncation_k. For alpha = 2
 * the remainder is added in closed form (it telescopes against the moment
 * recursion); otherwise a power-law remainder estimate is added and its
 * magnitude reported as tail_bound. Throws DivergenceError unless
 * (2r-1) alpha p < 1 and 0 < p < 1.
 */
ConstantResult constant_series(double alpha, double p, double r, double tol,
                               SeriesOptions const& options = {});

/// 1 / (1 - (4r-2) p). Throws DomainError when (4r-2) p >= 1.
double constant_closed_c2(double p, double r);

/// Integral form of c(alpha, p, 1) over x in (0, 1-p). Throws DivergenceError
/// when alpha p >= 1.
ConstantResult businger_integral(double alpha, double p, double tol);

/// sum_k k^alpha (1-y)^(k-1) y, the inner series of the integral form.
double geometric_power_sum(double alpha, double y);

struct MassIdentityResult
{
    double partial_sum = 0.0;  //!< ((1-p)/p) sum_{k <= k_head} k B(k, 1+1/p)
    double remainder = 0.0;    //!< closed-form sum over k > k_head
    double value = 0.0;        //!< partial_sum + remainder
    std::size_t k_head = 0;
    double k_star = 0.0;       //!< smallest K whose partial sum is within tol of the limit
    double first_term = 0.0;
};

MassIdentityResult component_mass_identity(double p, double tol,
                                           std::size_t head_cap = std::size_t{1} << 20);

/// a_r(n) in {n, n log n, n^(4r-2)} by r vs 3/4.
double rate_a(double r, double n);
/// b_l(n) in {n^(lp), n log n, n} by lp vs 1.
double rate_b(double l, double p, double n);

struct Rates
{
    double a_r = 0.0;
    double b_l = 0.0;
};

Rates rate_functions(double r, double p, double l, double n);

}  // namespace srw
